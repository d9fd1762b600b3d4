// Command-line front end: sieve, splitting, unconditional, density,
// pseudorep-selftest and report.

#include <siegel/pseudorep.hpp>
#include <siegel/report.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace siegel;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0x5eed;
  std::uint64_t factor_bound = 10'000'000;
  std::uint64_t rho_iterations = 100'000'000;
  std::uint64_t lmax = 1000;
  std::vector<std::uint64_t> primes;
  bool serre = false;
  std::uint64_t witness_bound = 10'000;
  std::string dp_variant = "factorization";

  [[nodiscard]] Config config() const {
    Config c;
    c.seed = seed;
    c.factor.trial_bound = factor_bound;
    c.factor.rho_iterations = rho_iterations;
    c.ell_max = lmax;
    c.serre_mode = serre;
    c.witness_bound = witness_bound;
    c.dp_variant = dp_variant == "printed" ? DpVariant::printed : DpVariant::factorization;
    return c;
  }
};

void emit(const json& doc, const Options& o) { std::cout << (o.format == "machine" ? render_machine(doc) : render_text(doc)); }

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Rational q = parse_rational(item);
    if (q.get_den() != 1) throw DatasetError(DatasetError::Kind::malformed_rational, "", "'" + item + "' is not an integer");
    out.push_back(q.get_num());
  }
  if (out.empty()) throw DatasetError(DatasetError::Kind::schema, "", "empty integer list");
  return out;
}

json cmd_sieve(const Dataset& ds, const Options& o) {
  json forms = json::array();
  bool partial = false;
  for (const auto& f : ds.forms) {
    const ExceptionalReport rep = run_sieve(f, o.primes, o.config());
    partial = partial || !rep.unresolved_cofactors.empty();
    forms.push_back({{"input", input_json(f)}, {"sieve", sieve_json(rep)}});
  }
  return {{"config", config_json(o.config())}, {"forms", forms}, {"partial", partial}};
}

json cmd_splitting(const NumberField& K, const Options& o) {
  json rows = json::array();
  for (std::uint64_t ell : *prime_table(o.lmax)) {
    if (ell > o.lmax) break;
    if (divides(ell, K.poly_disc())) {
      rows.push_back({{"ell", ell}, {"type", nullptr}, {"note", "divides poly_disc"}});
      continue;
    }
    const Splitting s = places_above(K, ell, o.seed);
    rows.push_back({{"ell", ell}, {"type", s.type}, {"inert", s.inert()}});
  }
  const RamifiedReport ram = ramified_primes(K, o.config().factoring());
  json classified = json::array();
  for (const auto& r : ram.primes)
    classified.push_back({{"ell", r.ell.get_str()}, {"disc_valuation", r.disc_valuation}, {"classification", to_string(r.classification)}});
  json inert = json::array();
  for (const auto& r : rows)
    if (r.contains("inert") && r["inert"].get<bool>()) inert.push_back(r["ell"]);
  json ramified = json::array();
  for (const auto& r : ram.ramified()) ramified.push_back(r.get_str());
  return {{"field_poly", to_string(K.min_poly_q())},
          {"poly_disc", K.poly_disc().get_str()},
          {"inert", inert},
          {"ramified", ramified},
          {"disc_primes", classified},
          {"splitting", rows}};
}

json cmd_unconditional(const Dataset& ds, const Options& o) {
  const Config cfg = o.config();
  json forms = json::array();
  for (const auto& f : ds.forms) {
    const ExceptionalReport rep = run_sieve(f, o.primes, cfg);
    const auto dp_primes = dp_generator_primes(f, rep.primes_used, cfg.dp_variant);
    json places = json::array();
    for (std::uint64_t ell : *prime_table(cfg.ell_max)) {
      if (ell > cfg.ell_max) break;
      if (ell <= rep.floor) continue;
      const EllAnalysis a = analyze_ell(f, rep, ell, cfg, dp_primes);
      json e = ell_json(a);
      if (e.contains("places"))
        for (auto& p : e["places"]) p.erase("cases");
      places.push_back(e);
    }
    forms.push_back({{"label", f.label()}, {"d_p", unconditional_json(f, rep.primes_used, cfg)}, {"places", places}});
  }
  return {{"config", config_json(cfg)}, {"forms", forms}};
}

json cmd_pseudorep(bool& ok) {
  json rows = json::array();
  ok = true;
  for (auto make : {cyclic2_example, symmetric3_example, dihedral4_example})
    for (std::uint64_t q : {5u, 7u, 11u}) {
      const ExampleRep ex = make(q);
      const PseudoRep tau = from_odd_rep(ex.group, ex.rho, q);
      const auto violations = check_axioms(tau, ex.group);
      const bool round_trip = reconstruct_from_trace(tau.t, ex.group, q) == tau;
      bool det4 = true;
      for (std::size_t g = 0; g < ex.group.order(); ++g) det4 = det4 && tau.det(g) == mulmod(4, mat_det(ex.rho[g], q), q);
      const bool pass = violations.empty() && round_trip && det4;
      ok = ok && pass;
      rows.push_back({{"group", ex.name},
                      {"modulus", q},
                      {"order", ex.group.order()},
                      {"violations", violations.size()},
                      {"round_trip", round_trip},
                      {"det_is_4_det_rho", det4},
                      {"pass", pass}});
    }
  return {{"pseudorep_selftest", rows}, {"pass", ok}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional primes and maximal images for genus-2 Siegel eigenforms"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool pipeline) {
    sub->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--seed", o.seed, "seed for randomized routines");
    sub->add_option("--factor-bound", o.factor_bound, "trial-division bound");
    sub->add_option("--rho-iterations", o.rho_iterations, "Pollard rho iteration cap per cofactor");
    sub->add_option("--lmax", o.lmax, "largest ell examined");
    if (!pipeline) return;
    sub->add_option("--primes", o.primes, "primes p used by the sieve (default: all table primes)")->delimiter(',');
    sub->add_flag("--serre,!--no-serre", o.serre, "assume Serre's conjecture");
    sub->add_option("--witness-bound", o.witness_bound, "largest ell searched for d_p nonsquare witnesses");
    sub->add_option("--dp-variant", o.dp_variant, "factorization or printed")->check(CLI::IsMember({"factorization", "printed"}));
  };

  std::string dataset_path;
  auto* sieve = app.add_subcommand("sieve", "candidate exceptional primes per cause");
  sieve->add_option("dataset", dataset_path)->required();
  common(sieve, true);

  std::string poly_text;
  auto* splitting = app.add_subcommand("splitting", "splitting types of primes in the coefficient field");
  auto* poly_opt = splitting->add_option("--poly", poly_text, "field polynomial coefficients, constant first, comma separated");
  splitting->add_option("dataset", dataset_path)->excludes(poly_opt);
  common(splitting, false);

  auto* uncond = app.add_subcommand("unconditional", "d_p generator tests and nonsquare certificates");
  uncond->add_option("dataset", dataset_path)->required();
  common(uncond, true);

  std::string d_text;
  std::uint64_t density_bound = 1'000'000;
  auto* density = app.add_subcommand("density", "share of primes with some Legendre symbol -1");
  density->add_option("--d", d_text, "comma-separated nonsquare integers")->required();
  density->add_option("--bound", density_bound, "prime bound X");
  common(density, false);

  auto* selftest = app.add_subcommand("pseudorep-selftest", "pseudo-representation axioms on small groups");
  common(selftest, false);

  auto* report = app.add_subcommand("report", "full pipeline report");
  report->add_option("dataset", dataset_path)->required();
  common(report, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sieve->parsed()) {
      const json doc = cmd_sieve(load_dataset(dataset_path, o.seed), o);
      emit(doc, o);
      return doc["partial"].get<bool>() ? exit_partial : exit_ok;
    }
    if (splitting->parsed()) {
      if (poly_text.empty() && dataset_path.empty()) throw DatasetError(DatasetError::Kind::schema, "", "give --poly or a dataset");
      std::optional<NumberField> K;
      if (!poly_text.empty()) {
        try {
          K.emplace(parse_integer_list(poly_text), o.seed);
        } catch (const FieldPolynomialError& e) {
          throw DatasetError(DatasetError::Kind::field_polynomial, "", e.what());
        }
      } else {
        K.emplace(load_dataset(dataset_path, o.seed).forms.front().field());
      }
      emit(cmd_splitting(*K, o), o);
      return exit_ok;
    }
    if (uncond->parsed()) {
      emit(cmd_unconditional(load_dataset(dataset_path, o.seed), o), o);
      return exit_ok;
    }
    if (density->parsed()) {
      std::vector<Integer> ds;
      try {
        ds = parse_integer_list(d_text);
        const DensityResult r = density_scan(ds, density_bound);
        emit({{"bound", density_bound}, {"hits", r.hits}, {"total", r.total}, {"fraction", r.fraction()}}, o);
      } catch (const std::invalid_argument& e) {
        throw DatasetError(DatasetError::Kind::schema, "", e.what());
      }
      return exit_ok;
    }
    if (selftest->parsed()) {
      bool ok = false;
      emit(cmd_pseudorep(ok), o);
      return ok ? exit_ok : exit_internal;
    }
    if (report->parsed()) {
      const Report r = run_report(load_dataset(dataset_path, o.seed), o.config(), o.primes);
      emit(r.doc, o);
      return r.exit_code;
    }
  } catch (const DatasetError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const InvalidEigenform& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const MissingPrime& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_internal;
}
