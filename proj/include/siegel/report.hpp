#pragma once

// Pipeline orchestration and report rendering. The machine report is a JSON
// document with sorted keys; the text report is rendered from that document.

#include <siegel/config.hpp>
#include <siegel/dataset.hpp>
#include <siegel/rules.hpp>
#include <siegel/sieve.hpp>
#include <siegel/spinor.hpp>
#include <siegel/unconditional.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace siegel {

enum ExitCode : int { exit_ok = 0, exit_validation = 2, exit_partial = 3, exit_internal = 4 };

namespace detail {

using nlohmann::json;

inline json integers_json(const std::vector<Integer>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(x.get_str());
  return arr;
}

template <class Set>
json integer_set_json(const Set& s) {
  return integers_json(std::vector<Integer>(s.begin(), s.end()));
}

inline json cause_json(const CauseResult& r) {
  json numbers = json::object();
  for (const auto& [p, n] : r.numbers) numbers[std::to_string(p)] = n.get_str();
  return {{"gcd", r.gcd.get_str()},
          {"all_primes", r.all_primes},
          {"candidates", integers_json(r.candidates)},
          {"below_threshold", integers_json(r.below_threshold)},
          {"beyond_range", integers_json(r.beyond_range)},
          {"unresolved_cofactors", integers_json(r.unresolved_cofactors)},
          {"norm_numerators", numbers},
          {"note", r.note}};
}

inline json optional_prime(const std::optional<std::uint64_t>& p) { return p ? json(*p) : json(nullptr); }

}  // namespace detail

inline nlohmann::json sieve_json(const ExceptionalReport& rep) {
  using nlohmann::json;
  json causes = json::object();
  for (const auto& [c, r] : rep.causes) causes[to_string(c)] = detail::cause_json(r);
  json ramified = json::array();
  for (const auto& r : rep.ramified.primes)
    ramified.push_back({{"ell", r.ell.get_str()},
                        {"disc_valuation", r.disc_valuation},
                        {"classification", to_string(r.classification)},
                        {"ell_maximal", r.ell_maximal ? json(*r.ell_maximal) : json(nullptr)}});
  return {{"primes_used", rep.primes_used},
          {"threshold", {{"floor", rep.floor}, {"ell_min", rep.ell_min}, {"ell_max", rep.ell_max}}},
          {"serre_mode", rep.serre_mode},
          {"causes", causes},
          {"denominators",
           {{"norm", detail::integer_set_json(rep.denominators.norm_denominators)},
            {"coordinates", detail::integer_set_json(rep.denominators.coordinate_denominators)}}},
          {"ramified",
           {{"set", detail::integers_json(rep.ramified.ramified())},
            {"index_primes", detail::integers_json(rep.ramified.index_primes())},
            {"classified", ramified},
            {"unresolved_cofactor", rep.ramified.unresolved_cofactor ? json(rep.ramified.unresolved_cofactor->get_str()) : json(nullptr)}}},
          {"untwisted_witness", {{"p", detail::optional_prime(rep.witness.p)}, {"star_p", detail::optional_prime(rep.witness.star_p)}}},
          {"unresolved_cofactors", detail::integers_json(rep.unresolved_cofactors)},
          {"reducibility_not_excluded", rep.reducibility_not_excluded()},
          {"notes", rep.notes}};
}

inline nlohmann::json config_json(const Config& c) {
  return {{"seed", c.seed},
          {"trial_bound", c.factor.trial_bound},
          {"rho_iterations", c.factor.rho_iterations},
          {"ell_max", c.ell_max},
          {"serre_mode", c.serre_mode},
          {"dp_variant", to_string(c.dp_variant)},
          {"witness_bound", c.witness_bound}};
}

inline nlohmann::json input_json(const EigenformData& form) {
  using nlohmann::json;
  json poly = json::array();
  for (const auto& c : form.field().min_poly()) poly.push_back(c.get_str());
  return {{"label", form.label()},
          {"weight", form.weight()},
          {"field_poly", poly},
          {"field_poly_text", to_string(form.field().min_poly_q())},
          {"poly_disc", form.field().poly_disc().get_str()},
          {"irreducibility", form.field().irreducibility_evidence()},
          {"multiplicity_one", form.multiplicity_one()},
          {"interesting", form.interesting()},
          {"table_primes", form.primes()}};
}

/// d_p data per p in P: value, generator test, nonsquare witness, factorization check.
inline nlohmann::json unconditional_json(const EigenformData& form, const std::vector<std::uint64_t>& primes, const Config& config) {
  using nlohmann::json;
  json out = json::object();
  for (auto p : primes) {
    const FieldElement d = derived_coeffs(form, p, config.dp_variant).d_p;
    json entry{{"d_p", to_string(d)},
               {"norm", to_string(norm(d))},
               {"factorization_check", standard_factorization_check(form, p, config.dp_variant).pass}};
    if (d.is_zero()) {
      entry["witness"] = "d_p = 0";
    } else {
      const FieldWitness w = dp_field_witness(form, p, config.witness_bound, config.dp_variant, config.seed);
      entry["generator"] = w.generator;
      entry["witness"] = to_string(w.status);
      entry["witness_ell"] = w.certificate ? json(w.certificate->place.ell) : json(nullptr);
      entry["witness_place"] = w.certificate ? json(w.certificate->place.local_factor.str()) : json(nullptr);
      entry["searched_to"] = w.searched_to;
    }
    out[std::to_string(p)] = entry;
  }
  return out;
}

inline nlohmann::json ell_json(const EllAnalysis& a) {
  using nlohmann::json;
  json e{{"ell", a.ell}};
  if (a.excluded) {
    e["excluded"] = *a.excluded;
    return e;
  }
  json places = json::array();
  for (const auto& pa : a.places) {
    json rows = json::array();
    for (const auto& r : pa.table.rows)
      rows.push_back({{"case", r.index}, {"label", r.label}, {"status", to_string(r.status)}, {"reason", r.reason}});
    json certs = json::array();
    for (const auto& c : pa.certificates)
      certs.push_back({{"p", c.p},
                       {"disc_ok", c.disc_ok},
                       {"nonsquare", c.nonsquare},
                       {"valid", c.valid()},
                       {"legendre_shortcut", c.legendre_shortcut ? json(*c.legendre_shortcut) : json(nullptr)}});
    places.push_back({{"local_factor", pa.table.place},
                      {"residue_degree", pa.place.residue_degree},
                      {"certificates", certs},
                      {"cases", rows},
                      {"maximal", pa.table.maximal},
                      {"image", pa.table.image ? json(pa.table.image->group) : json(nullptr)}});
  }
  e["places"] = places;
  return e;
}

struct FormOutcome {
  nlohmann::json doc;
  bool partial = false;
};

inline FormOutcome form_report(const EigenformData& form, std::vector<std::uint64_t> primes, const Config& config) {
  using nlohmann::json;
  if (primes.empty()) primes = form.primes();
  const ExceptionalReport rep = run_sieve(form, primes, config);
  FormOutcome out;
  out.partial = !rep.unresolved_cofactors.empty();
  json warnings = json::array();
  for (auto p : rep.primes_used)
    for (auto& w : ramanujan_sanity(form, p)) warnings.push_back(w);
  for (const auto& c : rep.unresolved_cofactors) warnings.push_back("unresolved cofactor " + c.get_str());

  const auto dp_primes = config.serre_mode ? std::vector<std::uint64_t>{} : dp_generator_primes(form, rep.primes_used, config.dp_variant);
  std::vector<EllAnalysis> analyses;
  json tables = json::array();
  for (std::uint64_t ell : *prime_table(config.ell_max)) {
    if (ell > config.ell_max) break;
    if (ell <= rep.floor) continue;
    analyses.push_back(analyze_ell(form, rep, ell, config, dp_primes));
    tables.push_back(ell_json(analyses.back()));
  }
  json realized = json::array();
  for (const auto& r : galois_realizations(rep, analyses))
    realized.push_back({{"ell", r.ell}, {"place", r.place}, {"residue_degree", r.residue_degree}, {"group", r.group}, {"chain", r.chain}});

  json banners = json::array();
  if (rep.reducibility_not_excluded()) banners.push_back("reducibility not excluded");
  if (out.partial) banners.push_back("partial result: unresolved cofactors");
  out.doc = {{"input", input_json(form)},
             {"sieve", sieve_json(rep)},
             {"unconditional", unconditional_json(form, rep.primes_used, config)},
             {"exclusion_tables", tables},
             {"realizations", realized},
             {"banners", banners},
             {"warnings", warnings}};
  return out;
}

struct Report {
  nlohmann::json doc;
  int exit_code = exit_ok;
};

inline Report run_report(const Dataset& ds, const Config& config, const std::vector<std::uint64_t>& primes = {}) {
  Report r;
  nlohmann::json forms = nlohmann::json::array();
  bool partial = false;
  for (const auto& f : ds.forms) {
    FormOutcome o = form_report(f, primes, config);
    partial = partial || o.partial;
    forms.push_back(std::move(o.doc));
  }
  r.doc = {{"config", config_json(config)}, {"forms", forms}};
  r.exit_code = partial ? exit_partial : exit_ok;
  return r;
}

// ---------------------------------------------------------------------------
// text rendering

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline bool all_scalars(const json& arr) {
  return std::all_of(arr.begin(), arr.end(), [](const json& v) { return !v.is_structured(); });
}

inline void render_text(const json& v, const std::string& indent, std::string& out) {
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      if (val.is_structured() && !(val.is_array() && all_scalars(val))) {
        out += indent + key + ":\n";
        render_text(val, indent + "  ", out);
      } else {
        out += indent + key + ": ";
        render_text(val, "", out);
      }
    }
  } else if (v.is_array()) {
    if (all_scalars(v)) {
      std::string line = "{";
      for (std::size_t i = 0; i < v.size(); ++i) line += (i ? ", " : "") + scalar_text(v[i]);
      out += indent + line + "}\n";
      return;
    }
    std::size_t i = 0;
    for (const auto& e : v) {
      out += indent + "[" + std::to_string(i++) + "]\n";
      render_text(e, indent + "  ", out);
    }
  } else {
    out += indent + scalar_text(v) + "\n";
  }
}

}  // namespace detail

inline std::string render_text(const nlohmann::json& doc) {
  std::string out;
  detail::render_text(doc, "", out);
  return out;
}

inline std::string render_machine(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace siegel
