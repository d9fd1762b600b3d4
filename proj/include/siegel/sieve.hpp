#pragma once

// Candidate exceptional primes: reducibility expressions, norm gcds across
// several p, denominator and ramified primes, and the smaller-field test.

#include <siegel/config.hpp>
#include <siegel/exact/factor.hpp>
#include <siegel/exact/number_field.hpp>
#include <siegel/spinor.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

struct ReducibilityValues {
  std::uint64_t p;
  FieldElement r1;  // 1-dim constituent, trivial Hodge-Tate twist
  FieldElement r2;  // 1-dim constituent, middle twist
  FieldElement r3;  // related 2-dim constituents, first shape
  FieldElement r4;  // related 2-dim constituents, second shape
};

inline ReducibilityValues reducibility_values(const EigenformData& form, std::uint64_t p) {
  const int k = form.weight();
  const FieldElement& a = form.at(p).a_p;
  const FieldElement b = b_coeff(form, p);
  const FieldElement a2 = a * a;
  const Rational pk1 = ppow(p, k - 1), pk2 = ppow(p, k - 2);
  FieldElement r1 = b - a * (ppow(p, 2 * k - 3) + 1) + (ppow(p, 4 * k - 6) + 1);
  FieldElement r2 = b - a * (pk2 * (1 + Rational(static_cast<unsigned long>(p)))) + ppow(p, 2 * k - 4) * (1 + ppow(p, 2));
  FieldElement r3 = (b - (pk1 + ppow(p, 3 * k - 5))) * ((pk2 + 1) * (pk2 + 1)) - a2 * pk2;
  FieldElement r4 = (b - (pk2 + ppow(p, 3 * k - 4))) * ((pk1 + 1) * (pk1 + 1)) - a2 * pk1;
  return {p, std::move(r1), std::move(r2), std::move(r3), std::move(r4)};
}

enum class Cause { one_dim_trivial, one_dim_middle, related_case1, related_case2, smaller_field, denominators, ramified };

inline const char* to_string(Cause c) {
  switch (c) {
    case Cause::one_dim_trivial: return "one_dim_trivial";
    case Cause::one_dim_middle: return "one_dim_middle";
    case Cause::related_case1: return "related_case1";
    case Cause::related_case2: return "related_case2";
    case Cause::smaller_field: return "smaller_field";
    case Cause::denominators: return "denominators";
    case Cause::ramified: return "ramified";
  }
  return "?";
}

inline const FieldElement& value_for(const ReducibilityValues& v, Cause c) {
  switch (c) {
    case Cause::one_dim_trivial: return v.r1;
    case Cause::one_dim_middle: return v.r2;
    case Cause::related_case1: return v.r3;
    case Cause::related_case2: return v.r4;
    default: throw std::invalid_argument(std::string("cause ") + to_string(c) + " has no reducibility expression");
  }
}

/// Primes at or below floor are never adjudicated.
inline std::uint64_t threshold_floor(int k) {
  const auto floor = static_cast<std::uint64_t>(2 * k - 2);
  return k < 6 ? std::max<std::uint64_t>(floor, 7) : floor;
}

/// Outcome of one gcd sieve. A prime ell is flagged when ell divides the gcd
/// of the per-p numbers over p != ell; a zero gcd flags every prime.
struct CauseResult {
  Cause cause;
  std::map<std::uint64_t, Integer> numbers;  // per p, nonnegative
  Integer gcd;
  bool all_primes = false;
  std::vector<Integer> candidates;       // floor < ell <= ell_max
  std::vector<Integer> below_threshold;  // ell <= floor
  std::vector<Integer> beyond_range;     // ell > ell_max
  std::vector<Integer> unresolved_cofactors;
  std::string note;

  [[nodiscard]] Integer gcd_without(std::uint64_t ell) const {
    Integer g = 0;
    for (const auto& [p, n] : numbers)
      if (p != ell) g = igcd(g, n);
    return g;
  }

  /// Decided by divisibility, independent of how far the gcd was factored.
  [[nodiscard]] bool hits(const Integer& ell) const {
    if (ell.fits_ulong_p() && numbers.count(ell.get_ui()) != 0) return divides(ell, gcd_without(ell.get_ui()));
    return divides(ell, gcd);
  }

  [[nodiscard]] std::vector<Integer> all_flagged() const {
    std::vector<Integer> out = below_threshold;
    out.insert(out.end(), candidates.begin(), candidates.end());
    out.insert(out.end(), beyond_range.begin(), beyond_range.end());
    return out;
  }
};

namespace detail {

inline Integer norm_numerator(const FieldElement& e) { return iabs(norm(e).get_num()); }

inline void check_primes(const EigenformData& form, const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("empty prime set P");
  for (auto p : primes) (void)form.at(p);
}

/// Factors the gcd and sorts every flagged prime into its section.
inline void classify(CauseResult& res, std::uint64_t floor, std::uint64_t ell_max, const FactorConfig& cfg) {
  res.gcd = 0;
  for (const auto& [p, n] : res.numbers) res.gcd = igcd(res.gcd, n);
  res.all_primes = res.gcd == 0;
  std::set<Integer> flagged;
  if (!res.all_primes) {
    const Factorization fac = factor_int(res.gcd, cfg);
    for (const auto& [q, e] : fac.factors) flagged.insert(q);
    if (fac.unfactored_cofactor) res.unresolved_cofactors.push_back(*fac.unfactored_cofactor);
  }
  for (const auto& [p, n] : res.numbers) {
    const Integer ell(static_cast<unsigned long>(p));
    if (res.hits(ell)) flagged.insert(ell);
  }
  for (const Integer& ell : flagged) {
    if (!res.hits(ell)) continue;
    if (ell <= floor) res.below_threshold.push_back(ell);
    else if (ell <= ell_max) res.candidates.push_back(ell);
    else res.beyond_range.push_back(ell);
  }
}

}  // namespace detail

inline CauseResult candidate_primes(const EigenformData& form, Cause cause, const std::vector<std::uint64_t>& primes,
                                    std::uint64_t ell_max, const FactorConfig& cfg = {}) {
  detail::check_primes(form, primes);
  CauseResult res;
  res.cause = cause;
  for (auto p : primes) res.numbers[p] = detail::norm_numerator(value_for(reducibility_values(form, p), cause));
  detail::classify(res, threshold_floor(form.weight()), ell_max, cfg);
  if (res.all_primes) res.note = "expression vanishes for every p in P: reducibility not excluded at any ell";
  return res;
}

// ---------------------------------------------------------------------------

struct DenominatorReport {
  std::set<Integer> norm_denominators;        // primes of denominators of Norm(a_p), Norm(a_(p^2))
  std::set<Integer> coordinate_denominators;  // primes of coordinate denominators (reduction undefined there)
  std::vector<Integer> unresolved_cofactors;

  [[nodiscard]] bool contains(const Integer& ell) const {
    return norm_denominators.count(ell) != 0 || coordinate_denominators.count(ell) != 0;
  }
};

inline DenominatorReport denominator_primes(const EigenformData& form, const std::vector<std::uint64_t>& primes,
                                            const FactorConfig& cfg = {}) {
  DenominatorReport rep;
  auto absorb = [&](const Integer& den, std::set<Integer>& into) {
    if (den == 1) return;
    const Factorization fac = factor_int(den, cfg);
    for (const auto& [q, e] : fac.factors) into.insert(q);
    if (fac.unfactored_cofactor) rep.unresolved_cofactors.push_back(*fac.unfactored_cofactor);
  };
  for (auto p : primes) {
    const auto& ev = form.at(p);
    for (const FieldElement* e : {&ev.a_p, &ev.a_p2}) {
      absorb(norm(*e).get_den(), rep.norm_denominators);
      absorb(e->denominator(), rep.coordinate_denominators);
    }
  }
  return rep;
}

struct RamifiedReport {
  std::vector<DiscPrimeReport> primes;  // every prime of poly_disc, classified
  std::optional<Integer> unresolved_cofactor;

  /// Primes not certified unramified.
  [[nodiscard]] std::vector<Integer> ramified() const {
    std::vector<Integer> out;
    for (const auto& r : primes)
      if (r.classification != DiscPrimeClass::index) out.push_back(r.ell);
    return out;
  }
  [[nodiscard]] std::vector<Integer> index_primes() const {
    std::vector<Integer> out;
    for (const auto& r : primes)
      if (r.classification == DiscPrimeClass::index) out.push_back(r.ell);
    return out;
  }
};

/// Every prime dividing poly_disc has a repeated factor mod ell; each is
/// classified by the local test in classify_disc_prime.
inline RamifiedReport ramified_primes(const NumberField& K, const FactorConfig& cfg = {}) {
  RamifiedReport rep;
  const Factorization fac = factor_int(K.poly_disc(), cfg);
  for (const auto& [q, e] : fac.factors) rep.primes.push_back(classify_disc_prime(K, q, cfg.seed));
  rep.unresolved_cofactor = fac.unfactored_cofactor;
  return rep;
}

// ---------------------------------------------------------------------------
// smaller symplectic fields

struct UntwistedWitness {
  std::optional<std::uint64_t> p;       // a_p != 0 and Q(b_p) = E
  std::optional<std::uint64_t> star_p;  // a_p != 0 and Q(a_p^2) = E
};

inline bool is_untwisted_at(const EigenformData& form, std::uint64_t p) {
  const auto& a = form.at(p).a_p;
  return !a.is_zero() && is_generator(b_coeff(form, p));
}

inline UntwistedWitness untwisted_witness(const EigenformData& form, std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  UntwistedWitness w;
  for (auto p : primes) {
    const auto& a = form.at(p).a_p;
    if (a.is_zero()) continue;
    if (!w.p && is_generator(b_coeff(form, p))) w.p = p;
    if (!w.star_p && is_generator(a * a)) w.star_p = p;
  }
  return w;
}

struct SmallerFieldVerdict {
  bool excluded = false;
  std::vector<std::string> reasons;  // why not excluded
  bool vacuous_over_prime_field = false;
};

/// ell does not divide Norm(a_p) nor disc(b_p), for an untwisted witness p != ell.
inline SmallerFieldVerdict smaller_symplectic_excluded(const EigenformData& form, std::uint64_t p, const Integer& ell) {
  if (ell == p) throw std::invalid_argument("smaller-field test needs ell != p");
  if (!is_untwisted_at(form, p)) throw std::invalid_argument("p=" + std::to_string(p) + " is not an untwisted witness");
  SmallerFieldVerdict v;
  v.vacuous_over_prime_field = form.field().degree() == 1;
  if (divides(ell, norm(form.at(p).a_p).get_num())) v.reasons.emplace_back("Norm(a_p)");
  if (divides(ell, element_discriminant(b_coeff(form, p)).get_num())) v.reasons.emplace_back("disc");
  v.excluded = v.reasons.empty();
  return v;
}

/// gcd sieve of numerator(Norm(a_p)) * numerator(disc(b_p)) over the untwisted
/// witnesses in P.
inline CauseResult smaller_field_candidates(const EigenformData& form, const std::vector<std::uint64_t>& primes,
                                            std::uint64_t ell_max, const FactorConfig& cfg = {}) {
  detail::check_primes(form, primes);
  CauseResult res;
  res.cause = Cause::smaller_field;
  for (auto p : primes) {
    if (!is_untwisted_at(form, p)) continue;
    res.numbers[p] = iabs(norm(form.at(p).a_p).get_num() * element_discriminant(b_coeff(form, p)).get_num());
  }
  if (res.numbers.empty()) {
    res.all_primes = true;
    res.gcd = 0;
    res.note = "no untwisted witness in P: smaller symplectic images not excluded";
    return res;
  }
  detail::classify(res, threshold_floor(form.weight()), ell_max, cfg);
  if (form.field().degree() == 1) res.note = "E = Q: smaller symplectic subfields do not exist, cases 9 and 10 are vacuous";
  return res;
}

// ---------------------------------------------------------------------------

struct ExceptionalReport {
  std::string label;
  int weight = 0;
  std::vector<std::uint64_t> primes_used;
  std::uint64_t floor = 0;  // primes <= floor are below threshold
  std::uint64_t ell_min = 0;
  std::uint64_t ell_max = 0;
  bool serre_mode = false;
  std::map<Cause, CauseResult> causes;  // reducibility causes and smaller_field
  DenominatorReport denominators;
  RamifiedReport ramified;
  UntwistedWitness witness;
  std::vector<Integer> unresolved_cofactors;
  std::vector<std::string> notes;

  [[nodiscard]] bool reducibility_not_excluded() const {
    return std::any_of(causes.begin(), causes.end(), [](const auto& kv) {
      return kv.first != Cause::smaller_field && kv.second.all_primes;
    });
  }

  /// ell divides a denominator or the polynomial discriminant.
  [[nodiscard]] std::optional<std::string> excluded_reason(const Integer& ell, const NumberField& K) const {
    if (denominators.norm_denominators.count(ell) != 0) return std::string("denominator prime (norm of an eigenvalue)");
    if (denominators.coordinate_denominators.count(ell) != 0) return std::string("denominator prime (eigenvalue coordinates)");
    if (divides(ell, K.poly_disc())) {
      for (const auto& r : ramified.primes)
        if (r.ell == ell) return std::string("divides poly_disc (") + to_string(r.classification) + ")";
      return std::string("divides poly_disc");
    }
    return std::nullopt;
  }
};

inline ExceptionalReport run_sieve(const EigenformData& form, std::vector<std::uint64_t> primes, const Config& config) {
  if (primes.empty()) primes = form.primes();
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  const FactorConfig fcfg = config.factoring();
  ExceptionalReport rep;
  rep.label = form.label();
  rep.weight = form.weight();
  rep.primes_used = primes;
  rep.floor = threshold_floor(form.weight());
  rep.ell_min = static_cast<std::uint64_t>(2 * form.weight() - 1);
  rep.ell_max = config.ell_max;
  rep.serre_mode = config.serre_mode;
  for (Cause c : {Cause::one_dim_trivial, Cause::one_dim_middle, Cause::related_case1, Cause::related_case2})
    rep.causes.emplace(c, candidate_primes(form, c, primes, config.ell_max, fcfg));
  rep.causes.emplace(Cause::smaller_field, smaller_field_candidates(form, primes, config.ell_max, fcfg));
  rep.denominators = denominator_primes(form, primes, fcfg);
  rep.ramified = ramified_primes(form.field(), fcfg);
  rep.witness = untwisted_witness(form, primes);

  for (const auto& [c, res] : rep.causes)
    rep.unresolved_cofactors.insert(rep.unresolved_cofactors.end(), res.unresolved_cofactors.begin(), res.unresolved_cofactors.end());
  rep.unresolved_cofactors.insert(rep.unresolved_cofactors.end(), rep.denominators.unresolved_cofactors.begin(),
                                  rep.denominators.unresolved_cofactors.end());
  if (rep.ramified.unresolved_cofactor) rep.unresolved_cofactors.push_back(*rep.ramified.unresolved_cofactor);

  if (primes.size() < 2) rep.notes.emplace_back("single prime in P: the gcd sieve is weak");
  if (rep.reducibility_not_excluded()) rep.notes.emplace_back("reducibility not excluded at any ell");
  if (form.weight() < 6) rep.notes.emplace_back("k < 6: ell > 7 is also required");
  rep.notes.emplace_back(config.serre_mode
                             ? "unrelated 2-dimensional constituents excluded for every ell > 2k-2 assuming Serre's conjecture"
                             : "unrelated 2-dimensional constituents excluded only at places with a d_p nonsquare certificate");
  return rep;
}

}  // namespace siegel
