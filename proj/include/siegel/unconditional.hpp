#pragma once

// The criterion that avoids Serre's conjecture: Q(d_p) = E with d_p a
// nonsquare, certified by residue nonsquare witnesses at places above ell.

#include <siegel/config.hpp>
#include <siegel/exact/number_field.hpp>
#include <siegel/rules.hpp>
#include <siegel/sieve.hpp>
#include <siegel/spinor.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

struct WitnessCertificate {
  std::uint64_t p = 0;
  ResiduePlace place;
  bool disc_ok = false;    // ell does not divide numerator(disc(d_p))
  bool nonsquare = false;  // d_p reduces to a nonsquare in F_lambda
  std::optional<bool> legendre_shortcut;  // Legendre(Norm(d_p), ell) = -1, evaluated at inert places

  [[nodiscard]] bool valid() const { return disc_ok && nonsquare; }
};

/// Both clauses at one place. At the unique place over an inert ell the
/// Legendre symbol of the norm is computed too and must agree.
inline WitnessCertificate dp_place_test(const EigenformData& form, std::uint64_t p, const ResiduePlace& place,
                                        DpVariant variant = DpVariant::factorization) {
  const FieldElement d = derived_coeffs(form, p, variant).d_p;
  WitnessCertificate cert{p, place, false, false, std::nullopt};
  const FpPoly residue = reduce_at_place(d, place);
  cert.disc_ok = !divides(place.ell, element_discriminant(d).get_num());
  const SquareClass sq = residue_square_test(residue, place);
  cert.nonsquare = sq == SquareClass::nonsquare;
  if (place.residue_degree == static_cast<int>(form.field().degree()) && place.ell % 2 == 1) {
    const SquareClass via_norm = legendre(norm(d), place.ell);
    cert.legendre_shortcut = via_norm == SquareClass::nonsquare;
    if (via_norm != sq) throw std::logic_error("inert-place shortcut disagrees with the residue-field square test at ell=" + std::to_string(place.ell));
  }
  return cert;
}

struct FieldWitness {
  enum class Status { certified, inconclusive, square, not_generator };
  std::uint64_t p = 0;
  Status status = Status::inconclusive;
  bool generator = false;
  std::optional<WitnessCertificate> certificate;
  std::uint64_t searched_to = 0;
};

inline const char* to_string(FieldWitness::Status s) {
  switch (s) {
    case FieldWitness::Status::certified: return "certified";
    case FieldWitness::Status::inconclusive: return "inconclusive";
    case FieldWitness::Status::square: return "square";
    case FieldWitness::Status::not_generator: return "not-generator";
  }
  return "?";
}

/// Q(d_p) = E by the generator test; sqrt(d_p) not in E by a residue
/// nonsquare at some admissible place with ell <= bound.
inline FieldWitness dp_field_witness(const EigenformData& form, std::uint64_t p, std::uint64_t bound,
                                     DpVariant variant = DpVariant::factorization, std::uint64_t seed = 0) {
  const FieldElement d = derived_coeffs(form, p, variant).d_p;
  if (d.is_zero()) throw std::domain_error("d_p = 0 at p=" + std::to_string(p));
  const NumberField& K = form.field();
  FieldWitness w;
  w.p = p;
  w.generator = is_generator(d);
  if (!w.generator) {
    w.status = FieldWitness::Status::not_generator;
    return w;
  }
  if (K.degree() == 1 && is_rational_square(d.coords()[0])) {
    w.status = FieldWitness::Status::square;
    return w;
  }
  const Rational nd = norm(d);
  const Integer disc_num = element_discriminant(d).get_num();
  const Integer coord_den = d.denominator();
  for (std::uint64_t ell : *prime_table(bound)) {
    if (ell > bound) break;
    w.searched_to = ell;
    if (ell == 2) continue;
    if (divides(ell, K.poly_disc()) || divides(ell, nd.get_num()) || divides(ell, nd.get_den()) || divides(ell, disc_num) ||
        divides(ell, coord_den))
      continue;
    for (const auto& place : places_above(K, ell, seed).places) {
      if (residue_square_test(reduce_at_place(d, place), place) == SquareClass::nonsquare) {
        w.certificate = WitnessCertificate{p, place, true, true, std::nullopt};
        w.status = FieldWitness::Status::certified;
        return w;
      }
    }
  }
  w.status = FieldWitness::Status::inconclusive;
  return w;
}

// ---------------------------------------------------------------------------

struct DensityResult {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;

  [[nodiscard]] double fraction() const { return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total); }
};

/// Among odd primes ell <= bound dividing no d, the share with some Legendre
/// symbol (d / ell) = -1.
inline DensityResult density_scan(const std::vector<Integer>& ds, std::uint64_t bound) {
  if (ds.empty()) throw std::invalid_argument("density scan needs at least one value");
  if (bound < 100) throw std::invalid_argument("density scan bound must be >= 100");
  for (const auto& d : ds) {
    if (d == 0) throw std::invalid_argument("density scan value is zero");
    if (is_perfect_square(d)) throw std::invalid_argument("density scan value " + d.get_str() + " is a perfect square");
  }
  DensityResult res;
  for (std::uint64_t ell : *prime_table(bound)) {
    if (ell > bound) break;
    if (ell == 2) continue;
    bool skip = false, hit = false;
    for (const auto& d : ds) {
      const std::uint64_t r = mod_u64(d, ell);
      if (r == 0) {
        skip = true;
        break;
      }
      hit = hit || powmod(r, (ell - 1) / 2, ell) != 1;
    }
    if (skip) continue;
    ++res.total;
    if (hit) ++res.hits;
  }
  return res;
}

// ---------------------------------------------------------------------------

struct Realization {
  std::uint64_t ell = 0;
  std::string place;
  int residue_degree = 1;
  std::string group;
  std::vector<std::string> chain;
};

struct PlaceAnalysis {
  ResiduePlace place;
  std::vector<WitnessCertificate> certificates;  // one per p tested
  ExclusionTable table;
};

struct EllAnalysis {
  std::uint64_t ell = 0;
  std::optional<std::string> excluded;  // below threshold, denominator or discriminant prime
  std::vector<PlaceAnalysis> places;
};

/// The p usable for certificates: d_p generates E.
inline std::vector<std::uint64_t> dp_generator_primes(const EigenformData& form, const std::vector<std::uint64_t>& primes,
                                                      DpVariant variant) {
  std::vector<std::uint64_t> out;
  for (auto p : primes) {
    const FieldElement d = derived_coeffs(form, p, variant).d_p;
    if (!d.is_zero() && is_generator(d)) out.push_back(p);
  }
  return out;
}

inline EllAnalysis analyze_ell(const EigenformData& form, const ExceptionalReport& report, std::uint64_t ell, const Config& config,
                               const std::vector<std::uint64_t>& dp_primes) {
  EllAnalysis a;
  a.ell = ell;
  const Integer L(static_cast<unsigned long>(ell));
  if (ell <= report.floor) {
    a.excluded = "ell <= " + std::to_string(report.floor);
    return a;
  }
  if (auto why = report.excluded_reason(L, form.field())) {
    a.excluded = *why;
    return a;
  }
  for (auto& place : places_above(form.field(), ell, config.seed).places) {
    PlaceAnalysis pa{place, {}, {}};
    ResidualEvidence ev;
    if (!config.serre_mode) {
      for (auto p : dp_primes) {
        if (p == ell) continue;
        try {
          pa.certificates.push_back(dp_place_test(form, p, place, config.dp_variant));
        } catch (const BadDenominator&) {
          continue;
        }
        if (!ev.certificate_p && pa.certificates.back().valid()) ev.certificate_p = p;
      }
    }
    pa.table = exclusion_table(form, report, ell, place.residue_degree, ev, config.serre_mode, place.local_factor.str());
    a.places.push_back(std::move(pa));
  }
  return a;
}

/// One entry per place with a fully excluded table.
inline std::vector<Realization> galois_realizations(const ExceptionalReport& report, const std::vector<EllAnalysis>& analyses) {
  std::vector<Realization> out;
  for (const auto& a : analyses) {
    if (a.excluded) continue;
    for (const auto& pa : a.places) {
      if (!pa.table.maximal) continue;
      Realization r;
      r.ell = a.ell;
      r.place = pa.table.place;
      r.residue_degree = pa.place.residue_degree;
      r.group = pa.table.image->group;
      r.chain.push_back("ell=" + std::to_string(a.ell) + " > " + std::to_string(report.floor) + ", not a denominator or discriminant prime");
      for (const auto& row : pa.table.rows)
        r.chain.push_back((row.index == 0 ? std::string("residual") : "case " + std::to_string(row.index)) + ": " + row.reason);
      r.chain.push_back(pa.table.image->similitude);
      r.chain.push_back("realized over Q by an extension ramified only at " + std::to_string(a.ell));
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace siegel
