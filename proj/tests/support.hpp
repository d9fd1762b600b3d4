#pragma once

// Seeded generators shared by the test suites.

#include <siegel/exact/number_field.hpp>
#include <siegel/spinor.hpp>

#include <random>
#include <vector>

namespace siegel::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational rand_rational(Rng& rng, long span = 50, long max_den = 6) {
  return make_rational(Integer(uniform(rng, -span, span)), Integer(uniform(rng, 1, max_den)));
}

inline Integer rand_bits(Rng& rng, unsigned bits) {
  Integer n = 0;
  for (unsigned done = 0; done < bits; done += 64) {
    n <<= 64;
    n += Integer(static_cast<unsigned long>(rng()));
  }
  n >>= static_cast<unsigned long>((bits + 63) / 64 * 64 - bits);
  return n;
}

inline RatPoly rand_poly(Rng& rng, int degree, long span = 9) {
  std::vector<Rational> c;
  for (int i = 0; i < degree; ++i) c.emplace_back(uniform(rng, -span, span));
  c.emplace_back(1);
  return RatPoly(std::move(c));
}

/// Fields used across tests: Q, Q(i), Q(sqrt 5), the cubic, x^4 + x + 1.
inline std::vector<NumberField> sample_fields() {
  return {NumberField::rationals(),
          NumberField({Integer(1), Integer(0), Integer(1)}),
          NumberField({Integer(-5), Integer(0), Integer(1)}),
          NumberField({Integer(-59412960), Integer(-294086), Integer(-1), Integer(1)}),
          NumberField({Integer(1), Integer(1), Integer(0), Integer(0), Integer(1)})};
}

inline NumberField skoruppa_cubic() { return NumberField({Integer(-59412960), Integer(-294086), Integer(-1), Integer(1)}); }

inline FieldElement rand_element(Rng& rng, const NumberField& K, long span = 20, long max_den = 4) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < K.degree(); ++i) c.push_back(rand_rational(rng, span, max_den));
  return K.element(std::move(c));
}

inline FieldElement rand_integral_element(Rng& rng, const NumberField& K, long span = 20) {
  return rand_element(rng, K, span, 1);
}

inline EigenformData rand_form(Rng& rng, const NumberField& K, int k, const std::vector<std::uint64_t>& primes, long span = 30) {
  std::map<std::uint64_t, Eigenvalues> table;
  for (auto p : primes) table.emplace(p, Eigenvalues{rand_element(rng, K, span), rand_element(rng, K, span)});
  return EigenformData("random", k, K, std::move(table));
}

inline EigenformData rational_form(int k, const std::map<std::uint64_t, std::pair<long, long>>& values) {
  const NumberField Q = NumberField::rationals();
  std::map<std::uint64_t, Eigenvalues> table;
  for (const auto& [p, v] : values) table.emplace(p, Eigenvalues{Q.from_rational(v.first), Q.from_rational(v.second)});
  return EigenformData("rational", k, Q, std::move(table));
}

/// Lift pattern: Pol_p = (x - p^(k-1))(x - p^(k-2))(x^2 - c x + p^(2k-3)).
inline EigenformData saito_kurokawa_form(int k, const std::map<std::uint64_t, long>& c) {
  const NumberField Q = NumberField::rationals();
  std::map<std::uint64_t, Eigenvalues> table;
  for (const auto& [p, cp] : c) {
    const Rational s = ppow(p, k - 1) + ppow(p, k - 2);
    const Rational a = Rational(cp) + s;
    const Rational b = 2 * ppow(p, 2 * k - 3) + Rational(cp) * s;
    const Rational a2 = a * a - b - ppow(p, 2 * k - 4);
    table.emplace(p, Eigenvalues{Q.from_rational(a), Q.from_rational(a2)});
  }
  return EigenformData("saito-kurokawa", k, Q, std::move(table));
}

}  // namespace siegel::testing
