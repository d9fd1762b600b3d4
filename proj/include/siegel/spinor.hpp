#pragma once

// Eigenform data and the degree-4 spinor polynomials built from it.

#include <siegel/config.hpp>
#include <siegel/exact/factor.hpp>
#include <siegel/exact/number_field.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

class InvalidEigenform : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingPrime : public std::out_of_range {
 public:
  explicit MissingPrime(std::uint64_t p) : std::out_of_range("prime p=" + std::to_string(p) + " is not in the eigenvalue table"), p_(p) {}
  [[nodiscard]] std::uint64_t prime() const { return p_; }

 private:
  std::uint64_t p_;
};

struct Eigenvalues {
  FieldElement a_p;
  FieldElement a_p2;
};

class EigenformData {
 public:
  EigenformData(std::string label, int weight, NumberField field, std::map<std::uint64_t, Eigenvalues> table,
                bool multiplicity_one = false, bool interesting = false)
      : label_(std::move(label)),
        weight_(weight),
        field_(std::move(field)),
        table_(std::move(table)),
        multiplicity_one_(multiplicity_one),
        interesting_(interesting) {
    if (weight_ < 4 || weight_ % 2 != 0)
      throw InvalidEigenform(label_ + ": weight must be an even integer >= 4, got " + std::to_string(weight_));
    if (table_.empty()) throw InvalidEigenform(label_ + ": empty eigenvalue table");
    for (const auto& [p, ev] : table_) {
      if (!is_prime_u64(p)) throw InvalidEigenform(label_ + ": table key " + std::to_string(p) + " is not prime");
      if (!(ev.a_p.field() == field_) || !(ev.a_p2.field() == field_))
        throw InvalidEigenform(label_ + ": eigenvalues at p=" + std::to_string(p) + " live in a different field");
    }
  }

  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] const NumberField& field() const { return field_; }
  [[nodiscard]] const std::map<std::uint64_t, Eigenvalues>& table() const { return table_; }
  [[nodiscard]] bool multiplicity_one() const { return multiplicity_one_; }
  [[nodiscard]] bool interesting() const { return interesting_; }

  [[nodiscard]] const Eigenvalues& at(std::uint64_t p) const {
    const auto it = table_.find(p);
    if (it == table_.end()) throw MissingPrime(p);
    return it->second;
  }

  [[nodiscard]] std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& [p, ev] : table_) out.push_back(p);
    return out;
  }

 private:
  std::string label_;
  int weight_;
  NumberField field_;
  std::map<std::uint64_t, Eigenvalues> table_;
  bool multiplicity_one_;
  bool interesting_;
};

/// p^e as a rational.
inline Rational ppow(std::uint64_t p, long e) {
  if (e < 0) return Rational(1) / Rational(ipow(static_cast<unsigned long>(p), static_cast<unsigned long>(-e)));
  return Rational(ipow(static_cast<unsigned long>(p), static_cast<unsigned long>(e)));
}

// ---------------------------------------------------------------------------

struct DerivedCoeffs {
  FieldElement b_p;
  FieldElement d_p;
};

inline FieldElement b_coeff(const EigenformData& form, std::uint64_t p) {
  const auto& ev = form.at(p);
  const int k = form.weight();
  return ev.a_p * ev.a_p - ev.a_p2 - ppow(p, 2 * k - 4);
}

inline DerivedCoeffs derived_coeffs(const EigenformData& form, std::uint64_t p, DpVariant variant = DpVariant::factorization) {
  const auto& ev = form.at(p);
  const int k = form.weight();
  FieldElement b = b_coeff(form, p);
  const FieldElement a2 = ev.a_p * ev.a_p;
  FieldElement d = variant == DpVariant::factorization
                       ? a2 * Rational(1, 4) - b + ppow(p, 2 * k - 3) * 2
                       : a2 * Rational(-3, 4) + ev.a_p2 + ppow(p, 2 * k - 4) + ppow(p, 2 * k - 3);
  return {std::move(b), std::move(d)};
}

/// Pol_p(x) = x^4 - a x^3 + b x^2 - a p^(2k-3) x + p^(4k-6).
class HeckePolynomial {
 public:
  HeckePolynomial(std::uint64_t p, int weight, std::array<FieldElement, 5> coeffs)
      : p_(p), weight_(weight), coeffs_(std::move(coeffs)) {}

  [[nodiscard]] std::uint64_t prime() const { return p_; }
  [[nodiscard]] int weight() const { return weight_; }
  /// Constant term first.
  [[nodiscard]] const std::array<FieldElement, 5>& coeffs() const { return coeffs_; }

  [[nodiscard]] FieldElement operator()(const FieldElement& x) const {
    FieldElement acc = coeffs_[4];
    for (int i = 3; i >= 0; --i) acc = acc * x + coeffs_[static_cast<std::size_t>(i)];
    return acc;
  }
  [[nodiscard]] FieldElement operator()(const Rational& x) const {
    FieldElement acc = coeffs_[4];
    for (int i = 3; i >= 0; --i) acc = acc * x + coeffs_[static_cast<std::size_t>(i)];
    return acc;
  }

  /// x^4 Pol(P/x) = P^2 Pol(x) with P = p^(2k-3), coefficient by coefficient.
  [[nodiscard]] bool reciprocal() const {
    const Rational big_p = ppow(p_, 2 * weight_ - 3);
    Rational pi = 1;
    for (std::size_t i = 0; i <= 4; ++i) {
      if (!(coeffs_[i] * pi == coeffs_[4 - i] * (big_p * big_p))) return false;
      pi *= big_p;
    }
    return true;
  }

 private:
  std::uint64_t p_;
  int weight_;
  std::array<FieldElement, 5> coeffs_;
};

inline HeckePolynomial hecke_charpoly(const EigenformData& form, std::uint64_t p) {
  const auto& ev = form.at(p);
  const int k = form.weight();
  const NumberField& K = form.field();
  HeckePolynomial pol(p, k,
                      {K.from_rational(ppow(p, 4 * k - 6)), -(ev.a_p * ppow(p, 2 * k - 3)), b_coeff(form, p), -ev.a_p,
                       K.from_rational(1)});
  if (!pol.reciprocal()) throw std::logic_error("Hecke polynomial failed symplectic reciprocity");
  return pol;
}

/// Q_p(x) = x^4 Pol_p(1/x), constant term first.
inline std::array<FieldElement, 5> euler_factor(const EigenformData& form, std::uint64_t p) {
  const HeckePolynomial pol = hecke_charpoly(form, p);
  const auto& c = pol.coeffs();
  return {c[4], c[3], c[2], c[1], c[0]};
}

// ---------------------------------------------------------------------------
// the standard factorization over E[s]/(s^2 - d_p)

struct FactorizationCheck {
  bool pass = false;
  /// expanded product minus Pol_p, constant term first; the second member is
  /// the s-component, which must also vanish
  std::vector<std::pair<FieldElement, FieldElement>> difference;
};

namespace detail {

struct QuadElement {
  FieldElement u, v;  // u + v s
};

inline QuadElement quad_mul(const QuadElement& x, const QuadElement& y, const FieldElement& d) {
  return {x.u * y.u + x.v * y.v * d, x.u * y.v + x.v * y.u};
}

}  // namespace detail

/// Expands (x^2 - (a/2 + s) x + P)(x^2 - (a/2 - s) x + P) with s^2 = d_p and
/// compares with Pol_p.
inline FactorizationCheck standard_factorization_check(const EigenformData& form, std::uint64_t p,
                                                       DpVariant variant = DpVariant::factorization) {
  using detail::QuadElement;
  const NumberField& K = form.field();
  const FieldElement d = derived_coeffs(form, p, variant).d_p;
  const FieldElement half_a = form.at(p).a_p * Rational(1, 2);
  const Rational big_p = ppow(p, 2 * form.weight() - 3);
  const FieldElement zero = K.zero(), one = K.from_rational(1);
  const std::array<QuadElement, 3> f1{QuadElement{K.from_rational(big_p), zero}, QuadElement{-half_a, -one}, QuadElement{one, zero}};
  const std::array<QuadElement, 3> f2{QuadElement{K.from_rational(big_p), zero}, QuadElement{-half_a, one}, QuadElement{one, zero}};
  std::vector<QuadElement> prod(5, QuadElement{zero, zero});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const QuadElement t = detail::quad_mul(f1[i], f2[j], d);
      prod[i + j].u += t.u;
      prod[i + j].v += t.v;
    }
  const HeckePolynomial pol = hecke_charpoly(form, p);
  const auto& target = pol.coeffs();
  FactorizationCheck out;
  out.pass = true;
  for (std::size_t i = 0; i < 5; ++i) {
    FieldElement du = prod[i].u - target[i];
    out.pass = out.pass && du.is_zero() && prod[i].v.is_zero();
    out.difference.emplace_back(std::move(du), prod[i].v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// archimedean size tripwire

/// Complex roots of a monic integer polynomial (Durand-Kerner).
inline std::vector<std::complex<double>> complex_roots(const std::vector<Integer>& monic) {
  const std::size_t n = monic.size() - 1;
  std::vector<std::complex<double>> c;
  for (const auto& x : monic) c.emplace_back(x.get_d(), 0.0);
  if (n == 1) return {-c[0]};
  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1 + radius;
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed(0.4, 0.9);
  for (std::size_t i = 0; i < n; ++i) z[i] = radius * std::pow(seed, static_cast<double>(i));
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = c[n];
    for (std::size_t i = n; i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      const std::complex<double> step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (change < 1e-15) break;
  }
  return z;
}

inline std::complex<double> embed(const FieldElement& e, std::complex<double> root) {
  std::complex<double> acc = 0;
  const auto& c = e.coords();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * root + c[i].get_d();
  return acc;
}

/// Warning-only check of |a_p| <= 4 p^((2k-3)/2) and |b_p| <= 6 p^(2k-3) at
/// every complex embedding, with 1% slack.
inline std::vector<std::string> ramanujan_sanity(const EigenformData& form, std::uint64_t p) {
  constexpr double kSlack = 1.01;
  const double big_p = std::pow(static_cast<double>(p), 2.0 * form.weight() - 3);
  const double bound_a = 4 * std::sqrt(big_p) * kSlack;
  const double bound_b = 6 * big_p * kSlack;
  const FieldElement& a = form.at(p).a_p;
  const FieldElement b = b_coeff(form, p);
  std::vector<std::string> warnings;
  const auto roots = complex_roots(form.field().min_poly());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double va = std::abs(embed(a, roots[i]));
    const double vb = std::abs(embed(b, roots[i]));
    if (va > bound_a)
      warnings.push_back("p=" + std::to_string(p) + " embedding " + std::to_string(i) + ": |a_p| = " + std::to_string(va) +
                         " exceeds " + std::to_string(bound_a));
    if (vb > bound_b)
      warnings.push_back("p=" + std::to_string(p) + " embedding " + std::to_string(i) + ": |b_p| = " + std::to_string(vb) +
                         " exceeds " + std::to_string(bound_b));
  }
  return warnings;
}

}  // namespace siegel
