#pragma once

// Polynomials over a prime field F_ell (ell < 2^63) and their factorization:
// squarefree decomposition, distinct-degree splitting via gcd(x^(ell^i) - x, f),
// and seeded Cantor-Zassenhaus equal-degree splitting.

#include <siegel/exact/integer.hpp>
#include <siegel/exact/polynomial.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

class FpPoly {
 public:
  using Coeff = std::uint64_t;

  FpPoly() : p_(2) {}
  explicit FpPoly(std::uint64_t modulus) : p_(modulus) {}
  FpPoly(std::uint64_t modulus, std::vector<Coeff> coeffs) : p_(modulus), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
  }

  static FpPoly constant(std::uint64_t modulus, Coeff value) { return FpPoly(modulus, {value}); }
  static FpPoly x(std::uint64_t modulus) { return FpPoly(modulus, {0, 1}); }

  /// Coefficients reduced mod ell; throws std::domain_error if ell divides a denominator.
  static FpPoly reduce(const RatPoly& f, std::uint64_t modulus) {
    std::vector<Coeff> v;
    v.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) v.push_back(reduce_mod(c, modulus));
    return FpPoly(modulus, std::move(v));
  }

  [[nodiscard]] std::uint64_t modulus() const { return p_; }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  [[nodiscard]] const std::vector<Coeff>& coeffs() const { return c_; }
  [[nodiscard]] Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  [[nodiscard]] Coeff leading() const { return c_.empty() ? 0 : c_.back(); }

  [[nodiscard]] Coeff operator()(Coeff at) const {
    Coeff acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addmod(mulmod(acc, at, p_), *it, p_);
    return acc;
  }

  [[nodiscard]] FpPoly monic() const {
    if (is_zero()) return *this;
    const Coeff inv = invmod(leading(), p_);
    FpPoly r = *this;
    for (auto& x : r.c_) x = mulmod(x, inv, p_);
    return r;
  }

  [[nodiscard]] FpPoly derivative() const {
    std::vector<Coeff> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(mulmod(c_[i], i % p_, p_));
    return FpPoly(p_, std::move(d));
  }

  FpPoly& operator+=(const FpPoly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = addmod(c_[i], o.c_[i], p_);
    trim();
    return *this;
  }
  FpPoly& operator-=(const FpPoly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = submod(c_[i], o.c_[i], p_);
    trim();
    return *this;
  }
  FpPoly& scale(Coeff s) {
    s %= p_;
    for (auto& x : c_) x = mulmod(x, s, p_);
    trim();
    return *this;
  }

  friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
  friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<Coeff> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = addmod(v[i + j], mulmod(a.c_[i], b.c_[j], a.p_), a.p_);
    }
    return FpPoly(a.p_, std::move(v));
  }
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator<(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    a.check(b);
    if (b.is_zero()) throw std::domain_error("F_p polynomial division by zero");
    const std::uint64_t p = a.p_;
    if (a.degree() < b.degree()) return {FpPoly(p), a};
    std::vector<Coeff> rem(a.c_);
    std::vector<Coeff> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    const Coeff inv = invmod(b.leading(), p);
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      const Coeff q = mulmod(rem[static_cast<std::size_t>(i)], inv, p);
      if (q == 0) continue;
      quot[static_cast<std::size_t>(i - db)] = q;
      for (int j = 0; j <= db; ++j) {
        auto& slot = rem[static_cast<std::size_t>(i - db + j)];
        slot = submod(slot, mulmod(q, b.c_[static_cast<std::size_t>(j)], p), p);
      }
    }
    return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
  }
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

  [[nodiscard]] std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Coeff c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      if (i == 0 || c != 1) out += std::to_string(c);
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check(const FpPoly& o) const {
    if (o.p_ != p_) throw std::invalid_argument("F_p polynomials over different moduli");
  }

  std::uint64_t p_;
  std::vector<Coeff> c_;
};

inline FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^exp mod m, exponent an arbitrary nonnegative integer.
inline FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& m) {
  FpPoly result = FpPoly::constant(m.modulus(), 1) % m;
  FpPoly b = base % m;
  const auto bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  if (exp == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

/// Inverse of a modulo m (m need not be irreducible as long as gcd(a, m) = 1).
inline FpPoly invmod(const FpPoly& a, const FpPoly& m) {
  const std::uint64_t p = m.modulus();
  FpPoly r0 = m, r1 = a % m;
  FpPoly t0(p), t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.degree() != 0) throw std::domain_error("F_p polynomial not invertible modulo " + m.str());
  return t0.scale(invmod(r0.leading(), p)) % m;
}

struct FpFactor {
  FpPoly factor;  // monic irreducible
  unsigned exponent;
};

namespace detail {

/// Squarefree decomposition of a monic polynomial: pairs (g, e) with g squarefree,
/// pairwise coprime, f = prod g^e.
inline std::vector<std::pair<FpPoly, unsigned>> squarefree_parts(const FpPoly& f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::pair<FpPoly, unsigned>> out;
  if (f.degree() <= 0) return out;
  const FpPoly df = f.derivative();
  if (df.is_zero()) {
    // f = g(x^p); over F_p, g^(1/p) has the same coefficients
    std::vector<FpPoly::Coeff> root;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) root.push_back(f.coeffs()[i]);
    for (auto& [g, e] : squarefree_parts(FpPoly(p, std::move(root)))) out.emplace_back(std::move(g), e * static_cast<unsigned>(p));
    return out;
  }
  FpPoly c = gcd(f, df);
  FpPoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    // c = h(x^p)
    std::vector<FpPoly::Coeff> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c.coeffs()[k]);
    for (auto& [g, e] : squarefree_parts(FpPoly(p, std::move(root)).monic()))
      out.emplace_back(std::move(g), e * static_cast<unsigned>(p));
  }
  return out;
}

/// Pairs (product of all irreducible factors of degree d, d) for a squarefree monic f.
inline std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x = FpPoly::x(p);
  FpPoly h = x % f;
  const Integer ell(static_cast<unsigned long>(p));
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, ell, f);
    FpPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

inline FpPoly random_poly(std::uint64_t p, int below_degree, std::mt19937_64& rng) {
  std::vector<FpPoly::Coeff> v(static_cast<std::size_t>(below_degree));
  for (auto& c : v) c = rng() % p;
  return FpPoly(p, std::move(v));
}

/// Splits a squarefree monic f whose irreducible factors all have degree d.
inline void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = f.modulus();
  while (true) {
    const FpPoly a = random_poly(p, f.degree(), rng);
    if (a.degree() <= 0) continue;
    FpPoly b(p);
    if (p == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      FpPoly term = a % f;
      b = term;
      for (int i = 1; i < d; ++i) {
        term = (term * term) % f;
        b += term;
      }
    } else {
      const Integer e = (ipow(static_cast<unsigned long>(p), static_cast<unsigned long>(d)) - 1) / 2;
      b = powmod(a, e, f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factorization of f mod ell into monic irreducibles with exponents, sorted by
/// (degree, coefficients). f must be nonzero mod ell with ell-integral coefficients.
inline std::vector<FpFactor> factor_mod(const FpPoly& f, std::uint64_t seed = 0) {
  if (f.is_zero()) throw std::domain_error("factor_mod: polynomial vanishes modulo " + std::to_string(f.modulus()));
  std::vector<FpFactor> out;
  std::mt19937_64 rng(seed);
  for (const auto& [part, e] : detail::squarefree_parts(f.monic())) {
    for (const auto& [block, d] : detail::distinct_degree(part)) {
      std::vector<FpPoly> pieces;
      detail::equal_degree(block, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({std::move(piece), e});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) { return a.factor < b.factor; });
  std::vector<FpFactor> merged;
  for (auto& f : out) {
    if (!merged.empty() && merged.back().factor == f.factor)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(std::move(f));
  }
  return merged;
}

inline std::vector<FpFactor> factor_mod(const RatPoly& f, std::uint64_t ell, std::uint64_t seed = 0) {
  FpPoly reduced(ell);
  try {
    reduced = FpPoly::reduce(f, ell);
  } catch (const std::domain_error&) {
    throw std::domain_error("factor_mod: coefficient denominator divisible by " + std::to_string(ell));
  }
  return factor_mod(reduced, seed);
}

/// Factor degrees sorted ascending, each repeated by multiplicity.
inline std::vector<int> splitting_type(const std::vector<FpFactor>& factors) {
  std::vector<int> degrees;
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.exponent; ++i) degrees.push_back(f.factor.degree());
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace siegel
