#pragma once

// Dense univariate polynomials over an exact field (in practice Rational).
// Coefficients are stored constant term first with no trailing zeros.

#include <siegel/exact/integer.hpp>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace siegel {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
  static Polynomial monomial(const T& c, std::size_t degree) {
    std::vector<T> v(degree + 1, T(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] bool is_constant() const { return coeffs_.size() <= 1; }
  [[nodiscard]] const std::vector<T>& coeffs() const { return coeffs_; }

  [[nodiscard]] T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  [[nodiscard]] const T& leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  [[nodiscard]] T operator()(const T& at) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  [[nodiscard]] Polynomial monic() const {
    if (is_zero()) return *this;
    const T lc = leading();
    std::vector<T> v(coeffs_);
    for (auto& c : v) c /= lc;
    return Polynomial(std::move(v));
  }

  /// p(x + shift)
  [[nodiscard]] Polynomial shifted(const T& shift) const {
    Polynomial result;
    const Polynomial lin{shift, T(1)};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) result = result * lin + constant(*it);
    return result;
  }

  /// x^deg * p(1/x), i.e. the coefficient sequence reversed over a fixed length.
  [[nodiscard]] Polynomial reversed(std::size_t length) const {
    std::vector<T> v(length, T(0));
    for (std::size_t i = 0; i < coeffs_.size() && i < length; ++i) v[length - 1 - i] = coeffs_[i];
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RatPoly = Polynomial<Rational>;

template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<T> rem(a.coeffs());
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<T>{}, a};
  std::vector<T> quot(static_cast<std::size_t>(a.degree() - db + 1), T(0));
  const T& lc = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const T q = rem[static_cast<std::size_t>(i)] / lc;
    if (q == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

template <class T>
Polynomial<T> operator%(const Polynomial<T>& a, const Polynomial<T>& b) {
  return divmod(a, b).second;
}

/// Monic gcd (zero if both inputs are zero).
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    Polynomial<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class T>
std::tuple<Polynomial<T>, Polynomial<T>, Polynomial<T>> xgcd(const Polynomial<T>& a, const Polynomial<T>& b) {
  Polynomial<T> r0 = a, r1 = b;
  Polynomial<T> s0 = Polynomial<T>::constant(T(1)), s1;
  Polynomial<T> t0, t1 = Polynomial<T>::constant(T(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const T inv = T(1) / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Resultant by the Euclidean remainder sequence:
/// Res(g, f) = lc(g)^(deg f - deg r) Res(g, r) with r = f mod g.
template <class T>
T resultant(Polynomial<T> f, Polynomial<T> g) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant of zero polynomial");
  T result(1);
  while (true) {
    const int m = f.degree();
    const int n = g.degree();
    if (n == 0) {
      T p(1);
      for (int i = 0; i < m; ++i) p *= g.leading();
      return result * p;
    }
    if (m == 0) {
      T p(1);
      for (int i = 0; i < n; ++i) p *= f.leading();
      return result * p;
    }
    // Res(f, g) = (-1)^(mn) Res(g, f)
    if ((m % 2 == 1) && (n % 2 == 1)) result = -result;
    Polynomial<T> r = f % g;
    if (r.is_zero()) return T(0);
    for (int i = 0; i < m - r.degree(); ++i) result *= g.leading();
    f = std::move(g);
    g = std::move(r);
  }
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f); degree-0 input has discriminant 1.
template <class T>
T discriminant(const Polynomial<T>& f) {
  if (f.is_zero()) throw std::domain_error("discriminant of zero polynomial");
  const int n = f.degree();
  if (n == 0) return T(1);
  if (n == 1) return T(1);
  T d = resultant(f, f.derivative()) / f.leading();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

template <class T>
bool is_squarefree(const Polynomial<T>& f) {
  return gcd(f, f.derivative()).degree() <= 0;
}

inline std::string to_string(const RatPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (i == 0 || mag != 1) out += to_string(mag);
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

inline RatPoly integer_poly(const std::vector<Integer>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c);
  return RatPoly(std::move(v));
}

}  // namespace siegel
