#pragma once

// Number fields presented by a monic irreducible integer polynomial, elements
// on the power basis, places above unramified rational primes and the residue
// fields at those places.

#include <siegel/exact/factor.hpp>
#include <siegel/exact/fp_poly.hpp>
#include <siegel/exact/integer.hpp>
#include <siegel/exact/polynomial.hpp>

#include <bitset>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

/// min_poly rejected at field construction (not monic, zero discriminant,
/// reducible, or irreducibility could not be certified).
class FieldPolynomialError : public std::invalid_argument {
 public:
  enum class Kind { malformed, not_squarefree, reducible, uncertified };
  FieldPolynomialError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Places are only built for primes not dividing the polynomial discriminant.
class NearDiscriminantPrime : public std::domain_error {
 public:
  explicit NearDiscriminantPrime(std::uint64_t ell)
      : std::domain_error("prime " + std::to_string(ell) + " divides the polynomial discriminant (potentially ramified)"),
        ell_(ell) {}
  [[nodiscard]] std::uint64_t ell() const { return ell_; }

 private:
  std::uint64_t ell_;
};

class BadDenominator : public std::domain_error {
 public:
  explicit BadDenominator(std::uint64_t ell)
      : std::domain_error("bad denominator: " + std::to_string(ell) + " divides a coordinate denominator"), ell_(ell) {}
  [[nodiscard]] std::uint64_t ell() const { return ell_; }

 private:
  std::uint64_t ell_;
};

// ---------------------------------------------------------------------------
// irreducibility certification

struct IrreducibilityCertificate {
  bool irreducible = false;
  std::string evidence;
  std::optional<RatPoly> factor;  // a proper factor when reducible
};

namespace detail {

inline std::vector<Integer> signed_divisors(const Integer& n, const FactorConfig& cfg) {
  const Factorization fac = factor_int(n, cfg);
  if (!fac.complete()) throw FieldPolynomialError(FieldPolynomialError::Kind::uncertified, "could not factor constant term " + n.get_str());
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : fac.factors) {
    const std::size_t len = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < len; ++i) divs.push_back(divs[i] * pk);
    }
  }
  const std::size_t len = divs.size();
  for (std::size_t i = 0; i < len; ++i) divs.push_back(-divs[i]);
  return divs;
}

inline std::optional<RatPoly> integer_root_factor(const std::vector<Integer>& c, const FactorConfig& cfg) {
  const RatPoly f = integer_poly(c);
  if (c[0] == 0) return RatPoly{Rational(0), Rational(1)};
  for (const Integer& r : signed_divisors(c[0], cfg))
    if (f(Rational(r)) == 0) return RatPoly{Rational(-r), Rational(1)};
  return std::nullopt;
}

/// Monic quartic = (x^2 + a x + b)(x^2 + c x + d) over Z.
inline std::optional<RatPoly> quadratic_factor(const std::vector<Integer>& coef, const FactorConfig& cfg) {
  const Integer& c0 = coef[0];
  const Integer& c1 = coef[1];
  const Integer& c2 = coef[2];
  const Integer& c3 = coef[3];
  auto found = [](const Integer& a, const Integer& b) { return RatPoly{Rational(b), Rational(a), Rational(1)}; };
  for (const Integer& b : signed_divisors(c0, cfg)) {
    const Integer d = c0 / b;
    if (d != b) {
      const Integer num = c1 - b * c3;
      const Integer den = d - b;
      if (!divides(den, num)) continue;
      const Integer a = num / den;
      const Integer c = c3 - a;
      if (a * c + b + d == c2) return found(a, b);
    } else {
      if (c1 != b * c3) continue;
      const Integer disc = c3 * c3 - 4 * (c2 - 2 * b);
      if (!is_perfect_square(disc)) continue;
      const Integer s = isqrt(disc);
      if (((c3 + s) % 2) != 0) continue;
      return found((c3 + s) / 2, b);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Certifies irreducibility of a monic integer polynomial over Q by factor-degree
/// patterns modulo primes, falling back to integer-root and quadratic-factor
/// search for degree <= 4.
inline IrreducibilityCertificate certify_irreducible(const std::vector<Integer>& coeffs, std::uint64_t seed = 0) {
  const RatPoly f = integer_poly(coeffs);
  const int n = f.degree();
  IrreducibilityCertificate cert;
  if (n == 1) {
    cert.irreducible = true;
    cert.evidence = "linear";
    return cert;
  }
  const Integer disc = discriminant(f).get_num();
  constexpr int kMaxDegree = 63;
  if (n > kMaxDegree) throw FieldPolynomialError(FieldPolynomialError::Kind::uncertified, "degree too large");
  std::bitset<kMaxDegree + 1> achievable;
  achievable.set();
  int primes_used = 0;
  for (std::uint64_t ell : *prime_table(2000)) {
    if (ell > 2000) break;
    if (divides(ell, disc)) continue;
    const auto factors = factor_mod(f, ell, seed);
    if (factors.size() == 1) {
      cert.irreducible = true;
      cert.evidence = "irreducible modulo " + std::to_string(ell);
      return cert;
    }
    std::bitset<kMaxDegree + 1> sums;
    sums.set(0);
    for (const auto& fac : factors) sums |= sums << static_cast<std::size_t>(fac.factor.degree());
    achievable &= sums;
    ++primes_used;
    bool proper = false;
    for (int d = 1; d < n; ++d) proper = proper || achievable.test(static_cast<std::size_t>(d));
    if (primes_used >= 5 && !proper) {
      cert.irreducible = true;
      cert.evidence = "factor-degree patterns modulo " + std::to_string(primes_used) + " primes exclude every proper factor degree";
      return cert;
    }
    if (primes_used >= 40) break;
  }
  if (n > 4) throw FieldPolynomialError(FieldPolynomialError::Kind::uncertified, "irreducibility of degree " + std::to_string(n) + " polynomial could not be certified");
  FactorConfig cfg;
  cfg.trial_bound = 100'000;
  cfg.rho_iterations = 1'000'000;
  cfg.seed = seed;
  if (auto lin = detail::integer_root_factor(coeffs, cfg)) {
    cert.factor = lin;
    cert.evidence = "integer root";
    return cert;
  }
  if (n == 4) {
    if (auto quad = detail::quadratic_factor(coeffs, cfg)) {
      cert.factor = quad;
      cert.evidence = "integer quadratic factor";
      return cert;
    }
  }
  cert.irreducible = true;
  cert.evidence = n == 4 ? "no integer root and no integer quadratic factor" : "no integer root";
  return cert;
}

// ---------------------------------------------------------------------------

class FieldElement;

class NumberField {
 public:
  /// coeffs constant term first; must be monic of degree >= 1 and irreducible over Q.
  explicit NumberField(std::vector<Integer> coeffs, std::uint64_t seed = 0) {
    if (coeffs.size() < 2 || coeffs.back() != 1)
      throw FieldPolynomialError(FieldPolynomialError::Kind::malformed, "field polynomial must be monic of degree >= 1");
    auto data = std::make_shared<Data>();
    data->poly = integer_poly(coeffs);
    const Rational disc = discriminant(data->poly);
    if (disc == 0) throw FieldPolynomialError(FieldPolynomialError::Kind::not_squarefree, "field polynomial " + to_string(data->poly) + " has a repeated root");
    data->disc = disc.get_num();
    IrreducibilityCertificate cert = certify_irreducible(coeffs, seed);
    if (!cert.irreducible)
      throw FieldPolynomialError(FieldPolynomialError::Kind::reducible,
                                 "field polynomial " + to_string(data->poly) + " is reducible (factor " + to_string(*cert.factor) + ")");
    data->evidence = std::move(cert.evidence);
    data->coeffs = std::move(coeffs);
    data_ = std::move(data);
  }

  static NumberField rationals() { return NumberField({Integer(0), Integer(1)}); }

  [[nodiscard]] std::size_t degree() const { return data_->coeffs.size() - 1; }
  [[nodiscard]] const std::vector<Integer>& min_poly() const { return data_->coeffs; }
  [[nodiscard]] const RatPoly& min_poly_q() const { return data_->poly; }
  [[nodiscard]] const Integer& poly_disc() const { return data_->disc; }
  [[nodiscard]] const std::string& irreducibility_evidence() const { return data_->evidence; }

  [[nodiscard]] FieldElement element(std::vector<Rational> coords) const;
  [[nodiscard]] FieldElement from_rational(const Rational& q) const;
  [[nodiscard]] FieldElement generator() const;
  [[nodiscard]] FieldElement zero() const;

  friend bool operator==(const NumberField& a, const NumberField& b) {
    return a.data_ == b.data_ || a.data_->coeffs == b.data_->coeffs;
  }

 private:
  struct Data {
    std::vector<Integer> coeffs;
    RatPoly poly;
    Integer disc;
    std::string evidence;
  };
  std::shared_ptr<const Data> data_;
};

class FieldElement {
 public:
  FieldElement(NumberField field, std::vector<Rational> coords) : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.size() != field_.degree())
      throw std::invalid_argument("field element needs " + std::to_string(field_.degree()) + " coordinates, got " +
                                  std::to_string(coords_.size()));
    for (auto& c : coords_) c.canonicalize();
  }

  [[nodiscard]] const NumberField& field() const { return field_; }
  [[nodiscard]] const std::vector<Rational>& coords() const { return coords_; }
  [[nodiscard]] bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
  }
  [[nodiscard]] bool is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
  }
  [[nodiscard]] RatPoly as_poly() const { return RatPoly(coords_); }

  /// Least common multiple of the coordinate denominators.
  [[nodiscard]] Integer denominator() const {
    Integer l = 1;
    for (const auto& c : coords_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
  }

  FieldElement& operator+=(const FieldElement& o) {
    check(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    check(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  FieldElement& operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  FieldElement& operator*=(const FieldElement& o) {
    check(o);
    *this = from_poly(field_, (as_poly() * o.as_poly()) % field_.min_poly_q());
    return *this;
  }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator*(FieldElement a, const Rational& s) { return a *= s; }
  friend FieldElement operator*(const Rational& s, FieldElement a) { return a *= s; }
  friend FieldElement operator+(FieldElement a, const Rational& s) {
    a.coords_[0] += s;
    return a;
  }
  friend FieldElement operator-(FieldElement a, const Rational& s) {
    a.coords_[0] -= s;
    return a;
  }
  friend FieldElement operator-(FieldElement a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.coords_ == b.coords_;
  }

  [[nodiscard]] FieldElement pow(unsigned long e) const {
    FieldElement result = field_.from_rational(1);
    FieldElement base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  [[nodiscard]] FieldElement inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    auto [g, s, t] = xgcd(as_poly(), field_.min_poly_q());
    return from_poly(field_, s % field_.min_poly_q());
  }

  static FieldElement from_poly(const NumberField& field, const RatPoly& p) {
    std::vector<Rational> v(field.degree(), Rational(0));
    for (std::size_t i = 0; i < p.coeffs().size() && i < v.size(); ++i) v[i] = p.coeffs()[i];
    return FieldElement(field, std::move(v));
  }

 private:
  void check(const FieldElement& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("field elements from different fields");
  }

  NumberField field_;
  std::vector<Rational> coords_;
};

inline FieldElement NumberField::element(std::vector<Rational> coords) const { return FieldElement(*this, std::move(coords)); }

inline FieldElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> v(degree(), Rational(0));
  v[0] = q;
  return FieldElement(*this, std::move(v));
}

inline FieldElement NumberField::zero() const { return from_rational(0); }

inline FieldElement NumberField::generator() const {
  if (degree() == 1) return from_rational(-Rational(min_poly()[0]));
  std::vector<Rational> v(degree(), Rational(0));
  v[1] = 1;
  return FieldElement(*this, std::move(v));
}

inline std::string to_string(const FieldElement& e) {
  if (e.field().degree() == 1) return to_string(e.coords()[0]);
  return to_string(e.as_poly(), "a");
}

// ---------------------------------------------------------------------------
// characteristic polynomial and derived invariants

/// Characteristic polynomial of multiplication by e (Faddeev-LeVerrier on the
/// multiplication matrix).
inline RatPoly charpoly(const FieldElement& e) {
  const NumberField& K = e.field();
  const std::size_t n = K.degree();
  using Matrix = std::vector<std::vector<Rational>>;
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  FieldElement col = e;
  const FieldElement alpha = K.degree() == 1 ? K.from_rational(1) : K.generator();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col.coords()[i];
    if (j + 1 < n) col *= alpha;
  }
  auto mul = [n](const Matrix& a, const Matrix& b) {
    Matrix c(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
      }
    return c;
  };
  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[n] = 1;
  Matrix mk(n, std::vector<Rational>(n, Rational(0)));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = mul(m, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += coeffs[n - k + 1];
    mk = std::move(next);
    const Matrix amk = mul(m, mk);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk[i][i];
    coeffs[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return RatPoly(std::move(coeffs));
}

inline Rational norm(const FieldElement& e) {
  const RatPoly cp = charpoly(e);
  const Rational c0 = cp.coeff(0);
  return e.field().degree() % 2 == 0 ? c0 : Rational(-c0);
}

inline Rational trace(const FieldElement& e) { return -charpoly(e).coeff(e.field().degree() - 1); }

/// Discriminant of the characteristic polynomial; 1 over Q, 0 exactly when e
/// does not generate the field.
inline Rational element_discriminant(const FieldElement& e) { return discriminant(charpoly(e)); }

/// Q(e) = K, via squarefreeness of the characteristic polynomial.
inline bool is_generator(const FieldElement& e) { return is_squarefree(charpoly(e)); }

// ---------------------------------------------------------------------------
// places and residue fields

struct ResiduePlace {
  std::uint64_t ell = 0;
  FpPoly local_factor;  // monic irreducible factor of min_poly mod ell
  int residue_degree = 0;

  [[nodiscard]] Integer residue_field_order() const {
    return ipow(static_cast<unsigned long>(ell), static_cast<unsigned long>(residue_degree));
  }
};

struct Splitting {
  std::uint64_t ell;
  std::vector<ResiduePlace> places;
  std::vector<int> type;  // residue degrees ascending

  [[nodiscard]] bool inert() const { return places.size() == 1; }
};

inline Splitting places_above(const NumberField& K, std::uint64_t ell, std::uint64_t seed = 0) {
  if (!is_prime_u64(ell)) throw std::invalid_argument(std::to_string(ell) + " is not prime");
  if (divides(ell, K.poly_disc())) throw NearDiscriminantPrime(ell);
  Splitting s{ell, {}, {}};
  for (auto& f : factor_mod(K.min_poly_q(), ell, seed)) {
    const int r = f.factor.degree();
    s.places.push_back(ResiduePlace{ell, std::move(f.factor), r});
    s.type.push_back(r);
  }
  std::sort(s.type.begin(), s.type.end());
  return s;
}

/// Coordinate-wise reduction followed by reduction modulo the local factor.
inline FpPoly reduce_at_place(const FieldElement& e, const ResiduePlace& place) {
  std::vector<FpPoly::Coeff> v;
  v.reserve(e.coords().size());
  for (const auto& c : e.coords()) {
    const std::uint64_t den = mod_u64(c.get_den(), place.ell);
    if (den == 0) throw BadDenominator(place.ell);
    v.push_back(mulmod(mod_u64(c.get_num(), place.ell), invmod(den, place.ell), place.ell));
  }
  return FpPoly(place.ell, std::move(v)) % place.local_factor;
}

enum class SquareClass { zero, square, nonsquare };

inline const char* to_string(SquareClass s) {
  switch (s) {
    case SquareClass::zero: return "zero";
    case SquareClass::square: return "square";
    case SquareClass::nonsquare: return "nonsquare";
  }
  return "?";
}

/// Euler criterion in F_(ell^r): nonzero x is a square iff x^((q-1)/2) = 1.
inline SquareClass residue_square_test(const FpPoly& x, const ResiduePlace& place) {
  const FpPoly r = x % place.local_factor;
  if (r.is_zero()) return SquareClass::zero;
  if (place.ell == 2) return SquareClass::square;
  const Integer e = (place.residue_field_order() - 1) / 2;
  return powmod(r, e, place.local_factor).is_one() ? SquareClass::square : SquareClass::nonsquare;
}

/// Euler criterion modulo an odd prime.
inline SquareClass legendre(const Integer& x, std::uint64_t ell) {
  if (ell % 2 == 0 || !is_prime_u64(ell)) throw std::invalid_argument("Legendre symbol needs an odd prime modulus, got " + std::to_string(ell));
  const std::uint64_t r = mod_u64(x, ell);
  if (r == 0) return SquareClass::zero;
  return powmod(r, (ell - 1) / 2, ell) == 1 ? SquareClass::square : SquareClass::nonsquare;
}

inline SquareClass legendre(const Rational& x, std::uint64_t ell) {
  if (divides(ell, x.get_den())) throw BadDenominator(ell);
  return legendre(Integer(x.get_num() * x.get_den()), ell);
}

/// Norm from F_(ell^r) down to F_ell: x^((q-1)/(ell-1)).
inline std::uint64_t residue_norm(const FpPoly& x, const ResiduePlace& place) {
  const Integer e = (place.residue_field_order() - 1) / (place.ell - 1);
  const FpPoly n = powmod(x, e, place.local_factor);
  if (n.degree() > 0) throw std::logic_error("residue norm left the prime field");
  return n.coeff(0);
}

// ---------------------------------------------------------------------------
// primes dividing the polynomial discriminant

enum class DiscPrimeClass {
  ramified,           // certified ramified
  index,              // certified unramified: divides only the index [O_K : Z[alpha]]
  ramified_or_index,  // undecided by the local test
};

inline const char* to_string(DiscPrimeClass c) {
  switch (c) {
    case DiscPrimeClass::ramified: return "ramified";
    case DiscPrimeClass::index: return "index";
    case DiscPrimeClass::ramified_or_index: return "ramified-or-index";
  }
  return "?";
}

struct DiscPrimeReport {
  Integer ell;
  unsigned disc_valuation = 0;
  bool squarefree_mod_ell = false;
  std::optional<bool> ell_maximal;  // Dedekind criterion when evaluated
  DiscPrimeClass classification = DiscPrimeClass::ramified_or_index;
};

/// Dedekind's criterion decides whether Z[alpha] is ell-maximal; combined with
/// v_ell(disc f) = v_ell(d_K) + 2 v_ell(index) this settles most primes.
inline DiscPrimeReport classify_disc_prime(const NumberField& K, const Integer& ell, std::uint64_t seed = 0) {
  DiscPrimeReport rep;
  rep.ell = ell;
  Integer rest = K.poly_disc();
  while (rest != 0 && divides(ell, rest)) {
    rest /= ell;
    ++rep.disc_valuation;
  }
  if (rep.disc_valuation == 0) throw std::invalid_argument(ell.get_str() + " does not divide the polynomial discriminant");
  if (!mpz_fits_ulong_p(ell.get_mpz_t()) || ell.get_ui() >= (1ull << 62)) return rep;
  const std::uint64_t p = ell.get_ui();

  const auto factors = factor_mod(K.min_poly_q(), p, seed);
  rep.squarefree_mod_ell = std::all_of(factors.begin(), factors.end(), [](const FpFactor& f) { return f.exponent == 1; });
  RatPoly g = RatPoly::constant(1), h = RatPoly::constant(1);
  FpPoly g_bar = FpPoly::constant(p, 1), h_bar = FpPoly::constant(p, 1);
  for (const auto& f : factors) {
    std::vector<Rational> lift;
    for (auto c : f.factor.coeffs()) lift.emplace_back(static_cast<unsigned long>(c));
    const RatPoly gi(lift);
    g = g * gi;
    g_bar = g_bar * f.factor;
    for (unsigned k = 1; k < f.exponent; ++k) {
      h = h * gi;
      h_bar = h_bar * f.factor;
    }
  }
  const RatPoly big_f = (K.min_poly_q() - g * h) * Rational(Integer(1), ell);
  const FpPoly f_bar = FpPoly::reduce(big_f, p);
  const bool maximal = gcd(gcd(f_bar, g_bar), h_bar).degree() == 0;
  rep.ell_maximal = maximal;
  if (maximal) {
    rep.classification = DiscPrimeClass::ramified;
  } else if (rep.disc_valuation % 2 == 1) {
    rep.classification = DiscPrimeClass::ramified;
  } else if (rep.disc_valuation == 2) {
    rep.classification = DiscPrimeClass::index;
  }
  return rep;
}

}  // namespace siegel
