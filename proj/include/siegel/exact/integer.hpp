#pragma once

// Integers, rationals and word-size modular helpers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace siegel {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Integer ipow(unsigned long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline Integer iabs(const Integer& n) { return n < 0 ? Integer(-n) : n; }

inline Integer igcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool divides(const Integer& d, const Integer& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool divides(std::uint64_t d, const Integer& n) {
  return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0;
}

inline bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_rational_square(const Rational& q) {
  return is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

/// Accepts "[-+]digits" or "[-+]digits/digits" with a positive denominator.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  const std::string_view num_text = text.substr(0, slash);
  if (!valid_int(num_text, true)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string num_str(num_text);
  if (num_str[0] == '+') num_str.erase(0, 1);
  Integer num(num_str);
  Integer den = 1;
  if (slash != std::string_view::npos) {
    const std::string_view den_text = text.substr(slash + 1);
    if (!valid_int(den_text, false)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    den = Integer(std::string(den_text));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------------------
// word-size modular arithmetic; moduli are below 2^63

inline std::uint64_t mod_u64(const Integer& n, std::uint64_t m) {
  return mpz_fdiv_ui(n.get_mpz_t(), m);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("element not invertible modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

/// Reduces a rational modulo a prime; throws if the prime divides the denominator.
inline std::uint64_t reduce_mod(const Rational& q, std::uint64_t ell) {
  const std::uint64_t den = mod_u64(q.get_den(), ell);
  if (den == 0) throw std::domain_error("denominator divisible by " + std::to_string(ell));
  return mulmod(mod_u64(q.get_num(), ell), invmod(den, ell), ell);
}

// ---------------------------------------------------------------------------
// prime tables

/// Primes <= bound by the sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace detail {

/// Process-wide cache of small primes, grown on demand. Published tables are
/// immutable; growth swaps in a new table.
class PrimeCache {
 public:
  static PrimeCache& instance() {
    static PrimeCache cache;
    return cache;
  }

  std::shared_ptr<const std::vector<std::uint64_t>> at_least(std::uint64_t bound) {
    {
      std::shared_lock lock(mutex_);
      if (table_ && bound <= limit_) return table_;
    }
    std::unique_lock lock(mutex_);
    if (!table_ || bound > limit_) {
      limit_ = std::max<std::uint64_t>({bound, 2 * limit_, 1u << 16});
      table_ = std::make_shared<const std::vector<std::uint64_t>>(primes_up_to(limit_));
    }
    return table_;
  }

 private:
  std::shared_mutex mutex_;
  std::uint64_t limit_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> table_;
};

}  // namespace detail

/// A sorted prime table containing at least every prime <= bound (possibly more).
inline std::shared_ptr<const std::vector<std::uint64_t>> prime_table(std::uint64_t bound) {
  return detail::PrimeCache::instance().at_least(bound);
}

}  // namespace siegel
