#pragma once

// Primality certification and integer factorization (trial division followed
// by Brent's variant of Pollard rho).

#include <siegel/exact/integer.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace siegel {

enum class Primality {
  composite,
  prime,           // deterministic witness set, n < 2^64
  probable_prime,  // 64 random strong-probable-prime rounds, n >= 2^64
};

namespace detail {

inline bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t base) {
  if (base % n == 0) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool strong_probable_prime(const Integer& n, const Integer& base) {
  const Integer n_minus_1 = n - 1;
  Integer d = n_minus_1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

}  // namespace detail

/// Witness set {2..37} is deterministic for all n < 3.3 * 10^24.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t a : kBases)
    if (!detail::strong_probable_prime_u64(n, a)) return false;
  return true;
}

inline Primality primality(const Integer& n, std::uint64_t seed = 0) {
  if (n < 2) return Primality::composite;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui()) ? Primality::prime : Primality::composite;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul})
    if (divides(p, n)) return Primality::composite;
  std::mt19937_64 rng(seed);
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  const Integer span = n - 3;
  for (int round = 0; round < 64; ++round) {
    const Integer base = gen.get_z_range(span) + 2;
    if (!detail::strong_probable_prime(n, base)) return Primality::composite;
  }
  return Primality::probable_prime;
}

inline bool is_prime(const Integer& n) { return primality(n) != Primality::composite; }

struct FactorConfig {
  std::uint64_t trial_bound = 10'000'000;
  std::uint64_t rho_iterations = 100'000'000;  // cap per cofactor
  std::uint64_t seed = 0x5eed;
};

struct Factorization {
  Integer input;
  std::map<Integer, unsigned> factors;
  /// Product of the parts that resisted rho within the effort cap; composite or unknown.
  std::optional<Integer> unfactored_cofactor;
  /// Primes certified only probabilistically (those >= 2^64).
  std::vector<Integer> probable_primes;

  [[nodiscard]] bool complete() const { return !unfactored_cofactor; }

  [[nodiscard]] Integer reassemble() const {
    Integer product = 1;
    for (const auto& [p, e] : factors) product *= ipow(p, e);
    if (unfactored_cofactor) product *= *unfactored_cofactor;
    return product;
  }

  [[nodiscard]] std::vector<Integer> primes() const {
    std::vector<Integer> out;
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
  }
};

namespace detail {

/// Brent's cycle finding with batched gcds. Returns a nontrivial divisor or
/// nullopt when the iteration budget runs out.
inline std::optional<Integer> pollard_brent(const Integer& n, std::uint64_t& budget, std::mt19937_64& rng) {
  if (n % 2 == 0) return Integer(2);
  constexpr std::uint64_t kBatch = 128;
  while (budget > 0) {
    const Integer c = Integer(static_cast<unsigned long>(rng() % 1'000'000 + 1));
    Integer y = Integer(static_cast<unsigned long>(rng() % 1'000'000 + 2)) % n;
    Integer x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    bool restart = false;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          q = q * iabs(x - y) % n;
        }
        g = igcd(q, n);
        k += steps;
        if (budget <= steps) {
          budget = 0;
          if (g == 1) return std::nullopt;
        } else {
          budget -= steps;
        }
      }
      r *= 2;
    }
    if (g == n) {
      // batch overshot; step back one at a time
      do {
        ys = (ys * ys + c) % n;
        g = igcd(iabs(x - ys), n);
      } while (g == 1);
      if (g == n) restart = true;
    }
    if (!restart) return g;
  }
  return std::nullopt;
}

}  // namespace detail

/// Factors |n|. Primes <= trial_bound come from trial division; larger parts
/// go through rho, and anything that resists is kept as the cofactor.
inline Factorization factor_int(const Integer& n, const FactorConfig& config = {}) {
  if (n == 0) throw std::domain_error("factor_int: cannot factor zero");
  Factorization out;
  out.input = n;
  Integer rest = iabs(n);

  const auto table = prime_table(config.trial_bound);
  Integer root = isqrt(rest);
  for (std::uint64_t p : *table) {
    if (p > config.trial_bound || cmp(root, static_cast<unsigned long>(p)) < 0) break;
    if (!divides(p, rest)) continue;
    unsigned e = 0;
    while (divides(p, rest)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out.factors[Integer(static_cast<unsigned long>(p))] += e;
    root = isqrt(rest);
  }
  if (rest == 1) return out;

  std::mt19937_64 rng(config.seed);
  std::vector<Integer> pending{rest};
  Integer cofactor = 1;
  while (!pending.empty()) {
    Integer m = pending.back();
    pending.pop_back();
    if (m == 1) continue;
    const Primality verdict = primality(m, rng());
    if (verdict != Primality::composite) {
      out.factors[m] += 1;
      if (verdict == Primality::probable_prime) out.probable_primes.push_back(m);
      continue;
    }
    if (is_perfect_square(m)) {
      const Integer half = isqrt(m);
      pending.push_back(half);
      pending.push_back(half);
      continue;
    }
    std::uint64_t budget = config.rho_iterations;
    if (auto d = detail::pollard_brent(m, budget, rng)) {
      pending.push_back(*d);
      pending.push_back(m / *d);
    } else {
      cofactor *= m;
    }
  }
  if (cofactor != 1) out.unfactored_cofactor = cofactor;
  std::sort(out.probable_primes.begin(), out.probable_primes.end());
  out.probable_primes.erase(std::unique(out.probable_primes.begin(), out.probable_primes.end()), out.probable_primes.end());
  return out;
}

}  // namespace siegel
