#pragma once

#include <siegel/exact/factor.hpp>

#include <cstdint>
#include <limits>

namespace siegel {

enum class DpVariant {
  factorization,  // a^2/4 - b + 2 p^(2k-3), forced by the standard factorization
  printed,        // -3/4 a^2 + a_(p^2) + p^(2k-4) + p^(2k-3)
};

inline const char* to_string(DpVariant v) { return v == DpVariant::factorization ? "factorization" : "printed"; }

struct Config {
  FactorConfig factor;
  std::uint64_t ell_max = 1000;  // upper end of the adjudicated range
  bool serre_mode = false;
  DpVariant dp_variant = DpVariant::factorization;
  std::uint64_t witness_bound = 10'000;
  std::uint64_t seed = 0x5eed;

  [[nodiscard]] FactorConfig factoring() const {
    FactorConfig f = factor;
    f.seed = seed;
    return f;
  }
};

}  // namespace siegel
