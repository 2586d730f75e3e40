#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "graphzeta/matrix.hpp"

namespace graphzeta {

/// Seeded generator whose draws are fixed by the mt19937_64 output sequence alone,
/// so sweeps are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  Complex complex(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    return {re, uniform(im_lo, im_hi)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace graphzeta
