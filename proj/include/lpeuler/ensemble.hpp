#ifndef LPEULER_ENSEMBLE_HPP_
#define LPEULER_ENSEMBLE_HPP_

#include <cstdint>

#include "lpeuler/field.hpp"

namespace lpeuler {

/// Seeded random band-limited scalar fields.
///
/// Each mode's amplitude and phase come from a counter-based hash of
/// (seed, sample, stream, kx, ky), so the same seed produces the same low
/// modes on every grid size: a 64-point and a 256-point draw agree on all
/// modes both retain.
struct RandomFieldOptions {
  double slope = 2.0;          // |coefficient| ~ |xi|^-slope
  double band_limit = -1.0;    // max |k| in integer units; <= 0 means n/6
  bool mean_zero = true;
  std::uint64_t stream = 0;    // decorrelates several fields of one sample
};

SpectralField random_field(const GridPtr& grid, std::uint64_t seed, std::uint64_t sample,
                           const RandomFieldOptions& opts = {});

/// Uniform double in [0, 1) from a 64-bit key (splitmix64 finalizer).
double hash_uniform(std::uint64_t key);
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

}  // namespace lpeuler

#endif  // LPEULER_ENSEMBLE_HPP_
