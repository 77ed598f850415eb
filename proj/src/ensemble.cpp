#include "lpeuler/ensemble.hpp"

#include <cmath>
#include <numbers>

namespace lpeuler {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t as_key(int v) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(v)); }

}  // namespace

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b)); }

double hash_uniform(std::uint64_t key) {
  return static_cast<double>(splitmix(key) >> 11) * 0x1.0p-53;
}

SpectralField random_field(const GridPtr& grid, std::uint64_t seed, std::uint64_t sample,
                           const RandomFieldOptions& opts) {
  const auto& g = *grid;
  const int n = g.n();
  const double limit = opts.band_limit > 0.0 ? opts.band_limit : n / 6.0;
  const std::uint64_t base = hash_combine(hash_combine(seed, sample), opts.stream);
  SpectralField f(grid, 1);
  CoeffGrid& c = f.coeffs();
  for (int r = 0; r < n; ++r) {
    const int mx = g.mode_x(r);
    for (int col = 0; col < g.half(); ++col) {
      const int my = g.mode_y(col);
      if (g.mask()(r, col) == 0.0) continue;
      if (double(mx) * mx + double(my) * my > limit * limit) continue;
      if (mx == 0 && my == 0) {
        if (!opts.mean_zero) c(r, col) = 2.0 * hash_uniform(hash_combine(base, 17)) - 1.0;
        continue;
      }
      // Canonical representative of the pair (k, -k) keeps Hermitian symmetry.
      const bool canonical = my > 0 || mx > 0;
      const int cx = canonical ? mx : -mx;
      const int cy = canonical ? my : -my;
      const std::uint64_t key = hash_combine(hash_combine(base, as_key(cx)), as_key(cy));
      const double amp = (0.5 + hash_uniform(key)) * std::pow(g.k0() * std::hypot(cx, cy), -opts.slope);
      const double phase = 2.0 * std::numbers::pi * hash_uniform(key ^ 0x5bd1e995ULL);
      const Complex v = std::polar(amp, phase);
      c(r, col) = canonical ? v : std::conj(v);
    }
  }
  return f;
}

}  // namespace lpeuler
