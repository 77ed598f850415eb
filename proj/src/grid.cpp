#include "lpeuler/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include <fftw3.h>

namespace lpeuler {

std::size_t worker_count() {
  if (const char* env = std::getenv("LPEULER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

FrequencyGrid::FrequencyGrid(int n, double l, bool dealias) : n_(n), l_(l), dealias_(dealias) {
  if (n < 16 || (n & (n - 1)) != 0) throw ConfigError("grid n must be a power of two >= 16");
  if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("domain period l must be positive");
  const int h = half();
  kx_.resize(n, h);
  ky_.resize(n, h);
  kmag_.resize(n, h);
  mask_.setZero(n, h);
  const double k0 = this->k0();
  const double limit2 = (n / 3.0) * (n / 3.0);
  for (int r = 0; r < n; ++r) {
    const int mx = mode_x(r);
    for (int c = 0; c < h; ++c) {
      const int my = mode_y(c);
      kx_(r, c) = k0 * mx;
      ky_(r, c) = k0 * my;
      kmag_(r, c) = k0 * std::hypot(double(mx), double(my));
      const bool nyquist = (mx == -n / 2) || (my == n / 2);
      bool keep = !nyquist;
      if (dealias) keep = keep && (double(mx) * mx + double(my) * my <= limit2);
      if (keep) {
        mask_(r, c) = 1.0;
        max_k_ = std::max(max_k_, kmag_(r, c));
      }
    }
  }
  cutoff_ = dealias ? k0 * n / 3.0 : max_k_;
}

std::shared_ptr<const FrequencyGrid> FrequencyGrid::make(int n, double l, bool dealias) {
  return std::make_shared<const FrequencyGrid>(n, l, dealias);
}

namespace fft {

namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plans are created once per size under a lock and executed through the
// new-array interface, which FFTW documents as thread-safe.
PlanPair plans_for(int m) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  const int h = m / 2 + 1;
  double* rbuf = fftw_alloc_real(static_cast<std::size_t>(m) * m);
  fftw_complex* cbuf = fftw_alloc_complex(static_cast<std::size_t>(m) * h);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c_2d(m, m, rbuf, cbuf, flags);
  p.c2r = fftw_plan_dft_c2r_2d(m, m, cbuf, rbuf, flags | FFTW_DESTROY_INPUT);
  fftw_free(rbuf);
  fftw_free(cbuf);
  cache.emplace(m, p);
  return p;
}

}  // namespace

CoeffGrid forward(const RealGrid& physical) {
  const int m = static_cast<int>(physical.rows());
  if (physical.cols() != m) throw DomainError("fft::forward expects a square array");
  RealGrid in = physical;  // FFTW takes a non-const pointer
  CoeffGrid out(m, m / 2 + 1);
  fftw_execute_dft_r2c(plans_for(m).r2c, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  out /= static_cast<double>(m) * m;
  return out;
}

RealGrid backward(const CoeffGrid& coeffs, int m) {
  if (coeffs.rows() != m || coeffs.cols() != m / 2 + 1) {
    throw DomainError("fft::backward size mismatch");
  }
  CoeffGrid in = coeffs;  // c2r overwrites its input
  RealGrid out(m, m);
  fftw_execute_dft_c2r(plans_for(m).c2r, reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  return out;
}

}  // namespace fft

}  // namespace lpeuler
