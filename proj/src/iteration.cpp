#include "lpeuler/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace lpeuler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A fitted constant that is not positive is replaced by this floor: the a
// priori bound holds for every larger constant as well.
constexpr double kConstantFloor = 1e-6;

// Increments below this fraction of ||u0|| are rounding noise; ratios against
// them are not meaningful.
constexpr double kDeltaFloor = 1e-10;

long step_count(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw ConfigError("need dt > 0 and a positive horizon");
  return std::max(1L, std::lround(std::ceil(horizon / dt - 1e-9)));
}

void mask_in_place(SpectralField& f) {
  for (int c = 0; c < f.components(); ++c) f.coeffs(c) *= f.grid()->mask().cast<Complex>();
}

}  // namespace

double t0(double c, double u0_norm) {
  if (!(c > 0.0)) throw DomainError("t0 needs a positive constant");
  if (c >= 1.25) throw ConstantTooLargeError("t0 needs C < 5/4 (got " + std::to_string(c) + ")");
  if (u0_norm < 0.0) throw DomainError("norm must be non-negative");
  if (u0_norm == 0.0) return kInf;
  return std::min((5.0 - 4.0 * c) / (16.0 * c * u0_norm), std::log(1.25) / (2.0 * u0_norm));
}

SpectralField VelocitySeries::at(std::size_t k, double theta) const {
  if (theta == 0.0) return u.at(k);
  if (theta == 1.0) return u.at(k + 1);
  const double t2 = theta * theta, t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + theta;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * u.at(k) + (h10 * dt) * dudt.at(k) + h01 * u.at(k + 1) + (h11 * dt) * dudt.at(k + 1);
}

namespace {

struct Forcing {
  SpectralField a;       // advecting velocity
  SpectralField grad_p;  // pressure gradient
};

Forcing forcing_at(const VelocitySeries& prev, std::size_t k, double theta) {
  Forcing f{prev.at(k, theta), {}};
  f.grad_p = gradient(pressure(f.a));
  return f;
}

SpectralField rhs(const Forcing& f, const SpectralField& u) {
  SpectralField out = advect(f.a, u) + f.grad_p;
  out *= -1.0;
  return out;
}

}  // namespace

LinearizedResult linearized_advance(const VelocitySeries& prev, const SpectralField& u_init, double dt,
                                    double horizon, double cfl) {
  if (u_init.components() != 2) throw DomainError("linearized advance expects a 2-vector");
  const long steps = step_count(horizon, dt);
  const double h = horizon / static_cast<double>(steps);
  const bool frozen = prev.u.empty();
  if (!frozen) {
    if (prev.u.size() != static_cast<std::size_t>(steps) + 1 || std::abs(prev.dt - h) > 1e-14 * h) {
      throw DomainError("advecting series does not match the time grid");
    }
  }
  LinearizedResult res;
  res.series.dt = h;
  SpectralField u = u_init;
  const SpectralField zero = SpectralField::zeros(u_init.grid(), 2);
  if (frozen) {
    // u^(0) = p^(0) = 0: the data does not move.
    res.series.u.assign(static_cast<std::size_t>(steps) + 1, u);
    res.series.dudt.assign(static_cast<std::size_t>(steps) + 1, zero);
    return res;
  }
  const double dx = u_init.grid()->dx();
  Forcing f0 = forcing_at(prev, 0, 0.0);
  for (long k = 0; k < steps; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double amax = pointwise_magnitude(f0.a).maxCoeff();
    if (h * amax > cfl * dx) {
      std::ostringstream os;
      os << "dt = " << h << " exceeds the CFL limit " << cfl * dx / amax;
      throw StepSizeError(os.str(), 0.9 * cfl * dx / amax);
    }
    const Forcing fh = forcing_at(prev, kk, 0.5);
    Forcing f1 = forcing_at(prev, kk + 1, 0.0);
    const SpectralField k1 = rhs(f0, u);
    const SpectralField k2 = rhs(fh, u + (0.5 * h) * k1);
    const SpectralField k3 = rhs(fh, u + (0.5 * h) * k2);
    const SpectralField k4 = rhs(f1, u + h * k3);
    res.series.u.push_back(u);
    res.series.dudt.push_back(leray_project(k1));
    SpectralField next = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    mask_in_place(next);
    const double div = lp_norm(divergence(next), kInf);
    const double grad = tensor_linf(gradient(next));
    if (!std::isfinite(div) || !std::isfinite(grad)) {
      throw NumericError("linearized iterate stopped being finite at step " + std::to_string(k));
    }
    res.divergence_residual = std::max(res.divergence_residual, div);
    if (grad > 0.0) res.residual_relative = std::max(res.residual_relative, div / grad);
    u = leray_project(next);
    f0 = std::move(f1);
  }
  res.series.u.push_back(u);
  res.series.dudt.push_back(leray_project(rhs(f0, u)));
  return res;
}

SpectralField initial_velocity(const IterationConfig& cfg) {
  const GridPtr grid = FrequencyGrid::make(cfg.grid_n, cfg.domain_l, cfg.dealias);
  return biot_savart(initial_vorticity(cfg.init, grid, cfg.seed));
}

double fit_apriori_constant(const IterationConfig& cfg, const SpectralField& u0) {
  EulerConfig ec;
  ec.grid_n = u0.grid()->n();
  ec.domain_l = u0.grid()->l();
  ec.dealias = u0.grid()->dealias();
  ec.dt = cfg.dt;
  ec.t_end = 1.0;
  ec.cfl = cfg.cfl;
  ec.space = cfg.space;
  ec.weight = cfg.weight;
  ec.sample_every = 1;
  return run(ec, curl(u0)).c_apriori;
}

namespace {

using IterateHook = std::function<void(int, const VelocitySeries&)>;

IterationResult iterate_impl(const SpectralField& u0, const IterationConfig& cfg,
                             const IterateHook& hook) {
  if (u0.components() != 2) throw DomainError("iteration expects a 2-vector initial velocity");
  if (cfg.n_max < 1) throw ConfigError("n_max must be >= 1");
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  const DyadicPartition part(u0.grid());
  const SpaceSpec spec = SpaceSpec::parse(cfg.space, SlowlyVaryingWeight::parse(cfg.weight));
  const SpaceSpec lower = spec.with_s(spec.s() - 1.0);

  IterationResult res;
  res.u0_norm = norm(u0, spec, part);
  res.horizon = cfg.horizon;
  if (cfg.enforce_t0) {
    double c = cfg.c_empirical ? *cfg.c_empirical : fit_apriori_constant(cfg, u0);
    if (c <= 0.0) c = kConstantFloor;
    res.c_used = c;
    if (c >= 1.25) {
      res.t0_applicable = false;
    } else if (res.u0_norm > 0.0) {
      res.horizon = t0(c, res.u0_norm);
    }
  }
  if (!(res.horizon > 0.0) || !std::isfinite(res.horizon)) {
    throw ConfigError("iteration needs a positive finite horizon (set T)");
  }

  VelocitySeries prev;
  double prev_delta = 0.0;
  const double floor = kDeltaFloor * res.u0_norm;
  for (int n = 1; n <= cfg.n_max; ++n) {
    LinearizedResult lin = linearized_advance(prev, s_n(u0, n, part), cfg.dt, res.horizon, cfg.cfl);
    IterateRecord rec;
    rec.n = n;
    rec.divergence_residual = lin.divergence_residual;
    rec.residual_relative = lin.residual_relative;
    const auto& cur = lin.series.u;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (k % static_cast<std::size_t>(cfg.sample_every) != 0 && k + 1 != cur.size()) continue;
      rec.sup_norm = std::max(rec.sup_norm, norm(cur[k], spec, part));
      const SpectralField diff = prev.u.empty() ? cur[k] : cur[k] - prev.u[k];
      rec.delta = std::max(rec.delta, norm(diff, lower, part));
    }
    if (n > 1 && prev_delta > floor) {
      rec.rho = rec.delta / prev_delta;
      res.rho = std::max(res.rho, rec.rho);
    }
    rec.uniform_ok = rec.sup_norm <= 2.0 * res.u0_norm * (1.0 + 1e-12);
    res.uniform_ok = res.uniform_ok && rec.uniform_ok;
    prev_delta = rec.delta;
    res.records.push_back(rec);
    if (hook) hook(n, lin.series);
    prev = std::move(lin.series);
  }
  return res;
}

}  // namespace

IterationResult iterate(const SpectralField& u0, const IterationConfig& cfg) {
  return iterate_impl(u0, cfg, nullptr);
}

double convergence_vs_solver(const SpectralField& u0, const IterationConfig& cfg,
                             IterationResult* detail) {
  const DyadicPartition part(u0.grid());
  const SpaceSpec spec = SpaceSpec::parse(cfg.space, SlowlyVaryingWeight::parse(cfg.weight));
  const SpaceSpec lower = spec.with_s(spec.s() - 1.0);
  std::vector<SpectralField> euler_u;
  std::vector<double> gaps;
  IterationResult res = iterate_impl(u0, cfg, [&](int, const VelocitySeries& s) {
    if (euler_u.empty()) {
      EulerState st{curl(u0), 0.0};
      euler_u.push_back(biot_savart(st.omega));
      for (std::size_t k = 1; k < s.u.size(); ++k) {
        st = step(st, s.dt, cfg.cfl);
        euler_u.push_back(biot_savart(st.omega));
      }
    }
    double gap = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      if (k % static_cast<std::size_t>(cfg.sample_every) != 0 && k + 1 != s.u.size()) continue;
      gap = std::max(gap, norm(s.u[k] - euler_u[k], lower, part));
    }
    gaps.push_back(gap);
  });
  res.solver_gap = gaps;
  const double out = gaps.back();
  if (detail) *detail = std::move(res);
  return out;
}

}  // namespace lpeuler
