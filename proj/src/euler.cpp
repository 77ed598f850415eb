#include "lpeuler/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "lpeuler/ensemble.hpp"
#include "lpeuler/io.hpp"
#include "lpeuler/spaces.hpp"

namespace lpeuler {

namespace {

const Complex kI{0.0, 1.0};

// Mean below this fraction of the largest coefficient counts as zero.
constexpr double kMeanTol = 1e-12;

void require_mean_zero(const SpectralField& omega) {
  if (std::abs(omega.coeffs()(0, 0)) > kMeanTol * max_coeff(omega)) {
    throw PreconditionError("vorticity must have zero mean");
  }
}

RealGrid inverse_k2(const FrequencyGrid& g) {
  RealGrid k2 = g.kmag().square();
  RealGrid inv = (k2 > 0.0).select(k2.inverse(), 0.0);
  inv(0, 0) = 0.0;
  return inv * g.mask();
}

void clean(SpectralField& f) {
  for (int c = 0; c < f.components(); ++c) {
    f.coeffs(c) *= f.grid()->mask().cast<Complex>();
    f.coeffs(c)(0, 0) = 0.0;
  }
}

bool finite(const SpectralField& f) {
  for (int c = 0; c < f.components(); ++c) {
    if (!f.coeffs(c).isFinite().all()) return false;
  }
  return true;
}

}  // namespace

SpectralField biot_savart(const SpectralField& omega) {
  if (omega.components() != 1) throw DomainError("Biot-Savart expects scalar vorticity");
  require_mean_zero(omega);
  const auto& g = *omega.grid();
  const CoeffGrid inv = inverse_k2(g).cast<Complex>();
  SpectralField u(omega.grid(), 2);
  u.coeffs(0) = kI * g.ky().cast<Complex>() * inv * omega.coeffs();
  u.coeffs(1) = -kI * g.kx().cast<Complex>() * inv * omega.coeffs();
  return u;
}

SpectralField advect(const SpectralField& a, const SpectralField& f) {
  if (a.components() != 2) throw DomainError("advecting field must be a 2-vector");
  const RealGrid ax = padded_physical(a, 0), ay = padded_physical(a, 1);
  std::vector<SpectralField> parts;
  for (int c = 0; c < f.components(); ++c) {
    const SpectralField fc = f.component(c);
    const RealGrid dx = padded_physical(derivative(fc, 0));
    const RealGrid dy = padded_physical(derivative(fc, 1));
    parts.push_back(from_padded(f.grid(), ax * dx + ay * dy));
  }
  return SpectralField::stack(parts);
}

SpectralField nonlinear_term(const SpectralField& omega) {
  SpectralField out = advect(biot_savart(omega), omega);
  out *= -1.0;
  out.coeffs()(0, 0) = 0.0;
  return out;
}

SpectralField pressure(const SpectralField& u) {
  if (u.components() != 2) throw DomainError("pressure expects a 2-vector field");
  const SpectralField grad = gradient(u);
  const double div = lp_norm(divergence(u), std::numeric_limits<double>::infinity());
  const double scale = tensor_linf(grad);
  if (div > 1e-10 * scale) throw PreconditionError("pressure needs a divergence-free velocity");
  // d_i u_j d_j u_i = (d_x u_x)^2 + 2 d_y u_x d_x u_y + (d_y u_y)^2
  const RealGrid xx = padded_physical(grad, 0), xy = padded_physical(grad, 1);
  const RealGrid yx = padded_physical(grad, 2), yy = padded_physical(grad, 3);
  SpectralField src = from_padded(u.grid(), xx.square() + 2.0 * xy * yx + yy.square());
  SpectralField p = apply_multiplier(src, inverse_k2(*u.grid()));
  p.coeffs()(0, 0) = 0.0;
  return p;
}

double cfl_limit(const SpectralField& omega, double cfl) {
  const double umax = pointwise_magnitude(biot_savart(omega)).maxCoeff();
  if (umax == 0.0) return std::numeric_limits<double>::infinity();
  return cfl * omega.grid()->dx() / umax;
}

EulerState step(const EulerState& state, double dt, double cfl) {
  const double limit = cfl_limit(state.omega, cfl);
  if (std::abs(dt) > limit) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the CFL limit " << limit;
    throw StepSizeError(os.str(), 0.9 * limit);
  }
  const SpectralField& w = state.omega;
  const SpectralField k1 = nonlinear_term(w);
  const SpectralField k2 = nonlinear_term(w + (0.5 * dt) * k1);
  const SpectralField k3 = nonlinear_term(w + (0.5 * dt) * k2);
  const SpectralField k4 = nonlinear_term(w + dt * k3);
  EulerState out{w + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), state.t + dt};
  clean(out.omega);
  return out;
}

namespace {

double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("bad value for " + key + ": '" + v + "'");
}

SpectralField taylor(const GridPtr& grid) {
  const int n = grid->n();
  const double k = grid->k0(), dx = grid->dx();
  RealGrid w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = std::sin(k * i * dx) * std::sin(k * j * dx);
  }
  return SpectralField::from_physical(grid, w);
}

// Double shear layer u_x(y) with a weak transverse perturbation, truncated to
// the retained modes.
SpectralField shear(const GridPtr& grid) {
  const int n = grid->n();
  const double l = grid->l(), dx = grid->dx(), k = grid->k0();
  const double width = l / 20.0;
  RealGrid w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double y = j * dx;
      const double a = std::cosh((y - 0.25 * l) / width), b = std::cosh((y - 0.75 * l) / width);
      // omega = -d_y u_x for u_x = tanh((y - l/4)/w) - tanh((y - 3l/4)/w) - 1
      const double dux = (1.0 / (a * a) - 1.0 / (b * b)) / width;
      w(i, j) = -dux + 0.05 * std::cos(k * i * dx);
    }
  }
  SpectralField out = SpectralField::from_physical(grid, w);
  out.coeffs()(0, 0) = 0.0;
  return out;
}

SpectralField random_vorticity(const std::string& args, const GridPtr& grid,
                               std::uint64_t default_seed) {
  RandomFieldOptions opts;
  std::uint64_t seed = default_seed;
  double amp = 1.0;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("bad random preset item '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "slope") {
      opts.slope = parse_number(key, value);
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(parse_number(key, value));
    } else if (key == "amp") {
      amp = parse_number(key, value);
    } else {
      throw ConfigError("unknown random preset key '" + key + "'");
    }
  }
  SpectralField w = random_field(grid, seed, 0, opts);
  const double rms = lp_norm(w, 2.0);
  if (rms > 0.0) w *= amp / rms;
  return w;
}

}  // namespace

SpectralField initial_vorticity(const std::string& preset, const GridPtr& grid,
                                std::uint64_t default_seed) {
  if (preset == "taylor") return taylor(grid);
  if (preset == "shear") return shear(grid);
  if (preset == "zero") return SpectralField::zeros(grid, 1);
  if (preset.rfind("random", 0) == 0) {
    const std::string rest = preset.substr(6);
    if (!rest.empty() && rest[0] != ':') throw ConfigError("bad preset '" + preset + "'");
    return random_vorticity(rest.empty() ? "" : rest.substr(1), grid, default_seed);
  }
  if (preset.rfind("file:", 0) == 0) {
    const StoredField stored = read_field(preset.substr(5));
    if (stored.n != grid->n() || std::abs(stored.l - grid->l()) > 1e-12 * grid->l()) {
      throw ConfigError("field file grid does not match the configured grid");
    }
    SpectralField f = SpectralField::from_physical(grid, stored.samples);
    if (f.components() == 2) f = curl(f);
    if (f.components() != 1) throw ConfigError("field file must hold vorticity or velocity");
    f.coeffs()(0, 0) = 0.0;
    return f;
  }
  throw ConfigError("unknown initial-data preset '" + preset + "'");
}

double apriori_rate(const SpectralField& u, const SpaceSpec& spec, const DyadicPartition& part) {
  if (u.components() != 2) throw DomainError("apriori_rate expects a 2-vector velocity");
  const double grad = tensor_linf(gradient(u));
  const double size = norm(u, spec, part);
  if (grad == 0.0 || size == 0.0) return 0.0;
  const SpectralField transported = advect(u, u) + gradient(pressure(u));
  const std::vector<int> js = spec.homogeneous() ? part.hom_bands() : part.bands();
  // Each component's blocks are transported by u up to the forcing, which
  // leaves their L^p norms unchanged; so d/dt of the component norm is at most
  // the norm of the forcing sequence, and the components combine in l^2.
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    std::map<int, RealGrid> forcing;
    for (int j : js) {
      const RealGrid& table = spec.homogeneous() ? part.hom_band(j) : part.band(j);
      const SpectralField block = apply_multiplier(u, table);
      const SpectralField f = advect(u, block.component(c)) - apply_multiplier(transported.component(c), table);
      forcing.emplace(j, f.physical());
    }
    const double k = block_sequence_norm(forcing, spec);
    acc += k * k;
  }
  return std::sqrt(acc) / (grad * size);
}

double band_gradient_constant(const SpectralField& omega, const DyadicPartition& part) {
  const SpectralField grad_u = gradient(biot_savart(omega));
  double out = 0.0;
  for (int j : part.hom_bands()) {
    const double w = lp_norm(delta_j_homogeneous(omega, j, part), std::numeric_limits<double>::infinity());
    if (w > 0.0) out = std::max(out, tensor_linf(delta_j_homogeneous(grad_u, j, part)) / w);
  }
  return out;
}

double global_bound(double c, double t, double b0, double lp0) {
  return c * b0 * (1.0 + c * t * lp0) * std::exp(c * t * b0);
}

namespace {

constexpr double kSlack = 1e-9;

// Smallest C >= 0 with value <= global_bound(C, ...), by bisection (the bound
// is increasing in C).
double solve_global_constant(double value, double t, double b0, double lp0) {
  if (value <= 0.0) return 0.0;
  if (b0 <= 0.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = 1.0;
  while (global_bound(hi, t, b0, lp0) < value) {
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (global_bound(mid, t, b0, lp0) < value ? lo : hi) = mid;
  }
  return hi;
}

bool leq(double a, double b) { return a <= b + kSlack * std::max(std::abs(b), 1e-300); }

}  // namespace

RunResult run(const EulerConfig& cfg) {
  const GridPtr grid = FrequencyGrid::make(cfg.grid_n, cfg.domain_l, cfg.dealias);
  return run(cfg, initial_vorticity(cfg.init, grid, cfg.seed));
}

RunResult run(const EulerConfig& cfg, const SpectralField& omega0) {
  if (!(cfg.dt > 0.0) || !(cfg.t_end >= 0.0)) throw ConfigError("need dt > 0 and t_end >= 0");
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  if (cfg.lp_exponents.empty()) throw ConfigError("lp_exponents must not be empty");
  if (!(cfg.fit_fraction > 0.0 && cfg.fit_fraction <= 1.0)) {
    throw ConfigError("fit_fraction must lie in (0, 1]");
  }
  const GridPtr grid = omega0.grid();
  const DyadicPartition part(grid);
  const SpaceSpec spec = SpaceSpec::parse(cfg.space, SlowlyVaryingWeight::parse(cfg.weight));
  constexpr double inf = std::numeric_limits<double>::infinity();

  const long steps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = steps > 0 ? cfg.t_end / steps : cfg.dt;

  RunResult res;
  EulerState state{omega0, 0.0};
  clean(state.omega);
  double grad_integral = 0.0, bkm_integral = 0.0;
  const double fit_end = cfg.fit_fraction * cfg.t_end;
  std::vector<double> window_rates, window_bands;

  auto record = [&](const EulerState& s, double grad_now, double bkm_now) {
    const SpectralField u = biot_savart(s.omega);
    DiagnosticsRecord r;
    r.t = s.t;
    const double u2 = lp_norm(u, 2.0), w2 = lp_norm(s.omega, 2.0);
    r.energy = 0.5 * u2 * u2;
    r.enstrophy = 0.5 * w2 * w2;
    for (double p : cfg.lp_exponents) r.lp_vorticity.push_back(lp_norm(s.omega, p));
    r.linf_vorticity = lp_norm(s.omega, inf);
    r.bkm_integrand = bkm_now;
    r.bkm_integral = bkm_integral;
    r.grad_u_linf = grad_now;
    r.grad_u_integral = grad_integral;
    r.space_norm = norm(u, spec, part);
    r.b0_inf1 = besov_0_inf_1(s.omega, part);
    if (s.t <= fit_end + 1e-12) {
      window_rates.push_back(r.space_norm > 0.0 ? apriori_rate(u, spec, part) : 0.0);
      window_bands.push_back(band_gradient_constant(s.omega, part));
    }
    res.records.push_back(std::move(r));
  };

  for (long k = 0;; ++k) {
    const double grad_now = tensor_linf(gradient(biot_savart(state.omega)));
    const double bkm_now = bkm_integrand(state.omega, part);
    if (k % cfg.sample_every == 0 || k == steps) record(state, grad_now, bkm_now);
    if (k == steps) break;
    EulerState next = step(state, dt, cfg.cfl);
    if (!finite(next.omega)) {
      throw SimulationAborted("non-finite vorticity at t = " + std::to_string(next.t), state);
    }
    // Left-endpoint sums on the step grid.
    grad_integral += dt * grad_now;
    bkm_integral += dt * bkm_now;
    state = std::move(next);
  }
  res.final_state = state;

  // Fit each constant on the initial window, then freeze it.
  auto& recs = res.records;
  res.fit_end = fit_end;
  const DiagnosticsRecord& first = recs.front();
  const double n0 = first.space_norm, b0 = first.b0_inf1, lp0 = first.lp_vorticity.front();
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (r.t > res.fit_end + 1e-12) break;
    if (r.grad_u_integral > 0.0 && n0 > 0.0 && r.space_norm > 0.0) {
      res.c_apriori_sharp =
          std::max(res.c_apriori_sharp, std::log(r.space_norm / n0) / r.grad_u_integral);
    }
    const double denom = lp0 + r.bkm_integrand;
    if (denom > 0.0) res.c_bkm_sharp = std::max(res.c_bkm_sharp, r.grad_u_linf / denom);
    res.c_apriori = std::max(res.c_apriori, window_rates[i]);
    res.c_bkm_chain = std::max(res.c_bkm_chain, window_bands[i]);
    res.c_global = std::max(res.c_global, solve_global_constant(r.b0_inf1, r.t, b0, lp0));
  }
  double sup_norm = 0.0;
  for (auto& r : recs) {
    r.apriori_bound = n0 * std::exp(res.c_apriori * r.grad_u_integral);
    r.bkm_bound = global_bound(res.c_global, r.t, b0, lp0);
    sup_norm = std::max(sup_norm, r.space_norm);
    if (r.t <= res.fit_end + 1e-12) continue;
    res.apriori_ok = res.apriori_ok && leq(r.space_norm, r.apriori_bound);
    res.bkm_chain_ok = res.bkm_chain_ok && leq(r.grad_u_linf, res.c_bkm_chain * (lp0 + r.bkm_integrand));
    res.global_ok = res.global_ok && leq(r.b0_inf1, r.bkm_bound);
  }
  const double horizon = recs.back().t;
  if (horizon > 0.0 && sup_norm > 0.0) {
    res.c_reverse = recs.back().bkm_integral / (horizon * sup_norm);
  }
  return res;
}

ConservationDrift conservation_check(const std::vector<DiagnosticsRecord>& series) {
  if (series.empty()) throw DomainError("empty diagnostics series");
  auto drift = [&](auto get) {
    const double q0 = get(series.front());
    double m = 0.0;
    for (const auto& r : series) {
      const double d = std::abs(get(r) - q0);
      m = std::max(m, q0 == 0.0 ? d : d / std::abs(q0));
    }
    return m;
  };
  ConservationDrift out;
  out.energy = drift([](const DiagnosticsRecord& r) { return r.energy; });
  out.enstrophy = drift([](const DiagnosticsRecord& r) { return r.enstrophy; });
  for (std::size_t i = 0; i < series.front().lp_vorticity.size(); ++i) {
    out.lp.push_back(drift([i](const DiagnosticsRecord& r) { return r.lp_vorticity.at(i); }));
  }
  return out;
}

}  // namespace lpeuler
