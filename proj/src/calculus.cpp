#include "lpeuler/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpeuler/ensemble.hpp"
#include "lpeuler/euler.hpp"

namespace lpeuler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_magnitude(const SpectralField& f) { return pointwise_magnitude(f).maxCoeff(); }

void require_divergence_free(const SpectralField& u) {
  if (u.components() != 2) throw DomainError("expected a 2-vector velocity");
  const double div = lp_norm(divergence(u), kInf);
  if (div > 1e-10 * tensor_linf(gradient(u))) {
    throw PreconditionError("advecting field is not divergence free");
  }
}

}  // namespace

Bony paraproduct(const SpectralField& f, const SpectralField& g, const DyadicPartition& part) {
  if (f.components() != 1 || g.components() != 1) throw DomainError("paraproduct expects scalars");
  const auto& grid = f.grid();
  const int jm = part.j_max();
  const int m = grid->padded_n();
  // Padded samples of the blocks, index j + 1.
  std::vector<RealGrid> df, dg, sf, sg;
  for (int j = -1; j <= jm; ++j) {
    df.push_back(padded_physical(delta_j(f, j, part)));
    dg.push_back(padded_physical(delta_j(g, j, part)));
  }
  // S_{j-2} for j = 1..jm, i.e. partial sums up to j - 2 >= -1.
  RealGrid accf = RealGrid::Zero(m, m), accg = RealGrid::Zero(m, m);
  RealGrid tfg = RealGrid::Zero(m, m), tgf = RealGrid::Zero(m, m), rem = RealGrid::Zero(m, m);
  for (int j = 1; j <= jm; ++j) {
    accf += df[j - 1];  // adds Delta_{j-2}
    accg += dg[j - 1];
    tgf += accg * df[j + 1];
    tfg += accf * dg[j + 1];
  }
  for (int j = -1; j <= jm; ++j) {
    for (int k = std::max(-1, j - 1); k <= std::min(jm, j + 1); ++k) rem += df[j + 1] * dg[k + 1];
  }
  return Bony{from_padded(grid, tfg), from_padded(grid, tgf), from_padded(grid, rem)};
}

double paraproduct_residual(const SpectralField& f, const SpectralField& g,
                            const DyadicPartition& part) {
  const Bony b = paraproduct(f, g, part);
  const SpectralField diff = product(f, g) - b.t_f_g - b.t_g_f - b.remainder;
  return lp_norm(diff, kInf);
}

void EstimateReport::add(const EstimateSample& s) {
  ++samples;
  lhs.push_back(s.lhs);
  rhs.push_back(s.rhs);
  rhs_bad.push_back(s.rhs_bad);
  rhs_good.push_back(s.rhs_good);
  if (!std::isfinite(s.lhs) || !std::isfinite(s.rhs) || s.lhs < 0.0 || s.rhs < 0.0) {
    ++violations;
    return;
  }
  if (s.rhs == 0.0) {
    if (s.lhs > 0.0) ++violations;
    return;
  }
  empirical_constant = std::max(empirical_constant, s.lhs / s.rhs);
}

double EstimateReport::ratio(std::size_t i) const {
  if (rhs.at(i) > 0.0) return lhs.at(i) / rhs.at(i);
  return lhs.at(i) == 0.0 ? 0.0 : kInf;
}

EstimateSample leibniz_sample(const SpectralField& f, const SpectralField& g, const SpaceSpec& spec,
                              const DyadicPartition& part) {
  if (!(spec.s() > 0.0)) throw DomainError("Leibniz rule needs s > 0");
  EstimateSample out;
  out.lhs = norm(product(f, g), spec, part);
  out.rhs = lp_norm(f, kInf) * norm(g, spec, part) + lp_norm(g, kInf) * norm(f, spec, part);
  return out;
}

std::map<int, SpectralField> commutators(const SpectralField& u, const SpectralField& omega,
                                         const DyadicPartition& part, bool homogeneous) {
  require_divergence_free(u);
  const SpectralField transported = advect(u, omega);
  std::map<int, SpectralField> out;
  for (int j : homogeneous ? part.hom_bands() : part.bands()) {
    const RealGrid& table = homogeneous ? part.hom_band(j) : part.band(j);
    out.emplace(j, advect(u, apply_multiplier(omega, table)) - apply_multiplier(transported, table));
  }
  return out;
}

SpectralField commutator(const SpectralField& u, const SpectralField& omega, int j,
                         const DyadicPartition& part, bool homogeneous) {
  require_divergence_free(u);
  const RealGrid& table = homogeneous ? part.hom_band(j) : part.band(j);
  return advect(u, apply_multiplier(omega, table)) - apply_multiplier(advect(u, omega), table);
}

EstimateSample commutator_besov_sample(const SpectralField& u, const SpectralField& omega,
                                       const SpaceSpec& spec_in, const DyadicPartition& part) {
  if (!(spec_in.s() >= -1.0)) throw DomainError("commutator estimate needs s >= -1");
  const SpaceSpec spec = spec_in.with_family(SpaceSpec::Family::besov).with_homogeneous(false);
  const auto rj = commutators(u, omega, part, false);
  std::vector<double> terms;
  for (const auto& [j, r] : rj) {
    terms.push_back(spec.band_weight(j) * lp_norm(delta_j(r, j, part).physical(), spec.p()));
  }
  EstimateSample out;
  out.lhs = lq_combine(terms, spec.q());
  const SpectralField grad_u = gradient(u);
  const double lead = tensor_linf(grad_u) * norm(omega, spec, part);
  out.rhs_bad = lead + sup_magnitude(gradient(omega)) * norm(grad_u, spec.with_s(spec.s() - 1.0), part);
  out.rhs_good = lead + lp_norm(omega, kInf) * norm(grad_u, spec, part);
  out.rhs = std::min(out.rhs_bad, out.rhs_good);
  return out;
}

EstimateSample commutator_tl_sample(const SpectralField& u, const SpectralField& omega,
                                    const SpaceSpec& spec_in, const DyadicPartition& part) {
  const SpaceSpec spec = spec_in.with_family(SpaceSpec::Family::triebel).with_homogeneous(false);
  const auto rj = commutators(u, omega, part, true);
  const int n = u.grid()->n();
  const double q = spec.q();
  RealGrid acc = RealGrid::Zero(n, n);
  for (const auto& [j, r] : rj) {
    const RealGrid block = r.physical().abs() * spec.band_weight(j);
    if (std::isinf(q)) {
      acc = acc.max(block);
    } else {
      acc += block.pow(q);
    }
  }
  if (!std::isinf(q)) acc = acc.pow(1.0 / q);
  EstimateSample out;
  out.lhs = lp_norm(acc, spec.p());
  const SpectralField grad_u = gradient(u);
  const double lead = tensor_linf(grad_u) * norm(omega, spec, part);
  out.rhs_bad = lead + sup_magnitude(gradient(omega)) * norm(u, spec, part);
  out.rhs_good = lead + lp_norm(omega, kInf) * norm(grad_u, spec, part);
  out.rhs = std::min(out.rhs_bad, out.rhs_good);
  return out;
}

std::tuple<double, double, double> RemainderExponents::target() const {
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  if (p1 < 1.0 || p2 < 1.0 || r1 < 1.0 || r2 < 1.0) throw ConfigError("exponents must be >= 1");
  const double ip = inv(p1) + inv(p2), ir = inv(r1) + inv(r2);
  if (ip > 1.0 + 1e-15) throw ConfigError("1/p1 + 1/p2 must not exceed 1");
  if (ir > 1.0 + 1e-15) throw ConfigError("1/r1 + 1/r2 must not exceed 1");
  if (s1 < 0.0 || s2 < 0.0 || !(s1 + s2 > 0.0)) throw ConfigError("need s1, s2 >= 0 and s1 + s2 > 0");
  return {s1 + s2, ip == 0.0 ? kInf : 1.0 / ip, ir == 0.0 ? kInf : 1.0 / ir};
}

RemainderExponents RemainderExponents::split(double s, double p, double r) {
  RemainderExponents e;
  e.s1 = e.s2 = 0.5 * s;
  e.p1 = e.p2 = 2.0 * p;
  e.r1 = e.r2 = 2.0 * r;
  return e;
}

EstimateSample remainder_sample(const SpectralField& f, const SpectralField& g,
                                const RemainderExponents& ex, const SlowlyVaryingWeight& weight,
                                const DyadicPartition& part) {
  const auto [s, p, r] = ex.target();
  using F = SpaceSpec::Family;
  const SpaceSpec target(F::besov, s, p, r, weight);
  const SpaceSpec left(F::besov, ex.s1, ex.p1, ex.r1, weight);
  const SpaceSpec right = SpaceSpec::classical(F::besov, ex.s2, ex.p2, ex.r2);
  EstimateSample out;
  out.lhs = norm(paraproduct(f, g, part).remainder, target, part);
  out.rhs = norm(f, left, part) * norm(g, right, part);
  return out;
}

Symbol Symbol::parse(const std::string& text) {
  Symbol sym;
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  if (name == "riesz" || name == "riesz_ij") {
    sym.kind = Kind::riesz;
  } else if (name == "grad_invlap_div") {
    sym.kind = Kind::grad_invlap_div;
  } else {
    throw ConfigError("unknown symbol '" + name + "'");
  }
  if (colon == std::string::npos) return sym;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("bad symbol item '" + item + "'");
    const std::string key = item.substr(0, eq);
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ConfigError("bad symbol value '" + item + "'");
    }
    if (key == "i") {
      sym.i = static_cast<int>(v);
    } else if (key == "j") {
      sym.j = static_cast<int>(v);
    } else if (key == "a") {
      sym.degree = v;
    } else {
      throw ConfigError("unknown symbol key '" + key + "'");
    }
  }
  if (sym.i < 0 || sym.i > 1 || sym.j < 0 || sym.j > 1) throw ConfigError("riesz indices must be 0 or 1");
  return sym;
}

SpectralField multiplier_apply(const Symbol& symbol, const SpectralField& f) {
  if (f.components() != 1) throw DomainError("multiplier expects a scalar field");
  if (std::abs(f.coeffs()(0, 0)) > 1e-12 * max_coeff(f)) {
    throw PreconditionError("singular symbol applied to a field with nonzero mean");
  }
  const auto& g = *f.grid();
  const RealGrid& k = g.kmag();
  RealGrid decay = (k > 0.0).select(k.pow(-symbol.degree), 0.0);
  if (symbol.kind == Symbol::Kind::riesz) {
    const RealGrid& ki = symbol.i == 0 ? g.kx() : g.ky();
    const RealGrid& kj = symbol.j == 0 ? g.kx() : g.ky();
    const RealGrid k2 = k.square();
    const RealGrid table = (k2 > 0.0).select(ki * kj / k2, 0.0) * decay * g.mask();
    return apply_multiplier(f, table);
  }
  SpectralField centred = f;
  centred.coeffs()(0, 0) = 0.0;
  return gradient(biot_savart(apply_multiplier(centred, decay)));
}

EstimateSample multiplier_sample(const Symbol& symbol, const SpectralField& f, const SpaceSpec& spec,
                                 const DyadicPartition& part) {
  const SpaceSpec hom = spec.with_homogeneous(true);
  EstimateSample out;
  out.lhs = norm(multiplier_apply(symbol, f), hom, part);
  out.rhs = norm(f, hom.with_s(spec.s() - symbol.degree), part);
  return out;
}

namespace {

// Minimal-image distance of grid offset (i, j) from the origin.
double wrapped_distance(int i, int j, int n, double dx) {
  const int a = std::min(i, n - i), b = std::min(j, n - j);
  return dx * std::hypot(a, b);
}

}  // namespace

MaximalOperator::MaximalOperator(GridPtr grid, int radii) : grid_(std::move(grid)) {
  if (radii < 2) throw DomainError("maximal operator needs at least two radii");
  const int n = grid_->n();
  const double dx = grid_->dx(), rmax = 0.5 * grid_->l();
  RealGrid dist(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist(i, j) = wrapped_distance(i, j, n, dx);
  }
  for (int k = 0; k < radii; ++k) {
    const double r = dx * std::pow(rmax / dx, static_cast<double>(k) / (radii - 1));
    radii_.push_back(r);
    const RealGrid disc = (dist <= r * (1.0 + 1e-12)).cast<double>();
    // Circular convolution with the normalized disc: coefficient product
    // scaled by n^2 under the 1/n^2 forward normalization.
    kernels_.push_back(fft::forward(disc / disc.sum()) * static_cast<double>(n) * n);
  }
}

RealGrid MaximalOperator::operator()(const RealGrid& f) const {
  const int n = grid_->n();
  if (f.rows() != n || f.cols() != n) throw DomainError("maximal operator grid mismatch");
  const CoeffGrid fh = fft::forward(f.abs());
  RealGrid best = RealGrid::Zero(n, n);
  for (const auto& k : kernels_) best = best.max(fft::backward(fh * k, n));
  return best;
}

RealGrid maximal_function(const SpectralField& f) {
  if (f.components() != 1) throw DomainError("maximal function expects a scalar field");
  return MaximalOperator(f.grid())(f.physical());
}

double radial_majorant_mass(const DyadicPartition& part, int j) {
  const auto& g = *part.grid();
  const int n = g.n();
  // Delta_j f = K_j * f with K_j the inverse transform of the table / n^2.
  const RealGrid kernel = fft::backward(part.band(j).cast<Complex>() / (double(n) * n), n).abs();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) pts.emplace_back(wrapped_distance(a, b, n, g.dx()), kernel(a, b));
  }
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  double running = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < pts.size();) {
    // Points at equal distance share the majorant value.
    std::size_t e = i;
    double level = running;
    while (e < pts.size() && pts[e].first == pts[i].first) level = std::max(level, pts[e++].second);
    running = level;
    mass += running * static_cast<double>(e - i);
    i = e;
  }
  return mass;
}

double convolution_bound_ratio(const SpectralField& f, const DyadicPartition& part,
                               const MaximalOperator& maximal) {
  const int n = f.grid()->n();
  RealGrid sup = RealGrid::Zero(n, n);
  double a = 0.0;
  for (int j : part.bands()) {
    sup = sup.max(delta_j(f, j, part).physical().abs());
    a = std::max(a, radial_majorant_mass(part, j));
  }
  const RealGrid mf = maximal(f.physical());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < sup.size(); ++i) {
    if (mf(i) > 0.0) {
      worst = std::max(worst, sup(i) / (a * mf(i)));
    } else if (sup(i) > 0.0) {
      return kInf;
    }
  }
  return worst;
}

EstimateSample fefferman_stein_sample(const SpectralField& f, double p, double q,
                                      const DyadicPartition& part, const MaximalOperator& maximal) {
  const int n = f.grid()->n();
  RealGrid lhs = RealGrid::Zero(n, n), rhs = RealGrid::Zero(n, n);
  for (int j : part.bands()) {
    const RealGrid block = delta_j(f, j, part).physical().abs();
    const RealGrid mb = maximal(block);
    if (std::isinf(q)) {
      lhs = lhs.max(mb);
      rhs = rhs.max(block);
    } else {
      lhs += mb.pow(q);
      rhs += block.pow(q);
    }
  }
  if (!std::isinf(q)) {
    lhs = lhs.pow(1.0 / q);
    rhs = rhs.pow(1.0 / q);
  }
  return EstimateSample{lp_norm(lhs, p), lp_norm(rhs, p)};
}

TlEmbeddingSample tl_first_order_embedding(const SpectralField& f, const SpaceSpec& spec_in,
                                           const DyadicPartition& part) {
  const SpaceSpec spec = spec_in.with_family(SpaceSpec::Family::triebel).with_homogeneous(false);
  if (!(spec.s() > 1.0)) throw DomainError("first-order embedding needs s > 1");
  std::vector<double> a;
  for (int k : part.bands()) {
    a.push_back(std::pow(2.0, k * (1.0 - spec.s())) / spec.weight()(std::ldexp(1.0, k)));
  }
  TlEmbeddingSample out;
  const double q = spec.q();
  if (q <= 2.0) {
    out.constant = *std::max_element(a.begin(), a.end());
  } else {
    out.constant = lq_combine(a, std::isinf(q) ? 2.0 : 2.0 * q / (q - 2.0));
  }
  out.lhs = norm(f, SpaceSpec::classical(SpaceSpec::Family::triebel, 1.0, spec.p(), 2.0), part);
  out.norm = norm(f, spec, part);
  return out;
}

double tl_bernstein_ratio(const SpectralField& f, int j, const SpaceSpec& spec_in,
                          const DyadicPartition& part) {
  const SpaceSpec spec = spec_in.with_family(SpaceSpec::Family::triebel).with_homogeneous(true);
  const double rhs = std::ldexp(1.0, -j) * norm(f, spec, part);
  if (rhs == 0.0) throw DomainError("zero field: Bernstein ratio undefined");
  return norm(delta_j_homogeneous(f, j, part), spec.with_s(spec.s() - 1.0), part) / rhs;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"paraproduct", "leibniz",   "commutator-b",
                                              "commutator-tl", "remainder", "multiplier",
                                              "maximal",     "embedding", "bernstein"};
  return names;
}

std::string default_space(const std::string& suite) {
  if (suite == "commutator-tl") return "F:s=2,p=2,q=2";
  if (suite == "remainder") return "B:s=1,p=2,q=2";
  if (suite == "multiplier") return "F:s=1,p=2,q=2,hom";
  if (suite == "maximal") return "F:s=0,p=2,q=2";
  return "B:s=2,p=2,q=2";
}

double effective_slope(const SuiteConfig& cfg, const SpaceSpec& spec) {
  if (cfg.slope > 0.0) return cfg.slope;
  return cfg.suite == "embedding" ? spec.s() + 2.0 : 2.0;
}

EstimateReport run_suite(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
    throw ConfigError("unknown suite '" + cfg.suite + "'");
  }
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  const GridPtr grid = FrequencyGrid::make(cfg.grid_n);
  const DyadicPartition part(grid);
  const SlowlyVaryingWeight weight = SlowlyVaryingWeight::parse(cfg.weight);
  const SpaceSpec spec =
      SpaceSpec::parse(cfg.space.empty() ? default_space(cfg.suite) : cfg.space, weight);
  const Symbol symbol = Symbol::parse(cfg.symbol);
  std::unique_ptr<MaximalOperator> maximal;
  if (cfg.suite == "maximal") maximal = std::make_unique<MaximalOperator>(grid);
  if (cfg.suite == "remainder") (void)RemainderExponents::split(spec.s(), spec.p(), spec.q()).target();

  RandomFieldOptions fo, go;
  fo.slope = go.slope = effective_slope(cfg, spec);
  go.stream = 1;
  std::vector<EstimateSample> rows(static_cast<std::size_t>(cfg.samples));
  parallel_for(rows.size(), [&](std::size_t i) {
    const SpectralField f = random_field(grid, cfg.seed, i, fo);
    const SpectralField g = random_field(grid, cfg.seed, i, go);
    EstimateSample& s = rows[i];
    const std::string& suite = cfg.suite;
    if (suite == "paraproduct") {
      s.lhs = paraproduct_residual(f, g, part);
      s.rhs = lp_norm(f, kInf) * lp_norm(g, kInf);
    } else if (suite == "leibniz") {
      s = leibniz_sample(f, g, spec, part);
    } else if (suite == "commutator-b") {
      const SpectralField u = biot_savart(f);
      s = commutator_besov_sample(u, f, spec, part);
    } else if (suite == "commutator-tl") {
      const SpectralField u = biot_savart(f);
      s = commutator_tl_sample(u, f, spec, part);
    } else if (suite == "remainder") {
      s = remainder_sample(f, g, RemainderExponents::split(spec.s(), spec.p(), spec.q()), weight, part);
    } else if (suite == "multiplier") {
      s = multiplier_sample(symbol, f, spec, part);
    } else if (suite == "maximal") {
      s = fefferman_stein_sample(f, spec.p(), spec.q(), part, *maximal);
    } else if (suite == "embedding") {
      const EmbeddingCheck e = verify_embedding(f, spec, part);
      s.lhs = e.lhs;
      s.rhs = e.rhs;
    } else {  // bernstein: spread of first-derivative band ratios over clean bands
      double lo = kInf, hi = 0.0;
      for (int j = std::max(0, part.j_min()); j <= part.j_clean(); ++j) {
        const double r = bernstein_ratio(f, j, 1, kInf, kInf, part);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      s.lhs = hi;
      s.rhs = lo;
    }
  });
  EstimateReport report;
  report.estimate_id = cfg.suite + " " + (cfg.suite == "bernstein" || cfg.suite == "paraproduct"
                                              ? std::string("n=") + std::to_string(cfg.grid_n)
                                              : spec.describe());
  for (const auto& s : rows) report.add(s);
  return report;
}

bool suite_violated(const EstimateReport& report, const std::string& suite) {
  if (report.violations > 0) return true;
  if (suite == "paraproduct") return report.empirical_constant > 1e-10;
  if (suite == "embedding") return report.empirical_constant > 1.0 + 1e-12;
  if (suite == "bernstein") return report.empirical_constant >= 10.0;
  return false;
}

std::map<int, double> resolution_sweep(SuiteConfig cfg, const std::vector<int>& sizes) {
  std::map<int, double> out;
  for (int n : sizes) {
    cfg.grid_n = n;
    out[n] = run_suite(cfg).empirical_constant;
  }
  return out;
}

}  // namespace lpeuler
