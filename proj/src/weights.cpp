#include "lpeuler/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lpeuler/core.hpp"

namespace lpeuler {

namespace {

constexpr double kE = std::numbers::e;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ConfigError("trailing characters in " + what);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse " + what + ": '" + text + "'");
  }
}

// int_a^b f(u) du with relative tolerance tol; throws on non-convergence.
template <typename F>
double integrate_gk(F f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol, &error, &l1);
  if (!std::isfinite(value) || error > 100.0 * tol * std::max(l1, 1e-300)) {
    throw NumericError("quadrature did not converge");
  }
  return value;
}

}  // namespace

SlowlyVaryingWeight SlowlyVaryingWeight::log_power(double alpha) {
  SlowlyVaryingWeight w;
  w.family_ = Family::log_power;
  w.alpha_ = alpha;
  w.validate();
  return w;
}

SlowlyVaryingWeight SlowlyVaryingWeight::tabulated(std::vector<double> t, std::vector<double> psi) {
  SlowlyVaryingWeight w;
  w.family_ = Family::tabulated;
  w.t_ = std::move(t);
  w.psi_ = std::move(psi);
  w.validate();
  return w;
}

SlowlyVaryingWeight SlowlyVaryingWeight::constant(double value, double t_max) {
  return tabulated({0.0, t_max}, {value, value});
}

void SlowlyVaryingWeight::validate() const {
  if (family_ == Family::log_power) {
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
      throw ConfigError("log weight requires alpha > 0");
    }
    return;
  }
  if (t_.size() != psi_.size() || t_.size() < 2) {
    throw ConfigError("weight table needs at least two (t, psi) rows");
  }
  if (t_.front() != 0.0) throw ConfigError("weight table must start at t = 0");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(psi_[i])) {
      throw ConfigError("weight table contains non-finite values");
    }
    if (psi_[i] < 0.0) throw ConfigError("weight must be non-negative");
    if (i > 0) {
      if (!(t_[i] > t_[i - 1])) throw ConfigError("weight table t must be strictly increasing");
      if (psi_[i] < psi_[i - 1]) {
        throw ConfigError("weight must be non-decreasing (oscillating weights are not supported)");
      }
    }
  }
  // Piecewise-linear and non-decreasing, so checking t = 1 bounds [1, inf).
  if (!((*this)(1.0) > 0.0)) throw ConfigError("weight must be bounded away from zero on [1, inf)");
}

double SlowlyVaryingWeight::operator()(double t) const {
  if (!(t >= 0.0)) throw DomainError("weight evaluated at negative t");
  if (family_ == Family::log_power) {
    return std::pow(std::log(kE + t), alpha_) - 1.0;
  }
  if (t >= t_.back()) return psi_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin());
  const double t0 = t_[i - 1], t1 = t_[i];
  const double s = (t - t0) / (t1 - t0);
  return psi_[i - 1] + s * (psi_[i] - psi_[i - 1]);
}

std::string SlowlyVaryingWeight::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (family_ == Family::log_power) {
    os << "log:alpha=" << alpha_;
  } else {
    os << "table(" << t_.size() << " rows, t_max=" << t_.back() << ")";
  }
  return os.str();
}

SlowlyVaryingWeight SlowlyVaryingWeight::parse(const std::string& text) {
  const std::string s = trim(text);
  if (s.rfind("log:", 0) == 0) {
    const std::string rest = s.substr(4);
    if (rest.rfind("alpha=", 0) != 0) throw ConfigError("expected log:alpha=<float>");
    return log_power(parse_double(rest.substr(6), "alpha"));
  }
  if (s.rfind("table:", 0) == 0) {
    const std::string path = s.substr(6);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open weight table " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,psi") {
      throw ConfigError("weight table must begin with header 't,psi'");
    }
    std::vector<double> t, psi;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw ConfigError("malformed weight table row: " + line);
      t.push_back(parse_double(trim(line.substr(0, comma)), "t"));
      psi.push_back(parse_double(trim(line.substr(comma + 1)), "psi"));
    }
    return tabulated(std::move(t), std::move(psi));
  }
  throw ConfigError("unknown weight specification '" + s + "'");
}

double eval(const SlowlyVaryingWeight& w, double t) { return w(t); }

std::vector<double> slow_variation_defect(const SlowlyVaryingWeight& w, double lambda,
                                          const std::vector<double>& t_grid) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 1.0)) throw DomainError("slow variation defect needs t >= 1");
    const double base = w(t);
    if (base == 0.0) throw DomainError("weight vanishes at a grid point");
    out.push_back(std::abs(w(lambda * t) / base - 1.0));
  }
  return out;
}

KaramataRepresentation KaramataRepresentation::log_power_textbook(double alpha) {
  KaramataRepresentation rep;
  rep.a = kE - 1.0;
  rep.c_limit = 1.0;
  rep.c_of_t = [](double) { return 1.0; };
  rep.eps_of_t = [alpha](double s) { return alpha / std::log(kE + s); };
  return rep;
}

KaramataRepresentation KaramataRepresentation::log_power_exact(double alpha) {
  const auto psi = SlowlyVaryingWeight::log_power(alpha);
  KaramataRepresentation rep;
  rep.a = 1.0;
  rep.c_limit = psi(1.0);
  const double c = rep.c_limit;
  rep.c_of_t = [c](double) { return c; };
  rep.eps_of_t = [alpha](double s) {
    const double L = std::log(kE + s);
    const double La = std::pow(L, alpha);
    return s * alpha * (La / L) / ((kE + s) * (La - 1.0));
  };
  return rep;
}

double karamata_reconstruct(const KaramataRepresentation& rep, double t) {
  if (!(t >= rep.a)) throw DomainError("reconstruction needs t >= a");
  // s = e^u turns eps(s)/s ds into eps(e^u) du.
  const auto integrand = [&rep](double u) { return rep.eps_of_t(std::exp(u)); };
  const double integral = integrate_gk(integrand, std::log(rep.a), std::log(t), 1e-12);
  return rep.c_of_t(t) * std::exp(integral);
}

AdmissibilityIntegral admissibility_integral(const SlowlyVaryingWeight& w, double r,
                                             double t_max) {
  if (!(r >= 1.0)) throw DomainError("admissibility exponent r must be >= 1");
  if (!(t_max >= 2.0)) throw DomainError("t_max must be >= 2");
  AdmissibilityIntegral out;
  if (!(w(1.0) > 0.0)) {
    out.divergent = true;
    out.partial_integral = std::numeric_limits<double>::infinity();
    out.dyadic_sum = std::numeric_limits<double>::infinity();
    return out;
  }
  const auto integrand = [&w, r](double u) { return std::pow(w(std::exp(u)), -r); };
  // Split at table knots so piecewise-linear weights integrate cleanly.
  std::vector<double> cuts{0.0};
  if (w.family() == SlowlyVaryingWeight::Family::tabulated) {
    for (double tk : w.table_t()) {
      if (tk > 1.0 && tk < t_max) cuts.push_back(std::log(tk));
    }
  }
  cuts.push_back(std::log(t_max));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    out.partial_integral += integrate_gk(integrand, cuts[i], cuts[i + 1], 1e-10);
  }
  for (int j = 0; std::ldexp(1.0, j) <= t_max; ++j) {
    out.dyadic_sum += std::pow(w(std::ldexp(1.0, j)), -r);
  }
  return out;
}

Admissibility is_admissible(const SlowlyVaryingWeight& w, double r) {
  Admissibility out;
  if (!(r >= 1.0)) {
    out.diagnostic = "r must be >= 1";
    return out;
  }
  // Monotonicity and positivity on [1, inf) are construction invariants.
  if (std::isinf(r)) {
    out.admissible = w(0.5) > 0.0;
    out.diagnostic = out.admissible ? "r = inf: psi bounded below on the dyadic grid"
                                    : "psi(1/2) = 0";
    return out;
  }
  if (w.family() == SlowlyVaryingWeight::Family::log_power) {
    out.admissible = w.alpha() * r > 1.0;
    out.tail_exponent = w.alpha() * r;
    out.diagnostic = out.admissible ? "alpha > 1/r" : "alpha <= 1/r: int dt/(t psi^r) diverges";
    return out;
  }
  out.empirical = true;
  const int j_last = static_cast<int>(std::floor(std::log2(w.table_t().back())));
  const int j_first = std::max(2, j_last / 2);
  if (j_last - j_first + 1 < 4) {
    out.diagnostic = "table range too short for a tail test";
    return out;
  }
  // Least-squares slope of log(psi^{-r}(2^j)) against log j.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int j = j_first; j <= j_last; ++j) {
    const double x = std::log(static_cast<double>(j));
    const double y = -r * std::log(w(std::ldexp(1.0, j)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  out.tail_exponent = -slope;
  out.admissible = out.tail_exponent > 1.0;
  std::ostringstream os;
  os << "empirical: dyadic terms decay like j^-" << out.tail_exponent << " over j in [" << j_first
     << ", " << j_last << "]";
  out.diagnostic = os.str();
  return out;
}

double dyadic_tail_bound(const SlowlyVaryingWeight& w, double r, int j_last) {
  const auto adm = is_admissible(w, r);
  if (!adm.admissible || adm.empirical) return std::numeric_limits<double>::infinity();
  const double start = std::ldexp(1.0, j_last);
  // For non-decreasing psi, psi^{-r}(2^j) <= (1/ln 2) int_{2^{j-1}}^{2^j} dt/(t psi^r).
  const auto integrand = [&w, r](double v) { return std::pow(w(std::exp(v)), -r); };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  const double value = integrator.integrate(
      [&](double x) { return integrand(std::log(start) + x); }, 0.0,
      std::numeric_limits<double>::infinity(), 1e-10, &error);
  return (value + error) / std::numbers::ln2;
}

double dyadic_ratio_constant(const SlowlyVaryingWeight& w, int l, int j_lo, int j_hi) {
  double c = 0.0;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double base = w(std::ldexp(1.0, j));
    if (base == 0.0) throw DomainError("weight vanishes on the dyadic grid");
    c = std::max(c, w(std::ldexp(1.0, j + l)) / base);
  }
  return c;
}

}  // namespace lpeuler
