#include "lpeuler/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lpeuler/euler.hpp"

namespace lpeuler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate(double x) {
  if (std::isinf(x)) return 1.0;
  if (x == 1.0) return kInf;
  return x / (x - 1.0);
}

double parse_exponent(const std::string& v, const std::string& key) {
  if (v == "inf" || v == "infinity") return kInf;
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw ConfigError("bad value for " + key);
    return d;
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse " + key + "='" + v + "'");
  }
}

}  // namespace

SpaceSpec::SpaceSpec(Family family, double s, double p, double q, SlowlyVaryingWeight weight,
                     bool homogeneous)
    : family_(family), s_(s), p_(p), q_(q), weight_(std::move(weight)), homogeneous_(homogeneous) {
  validate();
  p_conj_ = conjugate(p_);
  q_conj_ = conjugate(q_);
}

void SpaceSpec::validate() const {
  if (!std::isfinite(s_)) throw ConfigError("smoothness s must be finite");
  if (!(p_ >= 1.0)) throw ConfigError("integrability p must be >= 1");
  if (!(q_ >= 1.0)) throw ConfigError("summability q must be >= 1");
  if (family_ == Family::triebel && std::isinf(p_)) {
    throw ConfigError("Triebel-Lizorkin norms with p = inf are not supported");
  }
}

SpaceSpec SpaceSpec::classical(Family family, double s, double p, double q, bool homogeneous) {
  SpaceSpec out(family, s, p, q, SlowlyVaryingWeight::log_power(1.0), homogeneous);
  out.weighted_ = false;
  return out;
}

SpaceSpec SpaceSpec::parse(const std::string& text, SlowlyVaryingWeight weight) {
  if (text.size() < 2 || text[1] != ':' || (text[0] != 'B' && text[0] != 'F')) {
    throw ConfigError("space must look like B:s=..,p=..,q=.. or F:...");
  }
  const Family family = text[0] == 'B' ? Family::besov : Family::triebel;
  double s = std::nan(""), p = std::nan(""), q = std::nan("");
  bool hom = false;
  std::stringstream ss(text.substr(2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "hom") {
      hom = true;
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("bad space item '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "s") {
      s = parse_exponent(value, key);
    } else if (key == "p") {
      p = parse_exponent(value, key);
    } else if (key == "q") {
      q = parse_exponent(value, key);
    } else {
      throw ConfigError("unknown space key '" + key + "'");
    }
  }
  if (std::isnan(s) || std::isnan(p) || std::isnan(q)) {
    throw ConfigError("space needs s, p and q");
  }
  if (!(p > 1.0)) throw ConfigError("space integrability p must lie in (1, inf]");
  return SpaceSpec(family, s, p, q, std::move(weight), hom);
}

SpaceSpec SpaceSpec::with_s(double s) const {
  SpaceSpec out = *this;
  out.s_ = s;
  return out;
}

SpaceSpec SpaceSpec::with_homogeneous(bool hom) const {
  SpaceSpec out = *this;
  out.homogeneous_ = hom;
  return out;
}

SpaceSpec SpaceSpec::with_family(Family family) const {
  SpaceSpec out = *this;
  out.family_ = family;
  out.validate();
  return out;
}

SpaceSpec SpaceSpec::with_pq(double p, double q) const {
  SpaceSpec out = *this;
  out.p_ = p;
  out.q_ = q;
  out.validate();
  out.p_conj_ = conjugate(p);
  out.q_conj_ = conjugate(q);
  return out;
}

SpaceSpec SpaceSpec::unweighted() const {
  SpaceSpec out = *this;
  out.weighted_ = false;
  return out;
}

double SpaceSpec::band_weight(int j) const {
  const double w = std::pow(2.0, j * s_);
  return weighted_ ? w * weight_(std::ldexp(1.0, j)) : w;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (family_ == Family::besov ? "B" : "F") << ":s=" << s_ << ",p=" << p_ << ",q=" << q_;
  if (homogeneous_) os << ",hom";
  os << " weight=" << (weighted_ ? weight_.describe() : std::string("none"));
  return os.str();
}

double lq_combine(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, std::abs(t));
    return m;
  }
  double acc = 0.0;
  for (double t : terms) acc += std::pow(std::abs(t), q);
  return std::pow(acc, 1.0 / q);
}

double block_sequence_norm(const std::map<int, RealGrid>& blocks, const SpaceSpec& spec) {
  if (blocks.empty()) throw ConfigError("empty band range");
  if (spec.family() == SpaceSpec::Family::besov) {
    std::vector<double> terms;
    terms.reserve(blocks.size());
    for (const auto& [j, block] : blocks) terms.push_back(spec.band_weight(j) * lp_norm(block, spec.p()));
    return lq_combine(terms, spec.q());
  }
  const auto& first = blocks.begin()->second;
  RealGrid acc = RealGrid::Zero(first.rows(), first.cols());
  const double q = spec.q();
  for (const auto& [j, samples] : blocks) {
    const RealGrid block = samples.abs() * spec.band_weight(j);
    if (std::isinf(q)) {
      acc = acc.max(block);
    } else {
      acc += block.pow(q);
    }
  }
  if (!std::isinf(q)) acc = acc.pow(1.0 / q);
  return lp_norm(acc, spec.p());
}

namespace {

double scalar_norm(const SpectralField& f, const SpaceSpec& spec, const DyadicPartition& part) {
  const std::vector<int> js = spec.homogeneous() ? part.hom_bands() : part.bands();
  if (js.empty()) throw ConfigError("empty band range");
  std::map<int, RealGrid> blocks;
  for (int j : js) {
    blocks.emplace(j, apply_multiplier(f, spec.homogeneous() ? part.hom_band(j) : part.band(j)).physical());
  }
  return block_sequence_norm(blocks, spec);
}

}  // namespace

double norm(const SpectralField& f, const SpaceSpec& spec, const DyadicPartition& part) {
  if (f.components() == 1) return scalar_norm(f, spec, part);
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const double v = scalar_norm(f.component(c), spec, part);
    acc += v * v;
  }
  return std::sqrt(acc);
}

std::pair<double, double> inhomogeneous_equivalence(const SpectralField& f, const SpaceSpec& spec,
                                                    const DyadicPartition& part) {
  if (spec.homogeneous()) throw DomainError("equivalence check expects an inhomogeneous space");
  const double lhs = norm(f, spec, part);
  const double rhs = lp_norm(f, spec.p()) + norm(f, spec.with_homogeneous(true), part);
  return {lhs, rhs};
}

double EmbeddingConstant::value() const {
  if (std::isinf(r)) return truncated;
  return std::pow(std::pow(truncated, r) + tail_bound, 1.0 / r);
}

EmbeddingConstant embedding_constant(const SpaceSpec& spec, const DyadicPartition& part) {
  EmbeddingConstant out;
  out.r = spec.family() == SpaceSpec::Family::besov ? spec.q_conj() : spec.p_conj();
  const auto& w = spec.weight();
  if (!spec.weighted()) throw AdmissibilityError("embedding constant needs a weighted space");
  const Admissibility adm = is_admissible(w, out.r);
  out.empirical = adm.empirical;
  if (!adm.admissible && !adm.empirical) {
    throw AdmissibilityError("weight not admissible for r = " + std::to_string(out.r) + ": " +
                             adm.diagnostic);
  }
  std::vector<double> inv;
  for (int j = -1; j <= part.j_max(); ++j) {
    const double v = w(std::ldexp(1.0, j));
    if (v == 0.0) throw AdmissibilityError("weight vanishes on the dyadic grid");
    inv.push_back(1.0 / v);
  }
  out.truncated = lq_combine(inv, out.r);
  if (std::isinf(out.r)) {
    out.tail_bound = 0.0;  // psi non-decreasing: the tail never exceeds the max so far
  } else if (adm.admissible && !adm.empirical) {
    out.tail_bound = dyadic_tail_bound(w, out.r, part.j_max());
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

EmbeddingCheck verify_embedding(const SpectralField& f, const SpaceSpec& spec,
                                const DyadicPartition& part) {
  const double d_over_p = std::isinf(spec.p()) ? 0.0 : 2.0 / spec.p();
  if (spec.s() < d_over_p) throw DomainError("embedding needs s >= d/p");
  const EmbeddingConstant k = embedding_constant(spec, part);
  EmbeddingCheck out;
  const double shift = spec.s() - d_over_p;
  double holder_lhs = 0.0;
  for (int j : part.bands()) {
    const SpectralField block = delta_j(f, j, part);
    out.lhs += std::pow(2.0, j * shift) * lp_norm(block, kInf);
    holder_lhs += std::pow(2.0, j * spec.s()) * lp_norm(block, spec.p());
  }
  const double nrm = norm(f, spec.with_homogeneous(false), part);
  out.rhs = k.value() * nrm;
  out.ratio = out.lhs == 0.0 ? 0.0 : out.lhs / out.rhs;
  if (spec.family() == SpaceSpec::Family::besov) {
    out.holder_ratio = holder_lhs == 0.0 ? 0.0 : holder_lhs / (k.truncated * nrm);
  } else {
    out.holder_ratio = std::nan("");
  }
  return out;
}

double bkm_integrand(const SpectralField& omega, const DyadicPartition& part) {
  double acc = 0.0;
  for (int j : part.hom_bands()) acc += lp_norm(delta_j_homogeneous(omega, j, part), kInf);
  return acc;
}

double besov_0_inf_1(const SpectralField& omega, const DyadicPartition& part) {
  double acc = 0.0;
  for (int j : part.bands()) acc += lp_norm(delta_j(omega, j, part), kInf);
  return acc;
}

GradUBoundTerms grad_u_linf_bound_terms(const SpectralField& omega, const DyadicPartition& part,
                                        double p) {
  GradUBoundTerms out;
  out.omega_lp = lp_norm(omega, p);
  out.bkm = bkm_integrand(omega, part);
  out.grad_u_linf = tensor_linf(gradient(biot_savart(omega)));
  return out;
}

}  // namespace lpeuler
