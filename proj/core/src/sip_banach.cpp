#include "rrk/sip_banach.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rrk/sampling.hpp"

namespace rrk {

void SipSpace::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("SipSpace: p must lie in (1, inf)");
  if (dim < 1) throw InvalidArgument("SipSpace: dimension must be >= 1");
}

SipVector::SipVector(SipSpace space, Eigen::VectorXcd entries)
    : space_(space), entries_(std::move(entries)) {
  space_.validate();
  if (static_cast<std::size_t>(entries_.size()) != space_.dim) {
    throw DimensionMismatch("SipVector: entry count does not match space dimension");
  }
  if (!entries_.allFinite()) throw InvalidArgument("SipVector: non-finite entry");
}

namespace {

void require_same_space(const SipVector& a, const SipVector& b) {
  if (!(a.space() == b.space())) throw DimensionMismatch("SIP vectors live in different spaces");
}

// conj(g_i) |g_i|^(p-2) / ||g||^(p-2), zero where g vanishes.
Eigen::VectorXcd dual_weights(const Eigen::VectorXcd& g, double p, double g_norm) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(g.size());
  if (g_norm == 0.0) return w;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double a = std::abs(g[i]);
    if (a == 0.0) continue;
    w[i] = std::conj(g[i]) * std::pow(a / g_norm, p - 2.0);
  }
  return w;
}

}  // namespace

SipVector SipVector::operator+(const SipVector& other) const {
  require_same_space(*this, other);
  return SipVector(space_, entries_ + other.entries_);
}

SipVector SipVector::operator-(const SipVector& other) const {
  require_same_space(*this, other);
  return SipVector(space_, entries_ - other.entries_);
}

SipVector SipVector::operator*(Complex alpha) const { return SipVector(space_, entries_ * alpha); }

double lp_norm(const SipVector& f) {
  const double p = f.space().p;
  const double scale = f.entries().cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.entries().size(); ++i) {
    sum += std::pow(std::abs(f.entries()[i]) / scale, p);
  }
  return scale * std::pow(sum, 1.0 / p);
}

Complex sip(const SipVector& f, const SipVector& g) {
  require_same_space(f, g);
  const Eigen::VectorXcd w = dual_weights(g.entries(), g.space().p, lp_norm(g));
  return (f.entries().array() * w.array()).sum();
}

Complex DualFunctional::operator()(const SipVector& g) const {
  if (g.entries().size() != weights.size()) throw DimensionMismatch("functional: size mismatch");
  return (g.entries().array() * weights.array()).sum();
}

double DualFunctional::norm() const {
  double sum = 0.0;
  const double scale = weights.size() ? weights.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) sum += std::pow(std::abs(weights[i]) / scale, q);
  return scale * std::pow(sum, 1.0 / q);
}

DualFunctional duality_map(const SipVector& f) {
  return DualFunctional{dual_weights(f.entries(), f.space().p, lp_norm(f)),
                        f.space().dual_exponent()};
}

DualNormCheck dual_norm_check(const SipVector& f, const Tolerance& tol) {
  DualNormCheck out;
  out.primal = lp_norm(f);
  out.dual = duality_map(f).norm();
  out.equal = approx_eq(out.primal, out.dual, tol);
  return out;
}

std::string to_string(HomogeneityForm form) {
  return form == HomogeneityForm::literal_real ? "literal_real" : "conjugate_complex";
}

bool SipAxiomReport::passed(double defect_threshold) const {
  return positivity_ok && cauchy_schwarz_violations == 0 &&
         linearity_defect <= defect_threshold && conj_homogeneity_defect <= defect_threshold &&
         compatibility_defect <= defect_threshold;
}

SipAxiomReport sip_axiom_report(const SipSpace& space, std::size_t trials, std::uint64_t seed,
                                HomogeneityForm form, const Tolerance& tol) {
  space.validate();
  if (trials < 1) throw InvalidArgument("sip_axiom_report: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  SipAxiomReport r;
  r.p = space.p;
  r.dim = space.dim;
  r.trials = trials;
  r.seed = seed;
  r.homogeneity_form = form;

  auto vec = [&] { return SipVector(space, random_complex_vector(space.dim, rng)); };

  for (std::size_t t = 0; t < trials; ++t) {
    const SipVector f = vec();
    const SipVector g = vec();
    const SipVector h = vec();
    const Complex alpha(normal(rng), normal(rng));
    const Complex beta(normal(rng), normal(rng));

    r.linearity_defect = std::max(
        r.linearity_defect,
        std::abs(sip(f * alpha + g * beta, h) - alpha * sip(f, h) - beta * sip(g, h)));

    const Complex ff = sip(f, f);
    const double nf = lp_norm(f);
    if (!(ff.real() > 0.0) || std::abs(ff.imag()) > tol.abs_tol + tol.rel_tol * ff.real()) {
      r.positivity_ok = false;
    }
    r.compatibility_defect =
        std::max(r.compatibility_defect, std::abs(std::sqrt(ff.real()) - nf) / nf);

    const Complex fg = sip(f, g);
    if (form == HomogeneityForm::literal_real) {
      const double a = normal(rng);
      r.conj_homogeneity_defect =
          std::max(r.conj_homogeneity_defect, std::abs(sip(f, g * a) - a * fg));
    } else {
      r.conj_homogeneity_defect =
          std::max(r.conj_homogeneity_defect, std::abs(sip(f, g * alpha) - std::conj(alpha) * fg));
    }
    r.literal_form_complex_defect =
        std::max(r.literal_form_complex_defect, std::abs(sip(f, g * alpha) - alpha * fg));

    const double ng = lp_norm(g);
    const double bound = std::sqrt(ff.real()) * std::sqrt(sip(g, g).real());
    if (std::abs(fg) > bound + tol.abs_tol) ++r.cauchy_schwarz_violations;
    r.max_cauchy_schwarz_ratio = std::max(r.max_cauchy_schwarz_ratio, std::abs(fg) / (nf * ng));
  }
  return r;
}

// Discrete Banach function spaces ---------------------------------------------------

BanachFunctionSample::BanachFunctionSample(std::vector<Point> domain_points,
                                           std::vector<SipVector> values, double p_b)
    : domain_points_(std::move(domain_points)), values_(std::move(values)), p_b_(p_b) {
  if (domain_points_.empty()) throw InvalidArgument("BanachFunctionSample: empty domain");
  if (domain_points_.size() != values_.size()) {
    throw DimensionMismatch("BanachFunctionSample: one value per domain point required");
  }
  if (!(p_b > 1.0) || !std::isfinite(p_b)) {
    throw InvalidArgument("BanachFunctionSample: p_B must lie in (1, inf)");
  }
  common_dimension(domain_points_);
  for (std::size_t i = 0; i < domain_points_.size(); ++i) {
    for (std::size_t j = i + 1; j < domain_points_.size(); ++j) {
      if (domain_points_[i] == domain_points_[j]) {
        throw InvalidArgument("BanachFunctionSample: repeated domain point");
      }
    }
  }
  for (const auto& v : values_) require_same_space(v, values_.front());
}

const SipVector& BanachFunctionSample::at(const Point& x) const {
  const auto it = std::find(domain_points_.begin(), domain_points_.end(), x);
  if (it == domain_points_.end()) throw InvalidArgument("point is not in the function's domain");
  return values_[static_cast<std::size_t>(it - domain_points_.begin())];
}

BanachFunctionSample BanachFunctionSample::combine(Complex alpha,
                                                   const BanachFunctionSample& other) const {
  if (domain_points_.size() != other.domain_points_.size() || p_b_ != other.p_b_) {
    throw DimensionMismatch("combine: functions live in different spaces");
  }
  std::vector<SipVector> values;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (domain_points_[i] != other.domain_points_[i]) {
      throw DimensionMismatch("combine: domains differ");
    }
    values.push_back(values_[i] * alpha + other.values_[i]);
  }
  return BanachFunctionSample(domain_points_, std::move(values), p_b_);
}

double banach_norm(const BanachFunctionSample& f) {
  std::vector<double> pointwise;
  for (const auto& v : f.values()) pointwise.push_back(lp_norm(v));
  const double scale = *std::max_element(pointwise.begin(), pointwise.end());
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double n : pointwise) sum += std::pow(n / scale, f.p_b());
  return scale * std::pow(sum, 1.0 / f.p_b());
}

double point_evaluation_norm(const BanachFamily& family, const Point& x, std::size_t trials,
                             std::uint64_t seed) {
  family.value_space.validate();
  const auto it = std::find(family.domain_points.begin(), family.domain_points.end(), x);
  if (it == family.domain_points.end()) {
    throw InvalidArgument("point_evaluation_norm: x is not a domain point");
  }
  const auto at = static_cast<std::size_t>(it - family.domain_points.begin());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto sample = [&](double spread) {
    std::vector<SipVector> values;
    for (std::size_t i = 0; i < family.domain_points.size(); ++i) {
      Eigen::VectorXcd v = random_complex_vector(family.value_space.dim, rng);
      if (i != at) v *= spread;
      values.emplace_back(family.value_space, std::move(v));
    }
    return BanachFunctionSample(family.domain_points, std::move(values), family.p_b);
  };

  double best = 0.0;
  auto consider = [&](const BanachFunctionSample& f) {
    const double denom = banach_norm(f);
    if (denom > 0.0) best = std::max(best, lp_norm(f.at(x)) / denom);
  };
  for (std::size_t t = 0; t < trials; ++t) consider(sample(unit(rng)));
  // Members concentrated at x, including exact single support.
  for (double spread : {1e-1, 1e-3, 0.0}) consider(sample(spread));
  return best;
}

SipVector relative_evaluation(const BanachFunctionSample& f, const Point& x, const Point& y) {
  return f.at(y) - f.at(x);
}

double relative_evaluation_bound(double p_b) {
  if (!(p_b > 1.0)) throw InvalidArgument("relative_evaluation_bound: p_B must exceed 1");
  const double q_b = p_b / (p_b - 1.0);
  return std::pow(2.0, 1.0 / q_b);
}

}  // namespace rrk
