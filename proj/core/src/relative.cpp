#include "rrk/relative.hpp"

#include <algorithm>
#include <cmath>

namespace rrk {

RelativeSection::RelativeSection(KernelEval kernel, Point x, Point y)
    : kernel_(std::move(kernel)), x_(std::move(x)), y_(std::move(y)) {
  if (x_.dim() != y_.dim()) throw DimensionMismatch("RelativeSection: x and y differ in dimension");
}

RkhsElement RelativeSection::as_element(const OutVector& u) const {
  require_dim(u, kernel_.output_dim(), "RelativeSection::as_element");
  return RkhsElement(kernel_, {y_, x_}, {u, -u});
}

OutVector relative_apply(const RelativeSection& section, const OutVector& u, const Point& t) {
  require_dim(u, section.kernel().output_dim(), "relative_apply");
  const auto& k = section.kernel();
  return (k(t, section.y()) - k(t, section.x())) * u;
}

OutVector relative_adjoint(const RelativeSection& section, const RkhsElement& f) {
  require_same_kernel(section.kernel(), f.kernel(), "relative_adjoint");
  return evaluate(f, section.y()) - evaluate(f, section.x());
}

OutVector relative_pairing(const RelativeSection& section, const RkhsElement& f) {
  require_same_kernel(section.kernel(), f.kernel(), "relative_pairing");
  const auto m = static_cast<Eigen::Index>(section.kernel().output_dim());
  OutVector out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out[i] = inner_product(f, section.as_element(OutVector::Unit(m, i)));
  }
  return out;
}

double cocycle_defect(const KernelEval& kernel, const Point& x1, const Point& x2,
                      const Point& x3, const OutVector& u,
                      const std::vector<Point>& probe_points) {
  const RelativeSection m12(kernel, x1, x2);
  const RelativeSection m23(kernel, x2, x3);
  const RelativeSection m13(kernel, x1, x3);
  double worst = 0.0;
  for (const auto& t : probe_points) {
    const OutVector d = relative_apply(m12, u, t) + relative_apply(m23, u, t) -
                        relative_apply(m13, u, t);
    worst = std::max(worst, d.norm());
  }
  return worst;
}

std::vector<Point> default_probe_points(const Point& x1, const Point& x2, const Point& x3,
                                        std::mt19937_64& rng, std::size_t extra) {
  const std::size_t d = common_dimension({x1, x2, x3});
  std::vector<Point> probes{x1, x2, x3};
  const RealVector lo = x1.coords().cwiseMin(x2.coords()).cwiseMin(x3.coords()).array() - 1.0;
  const RealVector hi = x1.coords().cwiseMax(x2.coords()).cwiseMax(x3.coords()).array() + 1.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < extra; ++k) {
    RealVector p(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    probes.emplace_back(std::move(p));
  }
  return probes;
}

ComplexMatrix relative_cross_gram(const KernelEval& kernel, const std::vector<PointPair>& rows,
                                  const std::vector<PointPair>& cols) {
  const auto m = static_cast<Eigen::Index>(kernel.output_dim());
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  ComplexMatrix g(nr * m, nc * m);
  for (Eigen::Index j = 0; j < nc; ++j) {
    const auto& cj = cols[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < nr; ++i) {
      const auto& ri = rows[static_cast<std::size_t>(i)];
      if (ri.x.dim() != cj.x.dim() || ri.x.dim() != ri.y.dim() || cj.x.dim() != cj.y.dim()) {
        throw DimensionMismatch("relative_gram: point dimensions differ");
      }
      g.block(i * m, j * m, m, m) =
          kernel(ri.y, cj.y) - kernel(ri.y, cj.x) - kernel(ri.x, cj.y) + kernel(ri.x, cj.x);
    }
  }
  return g;
}

ComplexMatrix relative_gram(const KernelEval& kernel, const std::vector<PointPair>& pairs) {
  if (pairs.empty()) throw InvalidArgument("relative_gram: at least one pair required");
  return relative_cross_gram(kernel, pairs, pairs);
}

// RelativeElement ----------------------------------------------------------------

RelativeElement::RelativeElement(KernelEval kernel, std::vector<PointPair> pairs,
                                 std::vector<OutVector> coefficients)
    : kernel_(std::move(kernel)), pairs_(std::move(pairs)), coefficients_(std::move(coefficients)) {
  if (pairs_.size() != coefficients_.size()) {
    throw DimensionMismatch("RelativeElement: pairs and coefficients differ in length");
  }
  std::vector<Point> all;
  for (const auto& p : pairs_) {
    all.push_back(p.x);
    all.push_back(p.y);
  }
  common_dimension(all);
  for (const auto& c : coefficients_) require_dim(c, kernel_.output_dim(), "RelativeElement coefficient");
}

RelativeElement RelativeElement::zero(KernelEval kernel) {
  return RelativeElement(std::move(kernel), {}, {});
}

RelativeSection RelativeElement::section(std::size_t j) const {
  return RelativeSection(kernel_, pairs_.at(j).x, pairs_.at(j).y);
}

OutVector evaluate(const RelativeElement& g, const Point& t) {
  OutVector out = OutVector::Zero(static_cast<Eigen::Index>(g.output_dim()));
  for (std::size_t j = 0; j < g.size(); ++j) {
    out += relative_apply(g.section(j), g.coefficients()[j], t);
  }
  return out;
}

RkhsElement expand(const RelativeElement& g) {
  std::vector<Point> centers;
  std::vector<OutVector> coeffs;
  for (std::size_t j = 0; j < g.size(); ++j) {
    centers.push_back(g.pairs()[j].y);
    coeffs.push_back(g.coefficients()[j]);
    centers.push_back(g.pairs()[j].x);
    coeffs.push_back(-g.coefficients()[j]);
  }
  return RkhsElement(g.kernel(), std::move(centers), std::move(coeffs));
}

Complex relative_inner_product(const RelativeElement& g, const RelativeElement& h) {
  require_same_kernel(g.kernel(), h.kernel(), "relative_inner_product");
  if (g.size() == 0 || h.size() == 0) return 0.0;
  const ComplexMatrix cross = relative_cross_gram(g.kernel(), h.pairs(), g.pairs());
  return stack(h.coefficients()).dot(cross * stack(g.coefficients()));
}

double relative_norm(const RelativeElement& g, const Tolerance& tol) {
  const Complex sq = relative_inner_product(g, g);
  if (std::abs(sq.imag()) > tol.abs_tol + tol.rel_tol * std::abs(sq)) {
    throw Error("relative_norm: <g, g> has imaginary part " + std::to_string(sq.imag()));
  }
  return std::sqrt(std::max(0.0, sq.real()));
}

RkhsElement merge_centers(const RkhsElement& f) {
  std::vector<Point> centers;
  std::vector<OutVector> coeffs;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto it = std::find(centers.begin(), centers.end(), f.centers()[j]);
    if (it == centers.end()) {
      centers.push_back(f.centers()[j]);
      coeffs.push_back(f.coefficients()[j]);
    } else {
      coeffs[static_cast<std::size_t>(it - centers.begin())] += f.coefficients()[j];
    }
  }
  return RkhsElement(f.kernel(), std::move(centers), std::move(coeffs));
}

double containment_residual(const RelativeElement& g, const Tolerance& tol) {
  RkhsElement native = RkhsElement::zero(g.kernel());
  for (std::size_t j = 0; j < g.size(); ++j) {
    native = native + g.section(j).as_element(g.coefficients()[j]);
  }
  return norm(merge_centers(native - expand(g)), tol);
}

double containment_pointwise_defect(const RelativeElement& g,
                                    const std::vector<Point>& probe_points) {
  const RkhsElement e = expand(g);
  double worst = 0.0;
  for (const auto& t : probe_points) {
    worst = std::max(worst, (evaluate(g, t) - evaluate(e, t)).norm());
  }
  return worst;
}

// Fitting -------------------------------------------------------------------------

std::string to_string(Gauge g) { return g == Gauge::anchored ? "anchored" : "H_M"; }

OutVector evaluate(const DifferenceFit& fit, const Point& t) {
  OutVector v = evaluate(fit.element, t);
  if (fit.offset.size() == v.size()) v += fit.offset;
  return v;
}

DifferenceFit fit_differences(const KernelEval& kernel,
                              const std::vector<DifferenceConstraint>& constraints,
                              double ridge, const std::optional<Anchor>& anchor,
                              const Tolerance& tol) {
  if (constraints.empty()) throw InvalidArgument("fit_differences: no constraints");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw InvalidArgument("fit_differences: ridge must be >= 0");
  }
  std::vector<PointPair> pairs;
  std::vector<OutVector> deltas;
  for (const auto& c : constraints) {
    require_dim(c.delta, kernel.output_dim(), "fit_differences constraint");
    pairs.push_back({c.x, c.y});
    deltas.push_back(c.delta);
  }
  const ComplexMatrix g = relative_gram(kernel, pairs);
  const Eigen::VectorXcd delta = stack(deltas);
  const ComplexMatrix system = g + ridge * ComplexMatrix::Identity(g.rows(), g.cols());
  const SolveResult solved =
      solve_hermitian(system, delta, kMaxCondition, kPseudoInverseRcond, tol.abs_tol);

  const Eigen::VectorXcd misfit = g * solved.solution - delta;
  const double delta_scale = delta.size() ? delta.cwiseAbs().maxCoeff() : 0.0;

  DifferenceFit fit{RelativeElement(kernel, std::move(pairs),
                                    unstack(solved.solution, kernel.output_dim())),
                    solved.info,
                    misfit.norm(),
                    misfit.size() ? misfit.cwiseAbs().maxCoeff() : 0.0,
                    true,
                    Gauge::relative_span,
                    std::nullopt,
                    OutVector::Zero(static_cast<Eigen::Index>(kernel.output_dim()))};
  fit.feasible = fit.max_residual <= tol.abs_tol + tol.rel_tol * std::max(1.0, delta_scale);

  if (anchor) {
    require_dim(anchor->value, kernel.output_dim(), "fit_differences anchor");
    fit.gauge = Gauge::anchored;
    fit.anchor = anchor;
    fit.offset = anchor->value - evaluate(fit.element, anchor->x);
  }
  return fit;
}

}  // namespace rrk
