#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rrk/core.hpp"
#include "rrk/kernels.hpp"
#include "rrk/linear_solve.hpp"
#include "rrk/rkhs.hpp"

namespace rrk {

struct PointPair {
  Point x;
  Point y;
};

/// The relative section M_{x,y} = K_y - K_x in L(Y, H_K).
///
/// Applied to u it is the function t -> (K(t, y) - K(t, x)) u, and its
/// adjoint returns differences of evaluations: M_{x,y}^* f = f(y) - f(x).
class RelativeSection {
 public:
  RelativeSection(KernelEval kernel, Point x, Point y);

  const KernelEval& kernel() const { return kernel_; }
  const Point& x() const { return x_; }
  const Point& y() const { return y_; }

  /// M_{x,y} u written as the span K_y u + K_x (-u).
  RkhsElement as_element(const OutVector& u) const;

 private:
  KernelEval kernel_;
  Point x_;
  Point y_;
};

/// (M_{x,y} u)(t) = (K(t, y) - K(t, x)) u.
OutVector relative_apply(const RelativeSection& section, const OutVector& u, const Point& t);

/// M_{x,y}^* f = f(y) - f(x).
OutVector relative_adjoint(const RelativeSection& section, const RkhsElement& f);

/// The same quantity computed through the H_K inner product:
/// component i is <f, M_{x,y} e_i>_K.
OutVector relative_pairing(const RelativeSection& section, const RkhsElement& f);

/// max_t || (M_{x1,x2} u)(t) + (M_{x2,x3} u)(t) - (M_{x1,x3} u)(t) || over probes.
double cocycle_defect(const KernelEval& kernel, const Point& x1, const Point& x2,
                      const Point& x3, const OutVector& u,
                      const std::vector<Point>& probe_points);

/// {x1, x2, x3} followed by `extra` points drawn uniformly from the bounding
/// box of the triple, widened by one unit on every side.
std::vector<Point> default_probe_points(const Point& x1, const Point& x2, const Point& x3,
                                        std::mt19937_64& rng, std::size_t extra = 10);

/// Block (i, j) = K(y_i, y_j) - K(y_i, x_j) - K(x_i, y_j) + K(x_i, x_j),
/// i.e. M_{x_i,y_i}^* M_{x_j,y_j}.
ComplexMatrix relative_gram(const KernelEval& kernel, const std::vector<PointPair>& pairs);

/// Rectangular version with rows from `rows` and columns from `cols`.
ComplexMatrix relative_cross_gram(const KernelEval& kernel, const std::vector<PointPair>& rows,
                                  const std::vector<PointPair>& cols);

struct DifferenceConstraint {
  Point x;
  Point y;
  OutVector delta;  // f(y) - f(x)
};

/// g = sum_j M_{x_j,y_j} c_j, an element of H_M.
class RelativeElement {
 public:
  RelativeElement(KernelEval kernel, std::vector<PointPair> pairs,
                  std::vector<OutVector> coefficients);

  static RelativeElement zero(KernelEval kernel);

  const KernelEval& kernel() const { return kernel_; }
  const std::vector<PointPair>& pairs() const { return pairs_; }
  const std::vector<OutVector>& coefficients() const { return coefficients_; }
  std::size_t size() const { return pairs_.size(); }
  std::size_t output_dim() const { return kernel_.output_dim(); }
  RelativeSection section(std::size_t j) const;

 private:
  KernelEval kernel_;
  std::vector<PointPair> pairs_;
  std::vector<OutVector> coefficients_;
};

OutVector evaluate(const RelativeElement& g, const Point& t);

/// Rewrites g in H_K: every M_{x,y} c becomes K_y c + K_x (-c).
RkhsElement expand(const RelativeElement& g);

/// <g, h> from relative Gram blocks only (no expansion).
Complex relative_inner_product(const RelativeElement& g, const RelativeElement& h);
double relative_norm(const RelativeElement& g, const Tolerance& tol = {});

/// ||g - expand(g)||_K. Both sides are written over kernel sections, equal
/// centers are merged and the norm of the merged difference is returned.
double containment_residual(const RelativeElement& g, const Tolerance& tol = {});

/// max_t ||g(t) - expand(g)(t)||, comparing relative_apply against evaluate.
double containment_pointwise_defect(const RelativeElement& g,
                                    const std::vector<Point>& probe_points);

/// Sums coefficients of exactly equal centers, preserving first-seen order.
RkhsElement merge_centers(const RkhsElement& f);

/// Pins the absolute level of a difference fit: g(x) + offset = value.
struct Anchor {
  Point x;
  OutVector value;
};

enum class Gauge { relative_span, anchored };
std::string to_string(Gauge g);  // "H_M" or "anchored"

struct DifferenceFit {
  RelativeElement element;
  SolveInfo info;
  /// || (M_i^* g - delta_i)_i ||_2 over the stacked constraints.
  double residual = 0.0;
  double max_residual = 0.0;
  /// max_residual <= abs_tol + rel_tol * max(1, |delta|_inf).
  bool feasible = true;
  Gauge gauge = Gauge::relative_span;
  std::optional<Anchor> anchor;
  OutVector offset;  // zero unless anchored
};

/// Evaluates a fitted model, including the anchor offset.
OutVector evaluate(const DifferenceFit& fit, const Point& t);

/// Minimum-norm element of span{M_{x_j,y_j}} meeting the difference
/// constraints: (G_M + ridge I) c = delta.
///
/// Singular or inconsistent systems are solved in the least-squares sense;
/// the result then carries feasible = false and the residual instead of
/// throwing.
DifferenceFit fit_differences(const KernelEval& kernel,
                              const std::vector<DifferenceConstraint>& constraints,
                              double ridge = 0.0,
                              const std::optional<Anchor>& anchor = std::nullopt,
                              const Tolerance& tol = {});

}  // namespace rrk
