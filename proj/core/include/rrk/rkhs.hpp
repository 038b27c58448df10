#pragma once

#include <cstddef>
#include <vector>

#include "rrk/core.hpp"
#include "rrk/kernels.hpp"
#include "rrk/linear_solve.hpp"

namespace rrk {

/// A finite span f = sum_j K_{x_j} c_j in H_K.
///
/// Centers are kept verbatim: repeated centers are neither merged nor
/// compressed.
class RkhsElement {
 public:
  RkhsElement(KernelEval kernel, std::vector<Point> centers,
              std::vector<OutVector> coefficients);

  static RkhsElement zero(KernelEval kernel);
  /// The kernel section K_x y.
  static RkhsElement section(KernelEval kernel, Point x, OutVector y);

  const KernelEval& kernel() const { return kernel_; }
  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<OutVector>& coefficients() const { return coefficients_; }
  std::size_t size() const { return centers_.size(); }
  std::size_t output_dim() const { return kernel_.output_dim(); }

  /// Coefficients stacked into one vector of length s * m.
  Eigen::VectorXcd stacked_coefficients() const;

  /// Concatenation of spans.
  RkhsElement operator+(const RkhsElement& other) const;
  RkhsElement operator-(const RkhsElement& other) const;
  RkhsElement operator*(Complex alpha) const;

 private:
  KernelEval kernel_;
  std::vector<Point> centers_;
  std::vector<OutVector> coefficients_;
};

/// f(x) = K_x^* f = sum_j K(x, x_j) c_j.
OutVector evaluate(const RkhsElement& f, const Point& x);

/// <f, g>_K, linear in f and conjugate-linear in g:
///   sum_ij < K(x^g_j, x^f_i) c^f_i, c^g_j >_Y.
/// With this convention <f, K_x y>_K = <f(x), y>_Y.
/// Throws KernelMismatch when f and g use different kernels.
Complex inner_product(const RkhsElement& f, const RkhsElement& g);

/// ||f||_K. Throws Error if <f, f> has a non-negligible imaginary part.
double norm(const RkhsElement& f, const Tolerance& tol = {});

struct ValueConstraint {
  Point x;
  OutVector value;
};

/// Raised when an unregularized system is singular and the least-squares
/// solution does not meet the constraints.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, double smallest_singular_value, double residual)
      : Error(what), smallest_singular_value_(smallest_singular_value), residual_(residual) {}
  double smallest_singular_value() const { return smallest_singular_value_; }
  double residual() const { return residual_; }

 private:
  double smallest_singular_value_;
  double residual_;
};

struct ValueFit {
  RkhsElement element;
  SolveInfo info;
  /// max_i ||f(x_i) - value_i||_inf over the constraints.
  double max_residual = 0.0;
};

/// Minimum-norm (ridge-regularized) interpolant: f = sum_j K_{x_j} c_j with
/// (G + ridge I) c = v.
///
/// Throws SingularSystemError when ridge == 0, the Gram is numerically
/// singular and the least-squares residual exceeds abs_tol + rel_tol ||v||.
ValueFit fit_values(const KernelEval& kernel, const std::vector<ValueConstraint>& constraints,
                    double ridge = 0.0, const Tolerance& tol = {});

/// Stacks equal-length vectors into one.
Eigen::VectorXcd stack(const std::vector<OutVector>& parts);
std::vector<OutVector> unstack(const Eigen::VectorXcd& stacked, std::size_t m);

void require_same_kernel(const KernelEval& a, const KernelEval& b, const char* what);

}  // namespace rrk
