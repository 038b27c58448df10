#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rrk/core.hpp"

namespace rrk {

/// Scalar kernels k : X x X -> R used as building blocks.
///
/// gaussian:          exp(-gamma |t - x|^2)
/// laplacian:         exp(-gamma |t - x|)
/// linear:            <t, x>
/// polynomial:        (<t, x> + offset)^degree
/// negative_distance: -|t - x|. Symmetric but not positive semidefinite; kept
///                    for exercising the failure path of check_psd.
enum class BaseKernelName { gaussian, laplacian, linear, polynomial, negative_distance };

struct BaseKernel {
  BaseKernelName name = BaseKernelName::gaussian;
  double gamma = 1.0;
  int degree = 2;
  double offset = 0.0;

  static BaseKernel gaussian(double gamma) { return {BaseKernelName::gaussian, gamma, 2, 0.0}; }
  static BaseKernel laplacian(double gamma) { return {BaseKernelName::laplacian, gamma, 2, 0.0}; }
  static BaseKernel linear() { return {BaseKernelName::linear, 1.0, 2, 0.0}; }
  static BaseKernel polynomial(int degree, double offset) {
    return {BaseKernelName::polynomial, 1.0, degree, offset};
  }
  static BaseKernel negative_distance() { return {BaseKernelName::negative_distance, 1.0, 2, 0.0}; }

  double operator()(const Point& t, const Point& x) const;

  void validate() const;
  bool positive_semidefinite() const { return name != BaseKernelName::negative_distance; }

  friend bool operator==(const BaseKernel& a, const BaseKernel& b);
};

enum class KernelVariant {
  scalar_times_identity,       // k(t, x) I_m
  separable,                   // k(t, x) A, A Hermitian PSD
  sum,                         // sum of children
  scaled,                      // scale * child
  pointwise_product_diagonal,  // diag_a( prod_c K_c(t, x)_aa )
};

/// Declarative description of an operator-valued kernel K : X x X -> L(C^m).
struct KernelSpec {
  KernelVariant variant = KernelVariant::scalar_times_identity;
  std::optional<BaseKernel> base;
  OpMatrix mixing;  // separable only
  std::vector<KernelSpec> children;
  double scale = 1.0;
  std::size_t m = 1;

  static KernelSpec scalar_times_identity(BaseKernel base, std::size_t m);
  static KernelSpec separable(BaseKernel base, OpMatrix mixing);
  static KernelSpec sum(std::vector<KernelSpec> children);
  static KernelSpec scaled(KernelSpec child, double scale);
  static KernelSpec pointwise_product_diagonal(std::vector<KernelSpec> children);

  /// Throws InvalidArgument / DimensionMismatch if any invariant fails.
  /// The separable mixing matrix must be Hermitian PSD within `tol`.
  void validate(const Tolerance& tol = {}) const;

  /// True when every base kernel in the tree is positive semidefinite.
  bool positive_semidefinite() const;

  friend bool operator==(const KernelSpec& a, const KernelSpec& b);
};

std::string to_string(KernelVariant v);
std::string to_string(BaseKernelName n);
KernelVariant parse_kernel_variant(const std::string& s);
BaseKernelName parse_base_kernel_name(const std::string& s);

/// Immutable evaluator t, x -> K(t, x). Cheap to copy.
class KernelEval {
 public:
  using Function = std::function<OpMatrix(const Point& t, const Point& x)>;

  /// Wraps an arbitrary function. Nothing about it is checked up front; a
  /// non-Hermitian or indefinite function is caught by check_psd.
  static KernelEval custom(std::size_t m, Function fn, std::string label = "custom");

  OpMatrix operator()(const Point& t, const Point& x) const;

  std::size_t output_dim() const;
  const std::optional<KernelSpec>& spec() const;
  const std::string& label() const;

  /// Spec-built kernels compare by spec; custom kernels by identity.
  bool same_kernel(const KernelEval& other) const;

 private:
  struct Impl;
  explicit KernelEval(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend KernelEval build_kernel(const KernelSpec& spec);

  std::shared_ptr<const Impl> impl_;
};

KernelEval build_kernel(const KernelSpec& spec);

/// Block Gram matrix of size nm x nm with block (i, j) = K(x_i, x_j).
ComplexMatrix gram(const KernelEval& kernel, const std::vector<Point>& points);

/// Block cross-Gram with block (i, j) = K(rows_i, cols_j).
ComplexMatrix cross_gram(const KernelEval& kernel, const std::vector<Point>& rows,
                         const std::vector<Point>& cols);

struct PsdReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double floor = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
};

/// Smallest-eigenvalue certificate for the block Gram condition
/// sum_ij <K(x_i, x_j) y_j, y_i> >= 0.
/// Throws NonHermitianError when the assembled Gram is not Hermitian.
PsdReport check_psd(const KernelEval& kernel, const std::vector<Point>& points,
                    const Tolerance& tol = {});

/// Smallest eigenvalue of a Hermitian matrix (its Hermitian part is used).
double min_hermitian_eigenvalue(const ComplexMatrix& a);

/// (K_x y)(t) = K(t, x) y.
OutVector section_apply(const KernelEval& kernel, const Point& x, const OutVector& y,
                        const Point& t);

}  // namespace rrk
