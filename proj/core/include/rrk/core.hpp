#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rrk {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;

/// Element of the output space Y = C^m.
using OutVector = Eigen::VectorXcd;

/// Element of L(Y), an m x m complex matrix.
using OpMatrix = Eigen::MatrixXcd;

/// Dense complex matrix used for assembled (block) Gram matrices.
using ComplexMatrix = Eigen::MatrixXcd;

// Errors -------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class KernelMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a Gram matrix fails the Hermitian check. A correct kernel
/// never produces this.
class NonHermitianError : public Error {
 public:
  NonHermitianError(const std::string& what, double distance)
      : Error(what), distance_(distance) {}
  double distance() const { return distance_; }

 private:
  double distance_;
};

/// A point of the input set X: a finite real coordinate vector.
class Point {
 public:
  Point() = default;
  explicit Point(RealVector coords);
  Point(std::initializer_list<double> coords);
  explicit Point(const std::vector<double>& coords);

  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()); }
  const RealVector& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

  /// Exact coordinate equality; no fuzzy matching.
  friend bool operator==(const Point& a, const Point& b);
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

 private:
  RealVector coords_;
};

/// Throws DimensionMismatch unless every point has the same dimension.
/// Returns that dimension (0 for an empty list).
std::size_t common_dimension(const std::vector<Point>& points);

double squared_distance(const Point& a, const Point& b);
double dot(const Point& a, const Point& b);

/// Comparison tolerances shared by every module.
///
/// The PSD floor scales with the matrix dimension: a Hermitian matrix of size
/// N is accepted as PSD when its smallest eigenvalue is >= psd_eig_floor * N.
struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double psd_eig_floor = -1e-8;

  double eig_floor(std::size_t dimension) const {
    return psd_eig_floor * static_cast<double>(dimension);
  }

  /// Throws InvalidArgument unless abs_tol and rel_tol lie in [0, 1).
  void validate() const;
};

bool approx_eq(Complex a, Complex b, const Tolerance& tol = {});
bool approx_eq(double a, double b, const Tolerance& tol = {});

/// Entrywise approx_eq. Throws DimensionMismatch on shape mismatch.
bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b,
               const Tolerance& tol = {});

/// max_ij |A - A^H|_ij / 2. Zero iff A is Hermitian.
double hermitian_part_distance(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

void require_dim(const OutVector& v, std::size_t m, const char* what);

/// Y-inner product <a, b> = sum a_i conj(b_i), linear in the first argument.
Complex inner(const OutVector& a, const OutVector& b);

}  // namespace rrk
