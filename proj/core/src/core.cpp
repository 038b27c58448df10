#include "rrk/core.hpp"

#include <algorithm>
#include <cmath>

namespace rrk {

namespace {

void check_finite(const RealVector& coords) {
  if (coords.size() == 0) {
    throw InvalidArgument("point must have dimension >= 1");
  }
  if (!coords.allFinite()) {
    throw InvalidArgument("point coordinates must be finite");
  }
}

}  // namespace

Point::Point(RealVector coords) : coords_(std::move(coords)) {
  check_finite(coords_);
}

Point::Point(std::initializer_list<double> coords)
    : coords_(static_cast<Eigen::Index>(coords.size())) {
  Eigen::Index i = 0;
  for (double c : coords) coords_[i++] = c;
  check_finite(coords_);
}

Point::Point(const std::vector<double>& coords)
    : coords_(Eigen::Map<const RealVector>(coords.data(),
                                           static_cast<Eigen::Index>(coords.size()))) {
  check_finite(coords_);
}

bool operator==(const Point& a, const Point& b) {
  if (a.coords_.size() != b.coords_.size()) return false;
  for (Eigen::Index i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] != b.coords_[i]) return false;
  }
  return true;
}

std::size_t common_dimension(const std::vector<Point>& points) {
  if (points.empty()) return 0;
  const std::size_t d = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != d) {
      throw DimensionMismatch("points of dimension " + std::to_string(p.dim()) +
                              " and " + std::to_string(d) + " mixed in one set");
    }
  }
  return d;
}

double squared_distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("point dimensions differ");
  return (a.coords() - b.coords()).squaredNorm();
}

double dot(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("point dimensions differ");
  return a.coords().dot(b.coords());
}

void Tolerance::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v < 1.0; };
  if (!in_unit(abs_tol) || !in_unit(rel_tol)) {
    throw InvalidArgument("abs_tol and rel_tol must lie in [0, 1)");
  }
  if (!std::isfinite(psd_eig_floor)) {
    throw InvalidArgument("psd_eig_floor must be finite");
  }
}

bool approx_eq(Complex a, Complex b, const Tolerance& tol) {
  return std::abs(a - b) <= tol.abs_tol + tol.rel_tol * std::max(std::abs(a), std::abs(b));
}

bool approx_eq(double a, double b, const Tolerance& tol) {
  return approx_eq(Complex(a), Complex(b), tol);
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("approx_eq: shape mismatch");
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!approx_eq(a(i, j), b(i, j), tol)) return false;
    }
  }
  return true;
}

double hermitian_part_distance(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("hermitian_part_distance: matrix is not square");
  }
  if (a.size() == 0) return 0.0;
  return ((a - a.adjoint()) / 2.0).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

void require_dim(const OutVector& v, std::size_t m, const char* what) {
  if (static_cast<std::size_t>(v.size()) != m) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(m) + ", got " + std::to_string(v.size()));
  }
}

Complex inner(const OutVector& a, const OutVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner: dimension mismatch");
  // Eigen's dot conjugates the first argument.
  return b.dot(a);
}

}  // namespace rrk
