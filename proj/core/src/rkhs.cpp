#include "rrk/rkhs.hpp"

#include <cmath>

namespace rrk {

void require_same_kernel(const KernelEval& a, const KernelEval& b, const char* what) {
  if (!a.same_kernel(b)) throw KernelMismatch(std::string(what) + ": kernels differ");
}

Eigen::VectorXcd stack(const std::vector<OutVector>& parts) {
  if (parts.empty()) return Eigen::VectorXcd(0);
  const Eigen::Index m = parts.front().size();
  Eigen::VectorXcd out(m * static_cast<Eigen::Index>(parts.size()));
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].size() != m) throw DimensionMismatch("stack: ragged parts");
    out.segment(static_cast<Eigen::Index>(j) * m, m) = parts[j];
  }
  return out;
}

std::vector<OutVector> unstack(const Eigen::VectorXcd& stacked, std::size_t m) {
  const auto mm = static_cast<Eigen::Index>(m);
  if (mm == 0 || stacked.size() % mm != 0) throw DimensionMismatch("unstack: bad length");
  std::vector<OutVector> out;
  for (Eigen::Index j = 0; j < stacked.size() / mm; ++j) {
    out.emplace_back(stacked.segment(j * mm, mm));
  }
  return out;
}

RkhsElement::RkhsElement(KernelEval kernel, std::vector<Point> centers,
                         std::vector<OutVector> coefficients)
    : kernel_(std::move(kernel)),
      centers_(std::move(centers)),
      coefficients_(std::move(coefficients)) {
  if (centers_.size() != coefficients_.size()) {
    throw DimensionMismatch("RkhsElement: centers and coefficients differ in length");
  }
  common_dimension(centers_);
  for (const auto& c : coefficients_) {
    require_dim(c, kernel_.output_dim(), "RkhsElement coefficient");
    if (!c.allFinite()) throw InvalidArgument("RkhsElement: non-finite coefficient");
  }
}

RkhsElement RkhsElement::zero(KernelEval kernel) { return RkhsElement(std::move(kernel), {}, {}); }

RkhsElement RkhsElement::section(KernelEval kernel, Point x, OutVector y) {
  return RkhsElement(std::move(kernel), {std::move(x)}, {std::move(y)});
}

Eigen::VectorXcd RkhsElement::stacked_coefficients() const { return stack(coefficients_); }

RkhsElement RkhsElement::operator+(const RkhsElement& other) const {
  require_same_kernel(kernel_, other.kernel_, "RkhsElement::operator+");
  auto centers = centers_;
  auto coeffs = coefficients_;
  centers.insert(centers.end(), other.centers_.begin(), other.centers_.end());
  coeffs.insert(coeffs.end(), other.coefficients_.begin(), other.coefficients_.end());
  return RkhsElement(kernel_, std::move(centers), std::move(coeffs));
}

RkhsElement RkhsElement::operator-(const RkhsElement& other) const {
  return *this + other * Complex(-1.0);
}

RkhsElement RkhsElement::operator*(Complex alpha) const {
  auto coeffs = coefficients_;
  for (auto& c : coeffs) c *= alpha;
  return RkhsElement(kernel_, centers_, std::move(coeffs));
}

OutVector evaluate(const RkhsElement& f, const Point& x) {
  OutVector out = OutVector::Zero(static_cast<Eigen::Index>(f.output_dim()));
  for (std::size_t j = 0; j < f.size(); ++j) {
    out += f.kernel()(x, f.centers()[j]) * f.coefficients()[j];
  }
  return out;
}

Complex inner_product(const RkhsElement& f, const RkhsElement& g) {
  require_same_kernel(f.kernel(), g.kernel(), "inner_product");
  Complex total = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      total += inner(f.kernel()(g.centers()[j], f.centers()[i]) * f.coefficients()[i],
                     g.coefficients()[j]);
    }
  }
  return total;
}

double norm(const RkhsElement& f, const Tolerance& tol) {
  const Complex sq = inner_product(f, f);
  if (std::abs(sq.imag()) > tol.abs_tol + tol.rel_tol * std::abs(sq)) {
    throw Error("norm: <f, f> has imaginary part " + std::to_string(sq.imag()));
  }
  return std::sqrt(std::max(0.0, sq.real()));
}

ValueFit fit_values(const KernelEval& kernel, const std::vector<ValueConstraint>& constraints,
                    double ridge, const Tolerance& tol) {
  if (constraints.empty()) throw InvalidArgument("fit_values: no constraints");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw InvalidArgument("fit_values: ridge must be >= 0");
  }
  std::vector<Point> centers;
  std::vector<OutVector> values;
  for (const auto& c : constraints) {
    require_dim(c.value, kernel.output_dim(), "fit_values constraint");
    centers.push_back(c.x);
    values.push_back(c.value);
  }
  const ComplexMatrix g = gram(kernel, centers);
  const Eigen::VectorXcd v = stack(values);
  const ComplexMatrix system =
      g + ridge * ComplexMatrix::Identity(g.rows(), g.cols());

  SolveResult solved = solve_hermitian(system, v, kMaxCondition, kPseudoInverseRcond, tol.abs_tol);
  if (ridge == 0.0 && solved.info.pseudo_inverse &&
      solved.info.residual > tol.abs_tol + tol.rel_tol * v.norm()) {
    throw SingularSystemError(
        "fit_values: singular Gram (smallest singular value " +
            std::to_string(solved.info.smallest_singular_value) +
            "); retry with a positive ridge",
        solved.info.smallest_singular_value, solved.info.residual);
  }

  const Eigen::VectorXcd fitted = g * solved.solution;
  ValueFit out{RkhsElement(kernel, std::move(centers),
                           unstack(solved.solution, kernel.output_dim())),
               solved.info, (fitted - v).cwiseAbs().maxCoeff()};
  return out;
}

}  // namespace rrk
