#include "rrk/kernels.hpp"

#include <cmath>
#include <utility>

namespace rrk {

// Base kernels ---------------------------------------------------------------

double BaseKernel::operator()(const Point& t, const Point& x) const {
  switch (name) {
    case BaseKernelName::gaussian:
      return std::exp(-gamma * squared_distance(t, x));
    case BaseKernelName::laplacian:
      return std::exp(-gamma * std::sqrt(squared_distance(t, x)));
    case BaseKernelName::linear:
      return dot(t, x);
    case BaseKernelName::polynomial:
      return std::pow(dot(t, x) + offset, degree);
    case BaseKernelName::negative_distance:
      return -std::sqrt(squared_distance(t, x));
  }
  throw InvalidArgument("unknown base kernel");
}

void BaseKernel::validate() const {
  switch (name) {
    case BaseKernelName::gaussian:
    case BaseKernelName::laplacian:
      if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument(to_string(name) + ": gamma must be positive and finite");
      }
      break;
    case BaseKernelName::polynomial:
      if (degree < 1) throw InvalidArgument("polynomial: degree must be >= 1");
      if (!(offset >= 0.0) || !std::isfinite(offset)) {
        throw InvalidArgument("polynomial: offset must be >= 0");
      }
      break;
    case BaseKernelName::linear:
    case BaseKernelName::negative_distance:
      break;
  }
}

bool operator==(const BaseKernel& a, const BaseKernel& b) {
  if (a.name != b.name) return false;
  switch (a.name) {
    case BaseKernelName::gaussian:
    case BaseKernelName::laplacian:
      return a.gamma == b.gamma;
    case BaseKernelName::polynomial:
      return a.degree == b.degree && a.offset == b.offset;
    case BaseKernelName::linear:
    case BaseKernelName::negative_distance:
      return true;
  }
  return false;
}

// Names ------------------------------------------------------------------------

std::string to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::scalar_times_identity: return "scalar_times_identity";
    case KernelVariant::separable: return "separable";
    case KernelVariant::sum: return "sum";
    case KernelVariant::scaled: return "scaled";
    case KernelVariant::pointwise_product_diagonal: return "pointwise_product_diagonal";
  }
  return "?";
}

std::string to_string(BaseKernelName n) {
  switch (n) {
    case BaseKernelName::gaussian: return "gaussian";
    case BaseKernelName::laplacian: return "laplacian";
    case BaseKernelName::linear: return "linear";
    case BaseKernelName::polynomial: return "polynomial";
    case BaseKernelName::negative_distance: return "negative_distance";
  }
  return "?";
}

KernelVariant parse_kernel_variant(const std::string& s) {
  for (auto v : {KernelVariant::scalar_times_identity, KernelVariant::separable,
                 KernelVariant::sum, KernelVariant::scaled,
                 KernelVariant::pointwise_product_diagonal}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidArgument("unknown kernel variant '" + s + "'");
}

BaseKernelName parse_base_kernel_name(const std::string& s) {
  for (auto n : {BaseKernelName::gaussian, BaseKernelName::laplacian, BaseKernelName::linear,
                 BaseKernelName::polynomial, BaseKernelName::negative_distance}) {
    if (to_string(n) == s) return n;
  }
  throw InvalidArgument("unknown base kernel '" + s + "'");
}

// KernelSpec -------------------------------------------------------------------

KernelSpec KernelSpec::scalar_times_identity(BaseKernel base, std::size_t m) {
  KernelSpec s;
  s.variant = KernelVariant::scalar_times_identity;
  s.base = base;
  s.m = m;
  return s;
}

KernelSpec KernelSpec::separable(BaseKernel base, OpMatrix mixing) {
  KernelSpec s;
  s.variant = KernelVariant::separable;
  s.base = base;
  s.m = static_cast<std::size_t>(mixing.rows());
  s.mixing = std::move(mixing);
  return s;
}

KernelSpec KernelSpec::sum(std::vector<KernelSpec> children) {
  KernelSpec s;
  s.variant = KernelVariant::sum;
  s.m = children.empty() ? 1 : children.front().m;
  s.children = std::move(children);
  return s;
}

KernelSpec KernelSpec::scaled(KernelSpec child, double scale) {
  KernelSpec s;
  s.variant = KernelVariant::scaled;
  s.m = child.m;
  s.scale = scale;
  s.children.push_back(std::move(child));
  return s;
}

KernelSpec KernelSpec::pointwise_product_diagonal(std::vector<KernelSpec> children) {
  KernelSpec s;
  s.variant = KernelVariant::pointwise_product_diagonal;
  s.m = children.empty() ? 1 : children.front().m;
  s.children = std::move(children);
  return s;
}

void KernelSpec::validate(const Tolerance& tol) const {
  if (m < 1) throw InvalidArgument("kernel output dimension m must be >= 1");
  switch (variant) {
    case KernelVariant::scalar_times_identity:
    case KernelVariant::separable: {
      if (!base) throw InvalidArgument(to_string(variant) + ": base kernel required");
      base->validate();
      if (variant == KernelVariant::separable) {
        if (mixing.rows() != mixing.cols() || static_cast<std::size_t>(mixing.rows()) != m) {
          throw DimensionMismatch("separable: mixing matrix must be m x m");
        }
        if (!mixing.allFinite()) throw InvalidArgument("separable: mixing matrix not finite");
        const double scale_ref = mixing.cwiseAbs().maxCoeff();
        if (hermitian_part_distance(mixing) > tol.abs_tol + tol.rel_tol * scale_ref) {
          throw InvalidArgument("separable: mixing matrix must be Hermitian");
        }
        if (min_hermitian_eigenvalue(mixing) < tol.eig_floor(m) * std::max(1.0, scale_ref)) {
          throw InvalidArgument("separable: mixing matrix must be positive semidefinite");
        }
      }
      break;
    }
    case KernelVariant::scaled:
      if (children.size() != 1) throw InvalidArgument("scaled: exactly one child required");
      if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidArgument("scaled: scale must be positive and finite");
      }
      [[fallthrough]];
    case KernelVariant::sum:
    case KernelVariant::pointwise_product_diagonal:
      if (children.empty()) throw InvalidArgument(to_string(variant) + ": children required");
      for (const auto& c : children) {
        if (c.m != m) {
          throw DimensionMismatch(to_string(variant) + ": child output dimensions disagree");
        }
        c.validate(tol);
      }
      break;
  }
}

bool KernelSpec::positive_semidefinite() const {
  if (base && !base->positive_semidefinite()) return false;
  for (const auto& c : children) {
    if (!c.positive_semidefinite()) return false;
  }
  return true;
}

bool operator==(const KernelSpec& a, const KernelSpec& b) {
  if (a.variant != b.variant || a.m != b.m) return false;
  switch (a.variant) {
    case KernelVariant::scalar_times_identity:
      return a.base == b.base;
    case KernelVariant::separable:
      return a.base == b.base && a.mixing.rows() == b.mixing.rows() &&
             a.mixing.cols() == b.mixing.cols() && a.mixing == b.mixing;
    case KernelVariant::scaled:
      return a.scale == b.scale && a.children == b.children;
    case KernelVariant::sum:
    case KernelVariant::pointwise_product_diagonal:
      return a.children == b.children;
  }
  return false;
}

// KernelEval -------------------------------------------------------------------

struct KernelEval::Impl {
  std::size_t m;
  Function fn;
  std::optional<KernelSpec> spec;
  std::string label;
};

namespace {

KernelEval::Function compile(const KernelSpec& spec) {
  const auto m = static_cast<Eigen::Index>(spec.m);
  switch (spec.variant) {
    case KernelVariant::scalar_times_identity: {
      const BaseKernel base = *spec.base;
      return [base, m](const Point& t, const Point& x) -> OpMatrix {
        return OpMatrix::Identity(m, m) * Complex(base(t, x));
      };
    }
    case KernelVariant::separable: {
      const BaseKernel base = *spec.base;
      const OpMatrix mixing = spec.mixing;
      return [base, mixing](const Point& t, const Point& x) -> OpMatrix {
        return mixing * Complex(base(t, x));
      };
    }
    case KernelVariant::sum: {
      std::vector<KernelEval::Function> parts;
      for (const auto& c : spec.children) parts.push_back(compile(c));
      return [parts, m](const Point& t, const Point& x) -> OpMatrix {
        OpMatrix out = OpMatrix::Zero(m, m);
        for (const auto& p : parts) out += p(t, x);
        return out;
      };
    }
    case KernelVariant::scaled: {
      auto child = compile(spec.children.front());
      const double scale = spec.scale;
      return [child, scale](const Point& t, const Point& x) -> OpMatrix {
        return child(t, x) * Complex(scale);
      };
    }
    case KernelVariant::pointwise_product_diagonal: {
      std::vector<KernelEval::Function> parts;
      for (const auto& c : spec.children) parts.push_back(compile(c));
      return [parts, m](const Point& t, const Point& x) -> OpMatrix {
        Eigen::VectorXcd diag = Eigen::VectorXcd::Ones(m);
        for (const auto& p : parts) diag = diag.cwiseProduct(p(t, x).diagonal());
        return diag.asDiagonal();
      };
    }
  }
  throw InvalidArgument("unknown kernel variant");
}

}  // namespace

KernelEval KernelEval::custom(std::size_t m, Function fn, std::string label) {
  if (m < 1) throw InvalidArgument("kernel output dimension m must be >= 1");
  if (!fn) throw InvalidArgument("custom kernel: empty function");
  return KernelEval(std::make_shared<const Impl>(
      Impl{m, std::move(fn), std::nullopt, std::move(label)}));
}

KernelEval build_kernel(const KernelSpec& spec) {
  spec.validate();
  return KernelEval(std::make_shared<const KernelEval::Impl>(
      KernelEval::Impl{spec.m, compile(spec), spec, to_string(spec.variant)}));
}

OpMatrix KernelEval::operator()(const Point& t, const Point& x) const {
  OpMatrix k = impl_->fn(t, x);
  const auto m = static_cast<Eigen::Index>(impl_->m);
  if (k.rows() != m || k.cols() != m) {
    throw DimensionMismatch("kernel returned a matrix of the wrong size");
  }
  return k;
}

std::size_t KernelEval::output_dim() const { return impl_->m; }
const std::optional<KernelSpec>& KernelEval::spec() const { return impl_->spec; }
const std::string& KernelEval::label() const { return impl_->label; }

bool KernelEval::same_kernel(const KernelEval& other) const {
  if (impl_ == other.impl_) return true;
  if (impl_->spec && other.impl_->spec) return *impl_->spec == *other.impl_->spec;
  return false;
}

// Gram matrices ------------------------------------------------------------------

ComplexMatrix cross_gram(const KernelEval& kernel, const std::vector<Point>& rows,
                         const std::vector<Point>& cols) {
  if (!rows.empty() && !cols.empty() &&
      common_dimension(rows) != common_dimension(cols)) {
    throw DimensionMismatch("cross_gram: row and column points differ in dimension");
  }
  const auto m = static_cast<Eigen::Index>(kernel.output_dim());
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  ComplexMatrix g(nr * m, nc * m);
  for (Eigen::Index j = 0; j < nc; ++j) {
    for (Eigen::Index i = 0; i < nr; ++i) {
      g.block(i * m, j * m, m, m) = kernel(rows[static_cast<std::size_t>(i)],
                                           cols[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

ComplexMatrix gram(const KernelEval& kernel, const std::vector<Point>& points) {
  if (points.empty()) throw InvalidArgument("gram: at least one point required");
  return cross_gram(kernel, points, points);
}

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eigenvalue: matrix not square");
  if (a.size() == 0) return 0.0;
  const ComplexMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue solver did not converge");
  return solver.eigenvalues().minCoeff();
}

PsdReport check_psd(const KernelEval& kernel, const std::vector<Point>& points,
                    const Tolerance& tol) {
  const ComplexMatrix g = gram(kernel, points);
  const double scale_ref = g.cwiseAbs().maxCoeff();
  const double asym = hermitian_part_distance(g);
  if (asym > tol.abs_tol + tol.rel_tol * scale_ref) {
    throw NonHermitianError("check_psd: block Gram is not Hermitian (distance " +
                                std::to_string(asym) + ")",
                            asym);
  }
  PsdReport report;
  report.n = points.size();
  report.m = kernel.output_dim();
  report.floor = tol.eig_floor(static_cast<std::size_t>(g.rows()));
  report.min_eigenvalue = min_hermitian_eigenvalue(g);
  report.is_psd = report.min_eigenvalue >= report.floor;
  return report;
}

OutVector section_apply(const KernelEval& kernel, const Point& x, const OutVector& y,
                        const Point& t) {
  require_dim(y, kernel.output_dim(), "section_apply");
  return kernel(t, x) * y;
}

}  // namespace rrk
