#include "rrk/sampling.hpp"

namespace rrk {

Eigen::VectorXcd random_complex_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

Point random_point(std::size_t d, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  RealVector c(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = dist(rng);
  return Point(std::move(c));
}

std::vector<Point> random_points(std::size_t n, std::size_t d, std::mt19937_64& rng, double lo,
                                 double hi) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(d, rng, lo, hi));
  return pts;
}

OpMatrix random_psd_matrix(std::size_t m, std::mt19937_64& rng) {
  const auto mm = static_cast<Eigen::Index>(m);
  OpMatrix b(mm, mm);
  for (Eigen::Index j = 0; j < mm; ++j) b.col(j) = random_complex_vector(m, rng);
  OpMatrix a = b * b.adjoint() / static_cast<double>(m);
  // Exact Hermitian symmetry.
  return (a + a.adjoint()) / 2.0;
}

std::size_t random_size(std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

const std::vector<KernelFamily>& all_kernel_families() {
  static const std::vector<KernelFamily> families{
      KernelFamily::gaussian_identity,   KernelFamily::laplacian_identity,
      KernelFamily::linear_identity,     KernelFamily::polynomial_identity,
      KernelFamily::separable_gaussian,  KernelFamily::separable_polynomial,
      KernelFamily::sum,                 KernelFamily::scaled,
      KernelFamily::product_diagonal,
  };
  return families;
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian_identity: return "gaussian_identity";
    case KernelFamily::laplacian_identity: return "laplacian_identity";
    case KernelFamily::linear_identity: return "linear_identity";
    case KernelFamily::polynomial_identity: return "polynomial_identity";
    case KernelFamily::separable_gaussian: return "separable_gaussian";
    case KernelFamily::separable_polynomial: return "separable_polynomial";
    case KernelFamily::sum: return "sum";
    case KernelFamily::scaled: return "scaled";
    case KernelFamily::product_diagonal: return "product_diagonal";
  }
  return "?";
}

namespace {

double uniform(double lo, double hi, std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

BaseKernel random_gaussian(std::mt19937_64& rng) { return BaseKernel::gaussian(uniform(0.2, 2.0, rng)); }
BaseKernel random_laplacian(std::mt19937_64& rng) { return BaseKernel::laplacian(uniform(0.2, 2.0, rng)); }
BaseKernel random_polynomial(std::mt19937_64& rng) {
  return BaseKernel::polynomial(static_cast<int>(random_size(1, 3, rng)), uniform(0.0, 1.0, rng));
}

}  // namespace

KernelSpec random_kernel_spec(KernelFamily family, std::size_t m, std::mt19937_64& rng) {
  switch (family) {
    case KernelFamily::gaussian_identity:
      return KernelSpec::scalar_times_identity(random_gaussian(rng), m);
    case KernelFamily::laplacian_identity:
      return KernelSpec::scalar_times_identity(random_laplacian(rng), m);
    case KernelFamily::linear_identity:
      return KernelSpec::scalar_times_identity(BaseKernel::linear(), m);
    case KernelFamily::polynomial_identity:
      return KernelSpec::scalar_times_identity(random_polynomial(rng), m);
    case KernelFamily::separable_gaussian:
      return KernelSpec::separable(random_gaussian(rng), random_psd_matrix(m, rng));
    case KernelFamily::separable_polynomial:
      return KernelSpec::separable(random_polynomial(rng), random_psd_matrix(m, rng));
    case KernelFamily::sum:
      return KernelSpec::sum({KernelSpec::scalar_times_identity(random_gaussian(rng), m),
                              KernelSpec::separable(random_laplacian(rng), random_psd_matrix(m, rng))});
    case KernelFamily::scaled:
      return KernelSpec::scaled(KernelSpec::separable(random_gaussian(rng), random_psd_matrix(m, rng)),
                                uniform(0.5, 3.0, rng));
    case KernelFamily::product_diagonal:
      return KernelSpec::pointwise_product_diagonal(
          {KernelSpec::separable(random_gaussian(rng), random_psd_matrix(m, rng)),
           KernelSpec::scalar_times_identity(random_polynomial(rng), m)});
  }
  throw InvalidArgument("unknown kernel family");
}

}  // namespace rrk
