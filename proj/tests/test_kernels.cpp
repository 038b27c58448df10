#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rrk/kernels.hpp"
#include "rrk/sampling.hpp"

namespace rrk {
namespace {

constexpr double kInvE = 0.36787944117144233;  // exp(-1)

KernelEval gaussian1() {
  return build_kernel(KernelSpec::scalar_times_identity(BaseKernel::gaussian(1.0), 1));
}

oracle::CMat to_rows(const ComplexMatrix& g) {
  oracle::CMat rows(static_cast<std::size_t>(g.rows()),
                    std::vector<oracle::cplx>(static_cast<std::size_t>(g.cols())));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g(i, j);
  return rows;
}

TEST(BuildKernel, GaussianOnDiagonalIsOne) {
  EXPECT_EQ(gaussian1()(Point{0.0}, Point{0.0})(0, 0), Complex(1.0));
}

TEST(BuildKernel, GaussianAtUnitDistance) {
  EXPECT_NEAR(gaussian1()(Point{0.0}, Point{1.0})(0, 0).real(), kInvE, 1e-15);
}

TEST(BuildKernel, SeparableOnDiagonalIsMixingMatrix) {
  OpMatrix a(2, 2);
  a << 2.0, 0.0, 0.0, 3.0;
  const auto k = build_kernel(KernelSpec::separable(BaseKernel::gaussian(1.0), a));
  EXPECT_TRUE(approx_eq(k(Point{0.3, 0.1}, Point{0.3, 0.1}), a));
}

TEST(BuildKernel, BaseKernelFormulas) {
  const Point t{1.0, 2.0}, x{0.5, -1.0};
  // |t - x|^2 = 0.25 + 9, <t, x> = 0.5 - 2
  EXPECT_DOUBLE_EQ(BaseKernel::gaussian(0.5)(t, x), std::exp(-0.5 * 9.25));
  EXPECT_DOUBLE_EQ(BaseKernel::laplacian(0.5)(t, x), std::exp(-0.5 * std::sqrt(9.25)));
  EXPECT_DOUBLE_EQ(BaseKernel::linear()(t, x), -1.5);
  EXPECT_DOUBLE_EQ(BaseKernel::polynomial(3, 2.0)(t, x), 0.125);
  EXPECT_DOUBLE_EQ(BaseKernel::negative_distance()(t, x), -std::sqrt(9.25));
}

TEST(BuildKernel, CombinatorsComposeAsDocumented) {
  const auto g = KernelSpec::scalar_times_identity(BaseKernel::gaussian(1.0), 2);
  const auto l = KernelSpec::scalar_times_identity(BaseKernel::laplacian(2.0), 2);
  const Point t{0.2}, x{-0.4};
  const OpMatrix kg = build_kernel(g)(t, x), kl = build_kernel(l)(t, x);
  EXPECT_TRUE(approx_eq(build_kernel(KernelSpec::sum({g, l}))(t, x), kg + kl));
  EXPECT_TRUE(approx_eq(build_kernel(KernelSpec::scaled(g, 2.5))(t, x), kg * 2.5));
  EXPECT_TRUE(approx_eq(build_kernel(KernelSpec::pointwise_product_diagonal({g, l}))(t, x),
                        OpMatrix(kg.cwiseProduct(kl))));
}

TEST(BuildKernel, InvalidParametersRejected) {
  EXPECT_THROW(build_kernel(KernelSpec::scalar_times_identity(BaseKernel::gaussian(0.0), 1)),
               InvalidArgument);
  EXPECT_THROW(build_kernel(KernelSpec::scalar_times_identity(BaseKernel::polynomial(0, 1.0), 1)),
               InvalidArgument);
  EXPECT_THROW(build_kernel(KernelSpec::scalar_times_identity(BaseKernel::polynomial(2, -1.0), 1)),
               InvalidArgument);
  EXPECT_THROW(build_kernel(KernelSpec::scaled(
                   KernelSpec::scalar_times_identity(BaseKernel::linear(), 1), 0.0)),
               InvalidArgument);
  OpMatrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(build_kernel(KernelSpec::separable(BaseKernel::gaussian(1.0), indefinite)),
               InvalidArgument);
  OpMatrix skew(2, 2);
  skew << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(build_kernel(KernelSpec::separable(BaseKernel::gaussian(1.0), skew)),
               InvalidArgument);
}

TEST(BuildKernel, ChildDimensionsMustAgree) {
  auto spec = KernelSpec::sum({KernelSpec::scalar_times_identity(BaseKernel::linear(), 2),
                               KernelSpec::scalar_times_identity(BaseKernel::linear(), 3)});
  EXPECT_THROW(build_kernel(spec), DimensionMismatch);
}

TEST(Gram, SinglePoint) {
  const ComplexMatrix g = gram(gaussian1(), {Point{0.7}});
  ASSERT_EQ(g.rows(), 1);
  EXPECT_EQ(g(0, 0), Complex(1.0));
}

TEST(Gram, TwoPoints) {
  const ComplexMatrix g = gram(gaussian1(), {Point{0.0}, Point{1.0}});
  ComplexMatrix expected(2, 2);
  expected << 1.0, kInvE, kInvE, 1.0;
  EXPECT_TRUE(approx_eq(g, expected, Tolerance{1e-15, 0.0, 0.0}));
}

TEST(Gram, MixedDimensionsThrow) {
  EXPECT_THROW(gram(gaussian1(), {Point{0.0}, Point{1.0, 2.0}}), DimensionMismatch);
}

TEST(Gram, SumKernelGramIsSumOfGrams) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = random_size(1, 4, rng);
    const auto a = random_kernel_spec(KernelFamily::separable_gaussian, m, rng);
    const auto b = random_kernel_spec(KernelFamily::polynomial_identity, m, rng);
    const auto pts = random_points(random_size(1, 8, rng), random_size(1, 3, rng), rng);
    EXPECT_TRUE(approx_eq(gram(build_kernel(KernelSpec::sum({a, b})), pts),
                          ComplexMatrix(gram(build_kernel(a), pts) + gram(build_kernel(b), pts))));
  }
}

TEST(Gram, HermitianForAllFamilies) {
  std::mt19937_64 rng(12);
  for (auto family : all_kernel_families()) {
    for (int t = 0; t < 20; ++t) {
      const auto k = build_kernel(random_kernel_spec(family, random_size(1, 4, rng), rng));
      const auto g = gram(k, random_points(random_size(1, 10, rng), random_size(1, 3, rng), rng));
      EXPECT_LE(hermitian_part_distance(g), 1e-10) << to_string(family);
    }
  }
}

TEST(CheckPsd, GaussianFivePointsAgreesWithJacobiOracle) {
  const std::vector<Point> pts{Point{0.0}, Point{0.3}, Point{-1.2}, Point{2.0}, Point{0.9}};
  const PsdReport r = check_psd(gaussian1(), pts);
  EXPECT_TRUE(r.is_psd);
  const double oracle_min = oracle::min_eigenvalue_hermitian(to_rows(gram(gaussian1(), pts)));
  EXPECT_GT(oracle_min, 0.0);
  EXPECT_NEAR(r.min_eigenvalue, oracle_min, 1e-12);
}

TEST(CheckPsd, NegativeDistanceKernelFails) {
  const auto k = KernelEval::custom(
      1, [](const Point& t, const Point& x) -> OpMatrix {
        return OpMatrix::Identity(1, 1) * Complex(-std::sqrt(squared_distance(t, x)));
      });
  const PsdReport r = check_psd(k, {Point{0.0}, Point{1.0}});
  EXPECT_FALSE(r.is_psd);
  EXPECT_NEAR(r.min_eigenvalue, -1.0, 1e-12);
}

TEST(CheckPsd, NegativeDistanceSpecFails) {
  const auto k = build_kernel(KernelSpec::scalar_times_identity(BaseKernel::negative_distance(), 2));
  EXPECT_FALSE(check_psd(k, {Point{0.0}, Point{1.0}, Point{3.0}}).is_psd);
}

TEST(CheckPsd, SinglePointIsAlwaysPsd) {
  std::mt19937_64 rng(13);
  for (auto family : all_kernel_families()) {
    const auto k = build_kernel(random_kernel_spec(family, 3, rng));
    EXPECT_TRUE(check_psd(k, {random_point(2, rng)}).is_psd) << to_string(family);
  }
}

TEST(CheckPsd, NonHermitianKernelIsReported) {
  const auto k = KernelEval::custom(1, [](const Point& t, const Point& x) -> OpMatrix {
    return OpMatrix::Identity(1, 1) * Complex(1.0 + t[0] - 2.0 * x[0]);
  });
  EXPECT_THROW(check_psd(k, {Point{0.0}, Point{1.0}}), NonHermitianError);
}

// Every built-in family, 100 random point sets each, compared against the
// Jacobi oracle on a subsample.
TEST(CheckPsd, RandomizedAllFamilies) {
  std::mt19937_64 rng(14);
  for (auto family : all_kernel_families()) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = random_size(1, 12, rng);
      const std::size_t m = random_size(1, 4, rng);
      const auto k = build_kernel(random_kernel_spec(family, m, rng));
      const auto pts = random_points(n, random_size(1, 3, rng), rng);
      const PsdReport r = check_psd(k, pts);
      EXPECT_TRUE(r.is_psd) << to_string(family) << " min eig " << r.min_eigenvalue;
      if (t % 10 == 0) {
        const double oracle_min = oracle::min_eigenvalue_hermitian(to_rows(gram(k, pts)));
        EXPECT_NEAR(r.min_eigenvalue, oracle_min, 1e-9 * std::max(1.0, std::abs(oracle_min)));
      }
    }
  }
}

TEST(SectionApply, Examples) {
  OutVector one(1), two(1);
  one << 1.0;
  two << 2.0;
  EXPECT_EQ(section_apply(gaussian1(), Point{0.0}, one, Point{0.0})(0), Complex(1.0));
  EXPECT_NEAR(section_apply(gaussian1(), Point{0.0}, two, Point{1.0})(0).real(), 2 * kInvE, 1e-15);
  EXPECT_TRUE(section_apply(gaussian1(), Point{0.0}, OutVector::Zero(1), Point{0.4}).isZero());
}

TEST(SectionApply, DimensionMismatchThrows) {
  EXPECT_THROW(section_apply(gaussian1(), Point{0.0}, OutVector::Zero(2), Point{0.0}),
               DimensionMismatch);
}

TEST(SectionApply, LinearInY) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = random_size(1, 4, rng);
    const auto k = build_kernel(random_kernel_spec(all_kernel_families()[t % 9], m, rng));
    const Point x = random_point(2, rng), s = random_point(2, rng);
    const OutVector y1 = random_complex_vector(m, rng), y2 = random_complex_vector(m, rng);
    const Complex a(normal(rng), normal(rng)), b(normal(rng), normal(rng));
    const OutVector lhs = section_apply(k, x, a * y1 + b * y2, s);
    const OutVector rhs = a * section_apply(k, x, y1, s) + b * section_apply(k, x, y2, s);
    EXPECT_TRUE(approx_eq(ComplexMatrix(lhs), ComplexMatrix(rhs)));
  }
}

TEST(KernelEval, SameKernelComparesSpecs) {
  const auto a = gaussian1();
  const auto b = gaussian1();
  const auto c = build_kernel(KernelSpec::scalar_times_identity(BaseKernel::gaussian(2.0), 1));
  EXPECT_TRUE(a.same_kernel(b));
  EXPECT_FALSE(a.same_kernel(c));
  const auto custom = KernelEval::custom(1, [](const Point&, const Point&) {
    return OpMatrix(OpMatrix::Identity(1, 1));
  });
  EXPECT_TRUE(custom.same_kernel(custom));
  EXPECT_FALSE(custom.same_kernel(a));
}

}  // namespace
}  // namespace rrk
