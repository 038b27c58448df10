#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rrk/sampling.hpp"
#include "rrk/sip_banach.hpp"

namespace rrk {
namespace {

SipVector vec(double p, std::initializer_list<Complex> xs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return SipVector(SipSpace{p, xs.size()}, v);
}

TEST(SipSpace, Validation) {
  EXPECT_THROW((SipSpace{1.0, 2}).validate(), InvalidArgument);
  EXPECT_THROW((SipSpace{0.5, 2}).validate(), InvalidArgument);
  EXPECT_THROW((SipSpace{std::numeric_limits<double>::infinity(), 2}).validate(), InvalidArgument);
  EXPECT_THROW((SipSpace{2.0, 0}).validate(), InvalidArgument);
  EXPECT_NO_THROW((SipSpace{1.0001, 1}).validate());
  EXPECT_DOUBLE_EQ((SipSpace{3.0, 1}).dual_exponent(), 1.5);
}

TEST(SipVector, SpaceMismatchThrows) {
  EXPECT_THROW(sip(vec(2.0, {1.0, 0.0}), vec(3.0, {1.0, 0.0})), DimensionMismatch);
  EXPECT_THROW(SipVector(SipSpace{2.0, 3}, Eigen::VectorXcd::Zero(2)), DimensionMismatch);
}

TEST(LpNorm, Examples) {
  EXPECT_NEAR(lp_norm(vec(2.0, {3.0, 4.0})), 5.0, 1e-15);
  EXPECT_NEAR(lp_norm(vec(4.0, {1.0, 1.0})), 1.189207115002721, 1e-15);
  EXPECT_EQ(lp_norm(vec(3.0, {0.0, 0.0, 0.0})), 0.0);
}

TEST(LpNorm, StableForExtremeMagnitudes) {
  EXPECT_NEAR(lp_norm(vec(4.0, {1e200, 1e200})) / 1e200, 1.189207115002721, 1e-14);
  EXPECT_NEAR(lp_norm(vec(4.0, {1e-200, 1e-200})) / 1e-200, 1.189207115002721, 1e-14);
}

TEST(Sip, Examples) {
  EXPECT_NEAR(std::abs(sip(vec(4.0, {1.0, 0.0}), vec(4.0, {1.0, 1.0})) - std::pow(2.0, -0.5)), 0.0,
              1e-15);
  EXPECT_NEAR(sip(vec(4.0, {1.0, 1.0}), vec(4.0, {1.0, 1.0})).real(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(sip(vec(3.0, {1.0, 2.0}), vec(3.0, {0.0, 0.0})), Complex(0.0));
}

TEST(Sip, ReducesToInnerProductAtTwo) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = random_size(1, 8, rng);
    const SipVector f(SipSpace{2.0, n}, random_complex_vector(n, rng));
    const SipVector g(SipSpace{2.0, n}, random_complex_vector(n, rng));
    EXPECT_LE(std::abs(sip(f, g) - g.entries().dot(f.entries())), 1e-12);
  }
}

TEST(DualityMap, Example) {
  const auto w = duality_map(vec(4.0, {1.0, 1.0}));
  EXPECT_NEAR(w.weights(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(w.weights(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(w.q, 4.0 / 3.0);
  EXPECT_TRUE(duality_map(vec(4.0, {0.0, 0.0})).weights.isZero());
}

TEST(DualityMap, FunctionalIsTheSipAgainstF) {
  std::mt19937_64 rng(52);
  for (double p : {1.3, 2.0, 3.5}) {
    for (int t = 0; t < 200; ++t) {
      const SipVector f(SipSpace{p, 5}, random_complex_vector(5, rng));
      const SipVector g(SipSpace{p, 5}, random_complex_vector(5, rng));
      EXPECT_LE(std::abs(duality_map(f)(g) - sip(g, f)), 1e-12);
    }
  }
}

TEST(DualNorm, EqualsPrimalNorm) {
  std::mt19937_64 rng(53);
  for (double p : {1.5, 2.0, 3.0, 4.0, 7.0}) {
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = random_size(1, 8, rng);
      const auto check = dual_norm_check(SipVector(SipSpace{p, n}, random_complex_vector(n, rng)));
      EXPECT_TRUE(check.equal);
      EXPECT_LE(std::abs(check.primal - check.dual), 1e-9 * check.primal);
    }
  }
}

// Independent of the Hoelder formula: climb |f*(g)| over the unit sphere.
TEST(DualNorm, AgreesWithSphereMaximization) {
  std::mt19937_64 rng(54);
  for (double p : {1.5, 3.0}) {
    for (int t = 0; t < 3; ++t) {
      const SipVector f(SipSpace{p, 3}, random_complex_vector(3, rng));
      const auto fstar = duality_map(f);
      const double found = oracle::maximize_on_unit_sphere(
          [&](const std::vector<Complex>& g) {
            return fstar(SipVector(f.space(), Eigen::Map<const Eigen::VectorXcd>(g.data(), 3)));
          },
          3, p,
          rng);
      EXPECT_NEAR(found, lp_norm(f), 1e-3 * lp_norm(f)) << "p=" << p;
      EXPECT_LE(found, lp_norm(f) * (1.0 + 1e-12));
    }
  }
}

TEST(SipAxioms, PassForSeveralExponents) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const auto r = sip_axiom_report(SipSpace{p, 4}, 2000, 7);
    EXPECT_TRUE(r.passed(1e-10)) << "p=" << p;
    EXPECT_EQ(r.cauchy_schwarz_violations, 0u);
    EXPECT_LE(r.max_cauchy_schwarz_ratio, 1.0 + 1e-12);
    EXPECT_TRUE(r.positivity_ok);
    EXPECT_EQ(r.trials, 2000u);
  }
}

TEST(SipAxioms, ConjugateFormAlsoPasses) {
  const auto r = sip_axiom_report(SipSpace{3.0, 4}, 1000, 8, HomogeneityForm::conjugate_complex);
  EXPECT_TRUE(r.passed(1e-10));
  EXPECT_EQ(r.homogeneity_form, HomogeneityForm::conjugate_complex);
}

// The unconjugated rule fails for complex scalars even at p = 2.
TEST(SipAxioms, LiteralFormFailsForComplexScalars) {
  const auto r = sip_axiom_report(SipSpace{2.0, 3}, 200, 9);
  EXPECT_GT(r.literal_form_complex_defect, 1e-3);
}

TEST(SipAxioms, DeterministicForSeed) {
  const auto a = sip_axiom_report(SipSpace{4.0, 3}, 300, 11);
  const auto b = sip_axiom_report(SipSpace{4.0, 3}, 300, 11);
  EXPECT_EQ(a.linearity_defect, b.linearity_defect);
  EXPECT_EQ(a.max_cauchy_schwarz_ratio, b.max_cauchy_schwarz_ratio);
}

BanachFunctionSample sample(std::vector<Point> dom, std::vector<std::vector<double>> vals, double p_b,
                            double p = 2.0) {
  std::vector<SipVector> out;
  for (const auto& v : vals) {
    Eigen::VectorXcd e(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
    out.emplace_back(SipSpace{p, v.size()}, e);
  }
  return BanachFunctionSample(std::move(dom), std::move(out), p_b);
}

TEST(BanachNorm, NestedNorm) {
  const auto f = sample({Point{0.0}, Point{1.0}}, {{3.0, 4.0}, {0.0, 5.0}}, 2.0);
  EXPECT_NEAR(banach_norm(f), std::sqrt(50.0), 1e-14);
  const auto g = sample({Point{0.0}, Point{1.0}}, {{0.0}, {0.0}}, 3.0);
  EXPECT_EQ(banach_norm(g), 0.0);
}

TEST(BanachNorm, ZeroOnlyForZeroFunction) {
  const auto f = sample({Point{0.0}, Point{1.0}}, {{0.0}, {1e-300}}, 2.0);
  EXPECT_GT(banach_norm(f), 0.0);
}

TEST(BanachFunctionSample, Validation) {
  EXPECT_THROW(sample({Point{0.0}}, {{1.0}, {2.0}}, 2.0), DimensionMismatch);
  EXPECT_THROW(sample({Point{0.0}, Point{0.0}}, {{1.0}, {2.0}}, 2.0), InvalidArgument);
  EXPECT_THROW(sample({Point{0.0}}, {{1.0}}, 1.0), InvalidArgument);
  EXPECT_THROW(sample({Point{0.0}}, {{1.0}}, 2.0).at(Point{0.5}), InvalidArgument);
}

TEST(PointEvaluation, NormIsOne) {
  std::mt19937_64 rng(55);
  for (double p_b : {1.5, 2.0, 4.0}) {
    const BanachFamily family{random_points(6, 2, rng), SipSpace{3.0, 2}, p_b};
    const double nrm = point_evaluation_norm(family, family.domain_points[2], 500, 3);
    EXPECT_LE(nrm, 1.0 + 1e-12);
    EXPECT_GE(nrm, 1.0 - 1e-12);
  }
}

TEST(PointEvaluation, SinglePointDomain) {
  const BanachFamily family{{Point{0.0}}, SipSpace{2.0, 3}, 2.0};
  EXPECT_NEAR(point_evaluation_norm(family, Point{0.0}, 50, 1), 1.0, 1e-12);
}

TEST(RelativeEvaluation, Examples) {
  const auto f = sample({Point{0.0}, Point{1.0}}, {{1.0, 2.0}, {4.0, -1.0}}, 2.0);
  const auto z = relative_evaluation(f, Point{0.0}, Point{1.0});
  EXPECT_EQ(z.entries()(0), Complex(3.0));
  EXPECT_EQ(z.entries()(1), Complex(-3.0));
  EXPECT_TRUE(relative_evaluation(f, Point{1.0}, Point{1.0}).entries().isZero());
  EXPECT_NEAR(relative_evaluation_bound(2.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(relative_evaluation_bound(3.0), std::pow(2.0, 2.0 / 3.0), 1e-15);
}

TEST(RelativeEvaluation, LinearCocycleAndBounded) {
  std::mt19937_64 rng(56);
  for (int t = 0; t < 200; ++t) {
    const double p_b = std::uniform_real_distribution<double>(1.2, 5.0)(rng);
    const auto dom = random_points(4, 1, rng);
    auto make = [&] {
      std::vector<SipVector> vals;
      for (int i = 0; i < 4; ++i) vals.emplace_back(SipSpace{2.5, 2}, random_complex_vector(2, rng));
      return BanachFunctionSample(dom, vals, p_b);
    };
    const auto f = make(), g = make();
    const Complex alpha = random_complex_vector(1, rng)(0);
    const auto lhs = relative_evaluation(f.combine(alpha, g), dom[0], dom[1]);
    const auto rhs = relative_evaluation(f, dom[0], dom[1]) * alpha + relative_evaluation(g, dom[0], dom[1]);
    EXPECT_LE((lhs.entries() - rhs.entries()).cwiseAbs().maxCoeff(), 1e-12);

    const auto c = relative_evaluation(f, dom[0], dom[1]) + relative_evaluation(f, dom[1], dom[2]) -
                   relative_evaluation(f, dom[0], dom[2]);
    EXPECT_LE(c.entries().cwiseAbs().maxCoeff(), 1e-12);

    const double ratio = lp_norm(relative_evaluation(f, dom[0], dom[3])) / banach_norm(f);
    EXPECT_LE(ratio, relative_evaluation_bound(p_b) * (1.0 + 1e-12));
  }
}

// f = (-u at x, u at y) attains the bound.
TEST(RelativeEvaluation, BoundIsAttained) {
  for (double p_b : {1.5, 2.0, 3.0}) {
    const auto f = sample({Point{0.0}, Point{1.0}}, {{-1.0}, {1.0}}, p_b);
    const double ratio = lp_norm(relative_evaluation(f, Point{0.0}, Point{1.0})) / banach_norm(f);
    EXPECT_NEAR(ratio, relative_evaluation_bound(p_b), 1e-14);
  }
}

}  // namespace
}  // namespace rrk
