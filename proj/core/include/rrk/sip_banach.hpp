#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rrk/core.hpp"

namespace rrk {

/// Finite-dimensional l^p space over C with 1 < p < infinity.
struct SipSpace {
  double p = 2.0;
  std::size_t dim = 1;

  void validate() const;
  /// Hoelder conjugate q = p / (p - 1).
  double dual_exponent() const { return p / (p - 1.0); }

  friend bool operator==(const SipSpace& a, const SipSpace& b) {
    return a.p == b.p && a.dim == b.dim;
  }
};

class SipVector {
 public:
  SipVector(SipSpace space, Eigen::VectorXcd entries);

  const SipSpace& space() const { return space_; }
  const Eigen::VectorXcd& entries() const { return entries_; }

  SipVector operator+(const SipVector& other) const;
  SipVector operator-(const SipVector& other) const;
  SipVector operator*(Complex alpha) const;

 private:
  SipSpace space_;
  Eigen::VectorXcd entries_;
};

/// (sum |f_i|^p)^(1/p)
double lp_norm(const SipVector& f);

/// The compatible semi-inner product on l^p,
///   [f, g] = sum_i f_i conj(g_i) |g_i|^(p-2) / ||g||_p^(p-2),
/// with [f, 0] = 0. Linear in f; [f, f] = ||f||_p^2.
Complex sip(const SipVector& f, const SipVector& g);

/// The functional f* = [., f] as coefficients w acting by g -> sum_i g_i w_i.
struct DualFunctional {
  Eigen::VectorXcd weights;
  double q = 2.0;

  Complex operator()(const SipVector& g) const;
  /// ||w||_q, the operator norm of the functional on l^p.
  double norm() const;
};

/// w_i = conj(f_i) |f_i|^(p-2) / ||f||_p^(p-2); f = 0 maps to w = 0.
DualFunctional duality_map(const SipVector& f);

struct DualNormCheck {
  double primal = 0.0;
  double dual = 0.0;
  bool equal = false;
};

DualNormCheck dual_norm_check(const SipVector& f, const Tolerance& tol = {});

/// How the homogeneity axiom in the second argument is checked.
///  literal_real:      [f, a g] = a [f, g] for real a
///  conjugate_complex: [f, a g] = conj(a) [f, g] for complex a
enum class HomogeneityForm { literal_real, conjugate_complex };
std::string to_string(HomogeneityForm form);

struct SipAxiomReport {
  double p = 2.0;
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  HomogeneityForm homogeneity_form = HomogeneityForm::literal_real;

  double linearity_defect = 0.0;
  bool positivity_ok = true;
  double conj_homogeneity_defect = 0.0;
  /// The literal form [f, a g] = a [f, g] evaluated at complex a. Reported
  /// only; it fails for non-real a in every l^p.
  double literal_form_complex_defect = 0.0;
  double compatibility_defect = 0.0;  // max | [f,f]^(1/2) - ||f|| | / ||f||
  std::size_t cauchy_schwarz_violations = 0;
  double max_cauchy_schwarz_ratio = 0.0;  // max |[f,g]| / (||f|| ||g||)

  bool passed(double defect_threshold) const;
};

/// Random-trial check of linearity, positivity, homogeneity, Cauchy-Schwarz
/// and compatibility. Deterministic for a given seed.
SipAxiomReport sip_axiom_report(const SipSpace& space, std::size_t trials, std::uint64_t seed,
                                HomogeneityForm form = HomogeneityForm::literal_real,
                                const Tolerance& tol = {});

/// A function from a finite domain into a value space Lambda = l^p, normed by
///   ||f||_B = ( sum_x ||f(x)||_Lambda^p_B )^(1/p_B).
class BanachFunctionSample {
 public:
  BanachFunctionSample(std::vector<Point> domain_points, std::vector<SipVector> values,
                       double p_b);

  const std::vector<Point>& domain_points() const { return domain_points_; }
  const std::vector<SipVector>& values() const { return values_; }
  double p_b() const { return p_b_; }
  const SipSpace& value_space() const { return values_.front().space(); }

  /// f(x) for a domain point x (exact match). Throws InvalidArgument otherwise.
  const SipVector& at(const Point& x) const;

  /// alpha * this + other, pointwise.
  BanachFunctionSample combine(Complex alpha, const BanachFunctionSample& other) const;

 private:
  std::vector<Point> domain_points_;
  std::vector<SipVector> values_;
  double p_b_;
};

double banach_norm(const BanachFunctionSample& f);

/// Shape of the discrete function space, used to sample its members.
struct BanachFamily {
  std::vector<Point> domain_points;
  SipSpace value_space;
  double p_b = 2.0;
};

/// Lower bound on the operator norm of delta_x : B -> Lambda, the supremum
/// of ||f(x)|| / ||f||_B over random members plus members concentrated at x.
/// Equals 1 for this model.
double point_evaluation_norm(const BanachFamily& family, const Point& x, std::size_t trials,
                             std::uint64_t seed);

/// zeta_{x,y}(f) = f(y) - f(x).
SipVector relative_evaluation(const BanachFunctionSample& f, const Point& x, const Point& y);

/// Upper bound 2^(1/q_B) on the norm of zeta_{x,y} in this model.
double relative_evaluation_bound(double p_b);

}  // namespace rrk
