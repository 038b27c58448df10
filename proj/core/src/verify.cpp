#include "rrk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rrk/relative.hpp"
#include "rrk/rkhs.hpp"
#include "rrk/sampling.hpp"
#include "rrk/sip_banach.hpp"

namespace rrk {

namespace {

class SuiteBuilder {
 public:
  SuiteBuilder(std::string name, double threshold) {
    result_.name = std::move(name);
    result_.threshold = threshold;
  }

  void record(double defect) {
    ++result_.trials;
    if (std::isnan(defect)) {
      nan_seen_ = true;
      return;
    }
    result_.max_defect = std::max(result_.max_defect, defect);
  }

  void fail(const std::string& note) {
    forced_failure_ = true;
    if (result_.note.empty()) result_.note = note;
  }

  void note(const std::string& n) { result_.note = n; }

  SuiteResult finish() {
    result_.passed = !forced_failure_ && !nan_seen_ && result_.max_defect <= result_.threshold;
    if (nan_seen_ && result_.note.empty()) result_.note = "non-finite defect";
    return result_;
  }

 private:
  SuiteResult result_;
  bool forced_failure_ = false;
  bool nan_seen_ = false;
};

struct Context {
  const VerifyOptions& options;
  std::mt19937_64& rng;

  KernelEval kernel(KernelFamily family, std::size_t m) {
    KernelEval k = build_kernel(random_kernel_spec(family, m, rng));
    return options.inject_asymmetry ? with_injected_asymmetry(k) : k;
  }

  KernelFamily family(std::size_t trial) const {
    const auto& all = all_kernel_families();
    return all[trial % all.size()];
  }

  RkhsElement random_span(const KernelEval& k, std::size_t d, std::size_t max_s) {
    const std::size_t s = random_size(1, max_s, rng);
    std::vector<Point> centers = random_points(s, d, rng);
    std::vector<OutVector> coeffs;
    for (std::size_t j = 0; j < s; ++j) coeffs.push_back(random_complex_vector(k.output_dim(), rng));
    return RkhsElement(k, std::move(centers), std::move(coeffs));
  }

  RelativeElement random_relative(const KernelEval& k, std::size_t d, std::size_t max_s) {
    const std::size_t s = random_size(1, max_s, rng);
    std::vector<PointPair> pairs;
    std::vector<OutVector> coeffs;
    for (std::size_t j = 0; j < s; ++j) {
      pairs.push_back({random_point(d, rng), random_point(d, rng)});
      coeffs.push_back(random_complex_vector(k.output_dim(), rng));
    }
    return RelativeElement(k, std::move(pairs), std::move(coeffs));
  }
};

SuiteResult psd_suite(Context& ctx) {
  SuiteBuilder suite("psd", 1e-8);
  for (KernelFamily family : all_kernel_families()) {
    for (std::size_t t = 0; t < ctx.options.trials; ++t) {
      const std::size_t n = random_size(1, 12, ctx.rng);
      const std::size_t d = random_size(1, 3, ctx.rng);
      const std::size_t m = random_size(1, 4, ctx.rng);
      const KernelEval k = ctx.kernel(family, m);
      const auto points = random_points(n, d, ctx.rng);
      try {
        const PsdReport r = check_psd(k, points, ctx.options.tol);
        suite.record(std::max(0.0, -r.min_eigenvalue) / static_cast<double>(n * m));
      } catch (const NonHermitianError& e) {
        suite.record(e.distance());
        suite.fail(to_string(family) + ": " + e.what());
      }
    }
  }
  return suite.finish();
}

SuiteResult reproducing_suite(Context& ctx) {
  SuiteBuilder suite("reproducing", 1e-9);
  for (std::size_t t = 0; t < ctx.options.trials; ++t) {
    const std::size_t d = random_size(1, 3, ctx.rng);
    const std::size_t m = random_size(1, 3, ctx.rng);
    const KernelEval k = ctx.kernel(ctx.family(t), m);
    const RkhsElement f = ctx.random_span(k, d, 8);
    const Point x = random_point(d, ctx.rng);
    const OutVector y = random_complex_vector(m, ctx.rng);
    const Complex lhs = inner_product(f, RkhsElement::section(k, x, y));
    const Complex rhs = inner(evaluate(f, x), y);
    suite.record(std::abs(lhs - rhs));
  }
  return suite.finish();
}

SuiteResult relative_adjoint_suite(Context& ctx) {
  SuiteBuilder suite("relative_adjoint", 1e-9);
  for (std::size_t t = 0; t < ctx.options.trials; ++t) {
    const std::size_t d = random_size(1, 3, ctx.rng);
    const std::size_t m = random_size(1, 3, ctx.rng);
    const KernelEval k = ctx.kernel(ctx.family(t), m);
    const RkhsElement f = ctx.random_span(k, d, 6);
    const RelativeSection section(k, random_point(d, ctx.rng), random_point(d, ctx.rng));
    suite.record(
        (relative_pairing(section, f) - relative_adjoint(section, f)).cwiseAbs().maxCoeff());
  }
  return suite.finish();
}

SuiteResult cocycle_suite(Context& ctx) {
  SuiteBuilder suite("cocycle", 1e-10);
  for (KernelFamily family : all_kernel_families()) {
    for (std::size_t t = 0; t < ctx.options.trials; ++t) {
      const std::size_t d = random_size(1, 3, ctx.rng);
      const std::size_t m = random_size(1, 4, ctx.rng);
      const KernelEval k = ctx.kernel(family, m);
      const Point x1 = random_point(d, ctx.rng);
      const Point x2 = random_point(d, ctx.rng);
      const Point x3 = random_point(d, ctx.rng);
      const OutVector u = random_complex_vector(m, ctx.rng);
      const auto probes = default_probe_points(x1, x2, x3, ctx.rng);
      suite.record(cocycle_defect(k, x1, x2, x3, u, probes));
      // Closed cycle x3 = x1: antisymmetry of relative sections.
      suite.record(cocycle_defect(k, x1, x2, x1, u, probes));
    }
  }
  return suite.finish();
}

SuiteResult containment_suite(Context& ctx, SuiteResult& isometry) {
  SuiteBuilder suite("containment", 1e-10);
  SuiteBuilder iso("isometry", 1e-8);
  for (std::size_t t = 0; t < ctx.options.trials; ++t) {
    const std::size_t d = random_size(1, 3, ctx.rng);
    const std::size_t m = random_size(1, 3, ctx.rng);
    const KernelEval k = ctx.kernel(ctx.family(t), m);
    const RelativeElement g = ctx.random_relative(k, d, 6);
    suite.record(containment_residual(g, ctx.options.tol));
    suite.record(containment_pointwise_defect(g, random_points(10, d, ctx.rng)));
    try {
      const double nm = relative_norm(g, ctx.options.tol);
      const double nk = norm(expand(g), ctx.options.tol);
      iso.record(std::abs(nm - nk) / std::max({nm, nk, 1.0}));
    } catch (const Error& e) {
      iso.record(std::numeric_limits<double>::infinity());
      iso.fail(e.what());
    }
  }
  isometry = iso.finish();
  return suite.finish();
}

SuiteResult difference_fit_suite(Context& ctx) {
  SuiteBuilder suite("difference_fit", 1e-8);
  std::size_t fallbacks = 0;
  for (std::size_t t = 0; t < ctx.options.trials; ++t) {
    const std::size_t d = random_size(1, 3, ctx.rng);
    const std::size_t m = random_size(1, 3, ctx.rng);
    const KernelEval k = ctx.kernel(ctx.family(t), m);
    // Constraints generated from a ground-truth element are consistent.
    const RkhsElement truth = ctx.random_span(k, d, 6);
    const std::size_t s = random_size(1, 8, ctx.rng);
    std::vector<DifferenceConstraint> constraints;
    for (std::size_t j = 0; j < s; ++j) {
      const Point x = random_point(d, ctx.rng);
      const Point y = random_point(d, ctx.rng);
      constraints.push_back({x, y, evaluate(truth, y) - evaluate(truth, x)});
    }
    const DifferenceFit fit = fit_differences(k, constraints, 0.0, std::nullopt, ctx.options.tol);
    if (fit.info.pseudo_inverse) ++fallbacks;
    double worst = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      const RelativeSection section(k, constraints[j].x, constraints[j].y);
      const OutVector got = relative_adjoint(section, expand(fit.element));
      worst = std::max(worst, (got - constraints[j].delta).cwiseAbs().maxCoeff());
    }
    suite.record(worst);
  }
  suite.note("least-squares fallbacks: " + std::to_string(fallbacks));
  return suite.finish();
}

const std::vector<double> kSipExponents{1.5, 2.0, 3.0, 4.0};

SuiteResult sip_suite(Context& ctx) {
  SuiteBuilder suite("sip_axioms", 1e-10);
  for (double p : kSipExponents) {
    const std::size_t dim = random_size(1, 6, ctx.rng);
    const SipAxiomReport r = sip_axiom_report(SipSpace{p, dim}, ctx.options.sip_trials, ctx.rng(),
                                              HomogeneityForm::literal_real, ctx.options.tol);
    suite.record(std::max({r.linearity_defect, r.conj_homogeneity_defect, r.compatibility_defect}));
    if (!r.positivity_ok) suite.fail("positivity failed at p = " + std::to_string(p));
    if (r.cauchy_schwarz_violations > 0) {
      suite.fail(std::to_string(r.cauchy_schwarz_violations) +
                 " Cauchy-Schwarz violations at p = " + std::to_string(p));
    }
  }
  return suite.finish();
}

SuiteResult duality_suite(Context& ctx) {
  SuiteBuilder suite("duality", 1e-9);
  for (double p : kSipExponents) {
    for (std::size_t t = 0; t < ctx.options.duality_trials; ++t) {
      const std::size_t dim = random_size(1, 6, ctx.rng);
      const SipVector f(SipSpace{p, dim}, random_complex_vector(dim, ctx.rng));
      const DualNormCheck c = dual_norm_check(f, ctx.options.tol);
      suite.record(std::abs(c.primal - c.dual) / c.primal);
    }
  }
  return suite.finish();
}

SuiteResult p2_suite(Context& ctx) {
  SuiteBuilder suite("p2_reduction", 1e-12);
  for (std::size_t t = 0; t < ctx.options.duality_trials; ++t) {
    const std::size_t dim = random_size(1, 6, ctx.rng);
    const SipSpace space{2.0, dim};
    const SipVector f(space, random_complex_vector(dim, ctx.rng));
    const SipVector g(space, random_complex_vector(dim, ctx.rng));
    suite.record(std::abs(sip(f, g) - inner(f.entries(), g.entries())));
  }
  return suite.finish();
}

SuiteResult zeta_suite(Context& ctx) {
  SuiteBuilder suite("zeta", 1e-12);
  std::uniform_real_distribution<double> exponent(1.2, 5.0);
  double worst_ratio = 0.0;
  for (std::size_t t = 0; t < ctx.options.duality_trials; ++t) {
    const std::size_t n = random_size(3, 8, ctx.rng);
    const std::size_t d = random_size(1, 3, ctx.rng);
    const SipSpace lambda{exponent(ctx.rng), random_size(1, 4, ctx.rng)};
    const double p_b = exponent(ctx.rng);
    const auto domain = random_points(n, d, ctx.rng);
    auto sample = [&] {
      std::vector<SipVector> values;
      for (std::size_t i = 0; i < n; ++i) values.emplace_back(lambda, random_complex_vector(lambda.dim, ctx.rng));
      return BanachFunctionSample(domain, std::move(values), p_b);
    };
    const BanachFunctionSample f = sample();
    const BanachFunctionSample g = sample();
    const Point& x1 = domain[0];
    const Point& x2 = domain[1];
    const Point& x3 = domain[2];
    const Complex alpha(std::normal_distribution<double>()(ctx.rng), std::normal_distribution<double>()(ctx.rng));

    const SipVector lin = relative_evaluation(f.combine(alpha, g), x1, x2) -
                          (relative_evaluation(f, x1, x2) * alpha + relative_evaluation(g, x1, x2));
    suite.record(lin.entries().cwiseAbs().maxCoeff());

    const SipVector cyc = relative_evaluation(f, x1, x2) + relative_evaluation(f, x2, x3) -
                          relative_evaluation(f, x1, x3);
    suite.record(cyc.entries().cwiseAbs().maxCoeff());

    const double ratio = lp_norm(relative_evaluation(f, x1, x2)) / banach_norm(f);
    worst_ratio = std::max(worst_ratio, ratio);
    suite.record(std::max(0.0, ratio - relative_evaluation_bound(p_b)));
    if (ratio > 2.0) suite.fail("zeta ratio exceeds 2");
  }
  suite.note("max ||zeta(f)|| / ||f||_B = " + std::to_string(worst_ratio));
  return suite.finish();
}

}  // namespace

KernelEval with_injected_asymmetry(const KernelEval& kernel, double magnitude) {
  const auto m = static_cast<Eigen::Index>(kernel.output_dim());
  return KernelEval::custom(
      kernel.output_dim(),
      [kernel, magnitude, m](const Point& t, const Point& x) -> OpMatrix {
        const double skew = t.coords().sum() - x.coords().sum();
        return kernel(t, x) + OpMatrix::Identity(m, m) * Complex(magnitude * skew);
      },
      kernel.label() + "+asymmetry");
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::optional<std::string> VerifyReport::first_failure() const {
  for (const auto& s : suites) {
    if (!s.passed) return s.name;
  }
  return std::nullopt;
}

const SuiteResult& VerifyReport::suite(const std::string& name) const {
  for (const auto& s : suites) {
    if (s.name == name) return s;
  }
  throw InvalidArgument("no suite named '" + name + "'");
}

VerifyReport run_verification(const VerifyOptions& options) {
  options.tol.validate();
  std::mt19937_64 rng(options.seed);
  Context ctx{options, rng};

  VerifyReport report;
  report.seed = options.seed;
  report.suites.push_back(psd_suite(ctx));
  report.suites.push_back(reproducing_suite(ctx));
  report.suites.push_back(relative_adjoint_suite(ctx));
  report.suites.push_back(cocycle_suite(ctx));
  SuiteResult isometry;
  report.suites.push_back(containment_suite(ctx, isometry));
  report.suites.push_back(isometry);
  report.suites.push_back(difference_fit_suite(ctx));
  report.suites.push_back(sip_suite(ctx));
  report.suites.push_back(duality_suite(ctx));
  report.suites.push_back(p2_suite(ctx));
  report.suites.push_back(zeta_suite(ctx));
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : report.suites) {
    nlohmann::json j{{"name", s.name},
                     {"max_defect", s.max_defect},
                     {"threshold", s.threshold},
                     {"passed", s.passed},
                     {"trials", s.trials}};
    if (!s.note.empty()) j["note"] = s.note;
    suites.push_back(std::move(j));
  }
  const auto failure = report.first_failure();
  return nlohmann::json{{"seed", report.seed},
                        {"passed", report.passed()},
                        {"first_failure", failure ? nlohmann::json(*failure) : nlohmann::json()},
                        {"suites", std::move(suites)}};
}

}  // namespace rrk
