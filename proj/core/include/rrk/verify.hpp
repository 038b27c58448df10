#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrk/core.hpp"
#include "rrk/kernels.hpp"

namespace rrk {

struct VerifyOptions {
  std::uint64_t seed = 2016;
  /// Random instances per kernel-level suite.
  std::size_t trials = 100;
  /// Random pairs per p for the semi-inner-product suite.
  std::size_t sip_trials = 10000;
  /// Random vectors per p for the duality and p = 2 suites, and samples for zeta.
  std::size_t duality_trials = 1000;
  Tolerance tol;
  /// Fault injection: adds a non-Hermitian term to every kernel so the
  /// symmetry/PSD suite must fail.
  bool inject_asymmetry = false;
};

struct SuiteResult {
  std::string name;
  double max_defect = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::size_t trials = 0;
  std::string note;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool passed() const;
  std::optional<std::string> first_failure() const;
  const SuiteResult& suite(const std::string& name) const;
};

/// Runs every property suite with the given seed. Suite order and contents are
/// deterministic for fixed options.
///
///   psd              smallest block-Gram eigenvalue / (n m) >= -1e-8
///   reproducing      |<f, K_x y>_K - <f(x), y>_Y| <= 1e-9
///   relative_adjoint |<f, M_{x,y} e_i>_K - (f(y) - f(x))_i| <= 1e-9
///   cocycle          M_{x1,x2} + M_{x2,x3} - M_{x1,x3} at probes <= 1e-10
///   containment      ||g - expand(g)||_K and pointwise defect <= 1e-10
///   isometry         relative gap of ||g||_M and ||expand(g)||_K <= 1e-8
///   difference_fit   constraint residual at ridge 0 <= 1e-8
///   sip_axioms       axiom defects <= 1e-10, no Cauchy-Schwarz violation
///   duality          relative gap of ||f||_p and ||f*||_q <= 1e-9
///   p2_reduction     |[f, g] - <f, g>| at p = 2 <= 1e-12
///   zeta             linearity and cocycle defects <= 1e-12, ratio bound
VerifyReport run_verification(const VerifyOptions& options = {});

nlohmann::json to_json(const VerifyReport& report);

/// Wraps `kernel` with an additive term that breaks K(t, x) = K(x, t)^H.
KernelEval with_injected_asymmetry(const KernelEval& kernel, double magnitude = 1e-3);

}  // namespace rrk
