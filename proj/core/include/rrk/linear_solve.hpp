#pragma once

#include <limits>

#include "rrk/core.hpp"

namespace rrk {

/// Diagnostics of a Hermitian solve.
struct SolveInfo {
  bool pseudo_inverse = false;  // least-squares fallback was used
  double condition = 0.0;       // |lambda|_max / |lambda|_min, +inf when singular
  double smallest_singular_value = 0.0;
  double residual = 0.0;        // || A x - b ||_2
  bool refined = false;         // pseudo-inverse answer corrected by an LDL^H step
};

struct SolveResult {
  Eigen::VectorXcd solution;
  SolveInfo info;
};

inline constexpr double kMaxCondition = 1e12;
inline constexpr double kPseudoInverseRcond = 1e-15;

/// Solves A x = b for Hermitian positive semidefinite A.
///
/// Uses an LDL^H factorization while the spectral condition estimate stays at
/// or below `max_condition`; otherwise returns the minimum-norm least-squares
/// solution from the truncated eigendecomposition, discarding eigenvalues
/// below rcond * |lambda|_max.
///
/// rcond sits well below 1 / max_condition: on consistent but numerically
/// singular systems a coarser truncation drops components the right-hand side
/// still carries at the sqrt(lambda) level.
///
/// Even so, eigenvalues at roundoff level can carry real right-hand-side
/// components. When some entry of the pseudo-inverse residual exceeds
/// `refine_above`, a few refinement steps through a pivoted LDL^H
/// factorization are tried, each kept only if it at least halves the residual.
/// Refinement gives up the minimum-norm property, so exactly singular
/// consistent systems (residual at roundoff) should stay below the threshold.
SolveResult solve_hermitian(const ComplexMatrix& a, const Eigen::VectorXcd& b,
                            double max_condition = kMaxCondition,
                            double rcond = kPseudoInverseRcond,
                            double refine_above = std::numeric_limits<double>::infinity());

}  // namespace rrk
