#include "rrk/linear_solve.hpp"

#include <cmath>
#include <limits>

namespace rrk {

namespace {
constexpr int kRefinementSteps = 4;
}  // namespace

SolveResult solve_hermitian(const ComplexMatrix& a, const Eigen::VectorXcd& b,
                            double max_condition, double rcond, double refine_above) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve_hermitian: matrix not square");
  if (a.rows() != b.size()) throw DimensionMismatch("solve_hermitian: rhs size mismatch");

  SolveResult out;
  const Eigen::Index n = a.rows();
  if (n == 0) {
    out.solution = Eigen::VectorXcd(0);
    return out;
  }

  const ComplexMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  if (eig.info() != Eigen::Success) throw Error("solve_hermitian: eigensolver failed");

  const Eigen::VectorXd magnitudes = eig.eigenvalues().cwiseAbs();
  const double largest = magnitudes.maxCoeff();
  const double smallest = magnitudes.minCoeff();
  out.info.smallest_singular_value = smallest;
  out.info.condition =
      smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();

  const bool definite = eig.eigenvalues().minCoeff() > 0.0;
  if (definite && out.info.condition <= max_condition) {
    Eigen::LDLT<ComplexMatrix> ldlt(h);
    if (ldlt.info() == Eigen::Success) {
      out.solution = ldlt.solve(b);
    }
  }
  if (out.solution.size() != n) {
    out.info.pseudo_inverse = true;
    const double cutoff = largest * rcond;
    Eigen::VectorXcd projected = eig.eigenvectors().adjoint() * b;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lambda = eig.eigenvalues()[i];
      projected[i] = std::abs(lambda) > cutoff && largest > 0.0 ? projected[i] / lambda
                                                                 : Complex(0.0);
    }
    out.solution = eig.eigenvectors() * projected;

    // Iterative refinement through a pivoted LDL^H factorization.
    Eigen::VectorXcd r = b - a * out.solution;
    if (r.cwiseAbs().maxCoeff() > refine_above) {
      Eigen::LDLT<ComplexMatrix> ldlt(h);
      for (int step = 0; step < kRefinementSteps; ++step) {
        const Eigen::VectorXcd candidate = out.solution + ldlt.solve(r);
        const Eigen::VectorXcd r_next = b - a * candidate;
        if (!candidate.allFinite() || r_next.norm() > 0.5 * r.norm()) break;
        out.solution = candidate;
        out.info.refined = true;
        r = r_next;
      }
    }
  }
  out.info.residual = (a * out.solution - b).norm();
  return out;
}

}  // namespace rrk
