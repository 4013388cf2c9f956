#ifndef TWOPROJ_PAIRS_HPP
#define TWOPROJ_PAIRS_HPP

#include <Eigen/Dense>
#include <vector>

#include "twoproj/ncpoly.hpp"

namespace twoproj {

/// Validated orthogonal projection matrix. Construction checks Hermiticity,
/// idempotency (Frobenius residual <= 1e-10 * n) and that the trace is an
/// integer within 1e-8; the rank is that integer.
struct ProjectionMatrix {
  Eigen::MatrixXcd mat;
  int rank = 0;

  static ProjectionMatrix checked(Eigen::MatrixXcd m);
  int dim() const { return static_cast<int>(mat.rows()); }
};

/// Canonical-form bookkeeping of a pair: dimensions of the four commuting
/// blocks, the generic dimension m, and the squared cosines of the reduced
/// principal angles (eigenvalues of I - H), strictly inside (0,1), descending.
struct PairAnalysis {
  int m00 = 0, m01 = 0, m10 = 0, m11 = 0, m = 0;
  std::vector<double> reduced_cos2;
};

/// Classification threshold for angles indistinguishable from 0 or pi/2.
constexpr double kAngleEps = 1e-8;

/// Computes the canonical dimensions and reduced principal angles of a pair
/// from the singular values of the cross-Gram matrix of orthonormal range
/// bases (taken from the spectral decompositions of P and Q).
PairAnalysis analyze(const ProjectionMatrix& P, const ProjectionMatrix& Q,
                     double eps_angle = kAngleEps);

/// Evaluates f(P, Q) by word-by-word matrix products.
Eigen::MatrixXcd eval_matrix(const NcPoly& f, const Eigen::MatrixXcd& P,
                             const Eigen::MatrixXcd& Q);

/// Largest singular value.
double op_norm(const Eigen::MatrixXcd& A);

/// Operator norm of f(P, Q) through the spectral formula: max of psi over the
/// reduced cos^2 values joined with the corner moduli of the nonempty blocks.
/// Agrees with op_norm(eval_matrix(f, P, Q)) to ~1e-8.
double norm_via_formula(const NcPoly& f, const ProjectionMatrix& P,
                        const ProjectionMatrix& Q,
                        double eps_angle = kAngleEps);

}  // namespace twoproj

#endif
