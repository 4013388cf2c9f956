#ifndef TWOPROJ_SPIN_HPP
#define TWOPROJ_SPIN_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "twoproj/pairs.hpp"

namespace twoproj {

/// The three generators of the n-dimensional irreducible unitary
/// representation of SU(2) in the eigenbasis of the third generator, ordered
/// by descending eigenvalue (e_j, e_{j-1}, ..., e_{-j} with 2j + 1 = n), plus
/// the eigendecomposition of the first generator.
///
/// J3 is diagonal, J1 is real symmetric tridiagonal with couplings
/// nu(j,m)/2 = sqrt((j+m)(j-m+1))/2, and [J1, J2] = i J3 cyclically. The
/// spectrum of each generator is {j, j-1, ..., -j}; computed eigenvalues of
/// J1 are snapped to that grid (they land within 1e-9).
class SpinSystem {
 public:
  explicit SpinSystem(int n);

  int n() const { return n_; }
  double j() const { return j_; }
  /// Dense generator matrices, built on demand from the coupling strengths.
  Eigen::MatrixXcd J1() const;
  Eigen::MatrixXcd J2() const;
  Eigen::MatrixXcd J3() const;

  /// Ascending, snapped to the exact grid {-j, ..., j}.
  const Eigen::VectorXd& axis1_eigenvalues() const { return evals_; }
  /// Real orthonormal eigenvectors, column k for eigenvalue evals_(k).
  const Eigen::MatrixXd& axis1_eigenvectors() const { return evecs_; }

  /// Basis index of the J3 eigenvalue label m (index 0 is m = j).
  int index_of(double m) const;

 private:
  int n_;
  double j_;
  Eigen::VectorXd sub_;  // tridiagonal couplings of J1
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
};

/// floor(alpha * n), the rank of the spectral selection; throws domain_error
/// when alpha is outside (0, 1/2] or the selection would be empty.
int level_count(int n, double alpha);

/// Spectral projection of J_axis (axis 1 or 3) onto the interval (0, c)
/// containing exactly floor(alpha*n) spectrum points, i.e. onto the
/// floor(alpha*n) smallest positive eigenvalues.
ProjectionMatrix spectral_projection(const SpinSystem& sys, int axis,
                                     double alpha);

/// Orthonormal eigenvector frame (n x count) spanning the axis-1 selection.
Eigen::MatrixXd axis1_frame(const SpinSystem& sys, double alpha);

/// Dense real form of the axis-1 spectral projection (frame * frame^T).
Eigen::MatrixXd axis1_projection_real(const SpinSystem& sys, double alpha);

/// Rotation matrix element d^j_{m,0}(pi/2) for integer j, evaluated through
/// log-Gamma:
///   (-1)^{(j+m)/2} 2^{-j} sqrt(binom(j+m,(j+m)/2) binom(j-m,(j-m)/2))
/// when j - m is even, and 0 when j - m is odd.
double wigner_d_half_pi(double j, double m);

/// Closed-form entry of the half-spectrum projection of J1 in the J3
/// eigenbasis. Covers: the diagonal (both integer and half-integer j), even
/// nonzero index differences (both), and odd differences for integer j.
/// Returns nullopt for the one uncovered case (half-integer j with odd
/// difference), where diagonalization is the only route.
std::optional<std::complex<double>> p1_entry_closed(double j, double mp,
                                                    double m);

/// k-th Fourier coefficient of the indicator of the arc
/// {0 < Re zeta < 2*alpha} of the unit circle, 0 < alpha <= 1/2:
///   (sin(k pi/2) - sin(k arccos(2 alpha))) / (pi k)   (k != 0),
///   (pi/2 - arccos(2 alpha)) / pi                     (k == 0).
std::complex<double> fourier_coeff_indicator(double alpha, long long k);

/// |entry - limit| for the (mp, m) entry of the axis-1 spectral projection at
/// each n in n_list (all of one parity), where the limit is the Fourier
/// coefficient of the arc indicator at m - mp. Entries come from
/// diagonalization; labels are the J3 eigenvalue labels of the basis vectors.
std::vector<double> entry_limit_residual(double alpha, double mp, double m,
                                         const std::vector<int>& n_list);

}  // namespace twoproj

#endif
