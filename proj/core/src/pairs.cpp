#include "twoproj/pairs.hpp"

#include <algorithm>
#include <cmath>

#include "twoproj/errors.hpp"
#include "twoproj/psi.hpp"

namespace twoproj {

ProjectionMatrix ProjectionMatrix::checked(Eigen::MatrixXcd m) {
  const auto n = m.rows();
  if (n != m.cols() || n == 0)
    throw domain_error("projection matrix must be square and nonempty");
  const double scale = 1e-10 * static_cast<double>(n);
  if ((m - m.adjoint()).norm() > scale)
    throw domain_error("projection matrix is not Hermitian");
  if ((m * m - m).norm() > scale)
    throw domain_error("projection matrix is not idempotent");
  const double tr = m.trace().real();
  const double rounded = std::round(tr);
  if (std::abs(tr - rounded) >= 1e-8)
    throw domain_error("projection trace is not an integer");
  ProjectionMatrix p;
  p.mat = std::move(m);
  p.rank = static_cast<int>(rounded);
  return p;
}

namespace {

// Orthonormal basis of the range: eigenvectors of the spectral decomposition
// with eigenvalue near 1. Uniformly accurate even for nearly degenerate
// projections.
Eigen::MatrixXcd range_basis(const ProjectionMatrix& p) {
  if (p.rank == 0) return Eigen::MatrixXcd(p.dim(), 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p.mat);
  if (es.info() != Eigen::Success)
    throw internal_error("eigendecomposition of projection failed");
  // Eigenvalues ascending: the last `rank` columns span the range.
  return es.eigenvectors().rightCols(p.rank);
}

}  // namespace

PairAnalysis analyze(const ProjectionMatrix& P, const ProjectionMatrix& Q,
                     double eps_angle) {
  if (P.dim() != Q.dim())
    throw domain_error("projection dimensions do not match");
  const int n = P.dim();
  const int rp = P.rank, rq = Q.rank;

  PairAnalysis a;
  if (rp > 0 && rq > 0) {
    Eigen::MatrixXcd G = range_basis(P).adjoint() * range_basis(Q);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    for (double s : svd.singularValues()) {
      double c2 = std::clamp(s * s, 0.0, 1.0);
      if (c2 >= 1.0 - eps_angle)
        ++a.m00;
      else if (c2 > eps_angle)
        a.reduced_cos2.push_back(c2);
      // c2 <= eps_angle: a right-angle direction, counted via the ranks.
    }
  }
  a.m = static_cast<int>(a.reduced_cos2.size());
  a.m01 = rp - a.m00 - a.m;
  a.m10 = rq - a.m00 - a.m;
  a.m11 = n - a.m00 - a.m01 - a.m10 - 2 * a.m;
  if (a.m01 < 0 || a.m10 < 0 || a.m11 < 0)
    throw internal_error("pair analysis produced negative block dimensions");
  std::sort(a.reduced_cos2.begin(), a.reduced_cos2.end(),
            std::greater<double>());
  return a;
}

Eigen::MatrixXcd eval_matrix(const NcPoly& f, const Eigen::MatrixXcd& P,
                             const Eigen::MatrixXcd& Q) {
  const auto n = P.rows();
  if (P.cols() != n || Q.rows() != n || Q.cols() != n)
    throw domain_error("eval_matrix requires square matrices of equal size");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [w, c] : f.terms()) {
    if (w.is_unit()) {
      acc += c.value() * Eigen::MatrixXcd::Identity(n, n);
      continue;
    }
    Word::Letter letter = w.first;
    Eigen::MatrixXcd prod = (letter == Word::Letter::X) ? P : Q;
    for (std::uint32_t k = 1; k < w.length; ++k) {
      letter = Word::other(letter);
      prod = prod * ((letter == Word::Letter::X) ? P : Q);
    }
    acc += c.value() * prod;
  }
  return acc;
}

double op_norm(const Eigen::MatrixXcd& A) {
  const auto n = A.rows();
  if (n == 0 || A.cols() == 0) return 0.0;
  const double scale = A.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  // Hermitian and skew-Hermitian cases avoid squaring the matrix.
  const double sym_tol = 1e-13 * scale;
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() <= sym_tol ||
      (A + A.adjoint()).cwiseAbs().maxCoeff() <= sym_tol) {
    Eigen::MatrixXcd H =
        (A - A.adjoint()).cwiseAbs().maxCoeff() <= sym_tol
            ? A
            : Eigen::MatrixXcd(std::complex<double>(0, 1) * A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        H, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }

  if (n <= 64 && A.cols() <= 64) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
  }
  Eigen::MatrixXcd AAs = A * A.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(AAs,
                                                     Eigen::EigenvaluesOnly);
  double lam = es.eigenvalues()(es.eigenvalues().size() - 1);
  return std::sqrt(std::max(lam, 0.0));
}

double norm_via_formula(const NcPoly& f, const ProjectionMatrix& P,
                        const ProjectionMatrix& Q, double eps_angle) {
  PairAnalysis a = analyze(P, Q, eps_angle);
  GContext g = g_context(f);
  double best = 0.0;
  const int dims[4] = {a.m00, a.m01, a.m10, a.m11};
  for (int lk = 0; lk < 4; ++lk)
    if (dims[lk] > 0) best = std::max(best, std::abs(g.corners[lk]));
  for (double c2 : a.reduced_cos2) best = std::max(best, psi_eval(g, c2));
  return best;
}

}  // namespace twoproj
