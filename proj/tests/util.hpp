// Shared test helpers: random polynomial generators, independent oracles
// (2x2 model-pair norm, quadrature), empirical-distribution distances, and
// the extremal-pair construction used by the tightness checks. Everything
// here stays independent of the library code paths it is used to verify.

#ifndef TWOPROJ_TESTS_UTIL_HPP
#define TWOPROJ_TESTS_UTIL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "twoproj/ncpoly.hpp"
#include "twoproj/pairs.hpp"
#include "twoproj/psi.hpp"
#include "twoproj/randmat.hpp"

namespace testutil {

using cplx = std::complex<double>;
using twoproj::Coeff;
using twoproj::NcPoly;
using twoproj::RandomStream;
using twoproj::Rational;
using twoproj::Word;

// --------------------------------------------------------------------------
// Random generators (exact rational-complex coefficients).

inline Coeff random_coeff(RandomStream& rng, bool allow_imag = true) {
  auto small = [&](void) -> Rational {
    long long num = static_cast<long long>(rng.next_u64() % 9) - 4;
    const long long dens[] = {1, 2, 4, 5, 10};
    return *Rational::make(num, dens[rng.next_u64() % 5]);
  };
  Rational re = small();
  Rational im = allow_imag && (rng.next_u64() % 2 == 0) ? small() : Rational{};
  return Coeff::rational(re, im);
}

inline Word random_word(RandomStream& rng, unsigned max_len) {
  Word w;
  w.length = static_cast<std::uint32_t>(rng.next_u64() % (max_len + 1));
  w.first = (rng.next_u64() % 2 == 0) ? Word::Letter::X : Word::Letter::Y;
  return w;
}

inline NcPoly random_poly(RandomStream& rng, unsigned max_len,
                          unsigned max_terms) {
  NcPoly p;
  unsigned terms = 1 + static_cast<unsigned>(rng.next_u64() % max_terms);
  for (unsigned i = 0; i < terms; ++i)
    p = p + NcPoly::monomial(random_word(rng, max_len), random_coeff(rng));
  return p;
}

/// Random element of the abelianization kernel: a (xy - yx) b is always in
/// the kernel because the quotient map is multiplicative.
inline NcPoly random_kernel_poly(RandomStream& rng, unsigned max_len) {
  NcPoly comm = NcPoly::x() * NcPoly::y() - NcPoly::y() * NcPoly::x();
  return random_poly(rng, max_len, 2) * comm * random_poly(rng, max_len, 2);
}

// --------------------------------------------------------------------------
// Independent 2x2 oracle: evaluate f on the model pair
//   P_t = [[1,0],[0,0]],  Q_t = [[t, r],[r, 1-t]],  r = sqrt(t(1-t)),
// with plain 2x2 complex arithmetic, and take the largest singular value via
// the closed-form eigenvalues of A A^*.

using Mat2 = std::array<cplx, 4>;  // row-major [a b; c d]

inline Mat2 mul2(const Mat2& A, const Mat2& B) {
  return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
          A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
}

inline Mat2 eval2x2(const NcPoly& f, double t) {
  const double r = std::sqrt(t * (1.0 - t));
  const Mat2 P = {1.0, 0.0, 0.0, 0.0};
  const Mat2 Q = {t, r, r, 1.0 - t};
  Mat2 acc = {0.0, 0.0, 0.0, 0.0};
  for (const auto& [w, c] : f.terms()) {
    Mat2 prod = {1.0, 0.0, 0.0, 1.0};
    Word::Letter letter = w.first;
    for (std::uint32_t k = 0; k < w.length; ++k) {
      prod = mul2(prod, letter == Word::Letter::X ? P : Q);
      letter = Word::other(letter);
    }
    cplx cv = c.value();
    for (int i = 0; i < 4; ++i) acc[i] += cv * prod[i];
  }
  return acc;
}

inline double opnorm2x2(const Mat2& A) {
  // H = A A^*; largest eigenvalue of a 2x2 Hermitian PSD matrix, with the
  // discriminant in cancellation-free sum-of-squares form.
  double h00 = std::norm(A[0]) + std::norm(A[1]);
  double h11 = std::norm(A[2]) + std::norm(A[3]);
  cplx h01 = A[0] * std::conj(A[2]) + A[1] * std::conj(A[3]);
  double tr = h00 + h11;
  double disc = (h00 - h11) * (h00 - h11) + 4.0 * std::norm(h01);
  return std::sqrt(0.5 * (tr + std::sqrt(disc)));
}

inline double model_pair_norm(const NcPoly& f, double t) {
  return opnorm2x2(eval2x2(f, t));
}

// --------------------------------------------------------------------------
// Simple fixed-depth adaptive Simpson quadrature for test-side integrals.

inline double integrate_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return integrate_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         integrate_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return integrate_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Quadrature oracle for the arc-indicator Fourier coefficient: direct
/// integration of e^{-ik theta}/(2 pi) over
/// (arccos(2a), pi/2) u (-pi/2, -arccos(2a)).
inline cplx fourier_arc_oracle(double alpha, long long k) {
  double a = std::acos(std::min(2.0 * alpha, 1.0));
  auto re = [&](double th) { return std::cos(k * th); };
  auto im = [&](double th) { return -std::sin(k * th); };
  double rr = integrate(re, a, 0.5 * M_PI) + integrate(re, -0.5 * M_PI, -a);
  double ii = integrate(im, a, 0.5 * M_PI) + integrate(im, -0.5 * M_PI, -a);
  return cplx(rr, ii) / (2.0 * M_PI);
}

// --------------------------------------------------------------------------
// Empirical-distribution distances.

/// One-sample Kolmogorov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double F = cdf(sample[i]);
    d = std::max(d, std::abs((i + 1) / n - F));
    d = std::max(d, std::abs(i / n - F));
  }
  return d;
}

/// Two-sample Kolmogorov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, jdx = 0;
  while (i < a.size() && jdx < b.size()) {
    double x = std::min(a[i], b[jdx]);
    while (i < a.size() && a[i] <= x) ++i;
    while (jdx < b.size() && b[jdx] <= x) ++jdx;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(jdx) / b.size()));
  }
  return d;
}

// --------------------------------------------------------------------------
// Extremal partner: given f and a fixed projection P (not 0 or I), build Q
// whose pair with P attains the universal bound. An interior maximizer of
// psi is planted as a reduced angle on a 2x2 block; an endpoint maximizer is
// realized by Q = P or Q = I - P depending on which corner wins.

inline Eigen::MatrixXcd extremal_partner(const NcPoly& f,
                                         const twoproj::ProjectionMatrix& P) {
  twoproj::MaxResult mr = twoproj::m_f(f);
  const int n = P.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P.mat);
  // Ascending eigenvalues: first column spans the kernel, last the range.
  Eigen::VectorXcd v_ker = es.eigenvectors().col(0);
  Eigen::VectorXcd v_ran = es.eigenvectors().col(n - 1);

  if (mr.argmax_t > 0.0 && mr.argmax_t < 1.0) {
    Eigen::VectorXcd u = std::sqrt(mr.argmax_t) * v_ran +
                         std::sqrt(1.0 - mr.argmax_t) * v_ker;
    return u * u.adjoint();
  }
  twoproj::GContext g = twoproj::g_context(f);
  double diag_max = std::max(std::abs(g.a00()), std::abs(g.a11()));
  double anti_max = std::max(std::abs(g.a01()), std::abs(g.a10()));
  if (diag_max >= anti_max) return P.mat;
  return Eigen::MatrixXcd::Identity(n, n) - P.mat;
}

}  // namespace testutil

#endif
