#include "twoproj/spin.hpp"

#include <algorithm>
#include <cmath>

#include "twoproj/errors.hpp"

namespace twoproj {

namespace {

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

// floor with a guard against representation error in alpha * n.
int floor_count(double x) {
  double f = std::floor(x);
  if (x - f > 1.0 - 1e-9) f += 1.0;
  return static_cast<int>(f);
}

}  // namespace

SpinSystem::SpinSystem(int n) : n_(n), j_(0.5 * (n - 1)) {
  if (n < 2) throw domain_error("spin system needs dimension n >= 2");

  sub_.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    double m = j_ - i;
    sub_(i) = 0.5 * std::sqrt((j_ + m) * (j_ - m + 1.0));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(Eigen::VectorXd::Zero(n), sub_,
                            Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw internal_error("tridiagonal eigensolve failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();

  // Snap to the exact grid {-j, ..., j}; the k-th ascending eigenvalue must
  // land on -j + k.
  for (int k = 0; k < n; ++k) {
    double target = -j_ + k;
    if (std::abs(evals_(k) - target) > 1e-9)
      throw internal_error("spin eigenvalue off the half-integer grid");
    evals_(k) = target;
  }
}

Eigen::MatrixXcd SpinSystem::J1() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (int i = 0; i + 1 < n_; ++i) {
    m(i, i + 1) = sub_(i);
    m(i + 1, i) = sub_(i);
  }
  return m;
}

Eigen::MatrixXcd SpinSystem::J2() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (int i = 0; i + 1 < n_; ++i) {
    m(i, i + 1) = std::complex<double>(0.0, -sub_(i));
    m(i + 1, i) = std::complex<double>(0.0, sub_(i));
  }
  return m;
}

Eigen::MatrixXcd SpinSystem::J3() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) m(i, i) = j_ - i;
  return m;
}

int SpinSystem::index_of(double m) const {
  double idx = j_ - m;
  if (!near_integer(idx) || idx < -0.5 || idx > n_ - 0.5)
    throw domain_error("label is not a spectrum point of this system");
  return static_cast<int>(std::llround(idx));
}

int level_count(int n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw domain_error("alpha must lie in (0, 1/2]");
  int count = floor_count(alpha * n);
  if (count < 1) throw domain_error("spectral selection is empty");
  return count;
}

namespace {

// Largest selected level: levels are {base, base+1, ..., base+count-1} with
// base = 1/2 for even n and base = 1 for odd n.
double selection_cutoff(const SpinSystem& sys, int count) {
  double base = (sys.n() % 2 == 0) ? 0.5 : 1.0;
  return base + (count - 1);
}

}  // namespace

Eigen::MatrixXd axis1_frame(const SpinSystem& sys, double alpha) {
  int count = level_count(sys.n(), alpha);
  double cutoff = selection_cutoff(sys, count);
  // Eigenvalues ascending: positives occupy a contiguous tail block.
  int first = -1;
  const auto& ev = sys.axis1_eigenvalues();
  for (int k = 0; k < sys.n(); ++k) {
    if (ev(k) > 0.0) {
      first = k;
      break;
    }
  }
  if (first < 0 || first + count > sys.n())
    throw internal_error("selection exceeds available positive levels");
  if (ev(first + count - 1) > cutoff + 0.25)
    throw internal_error("selected levels disagree with cutoff");
  return sys.axis1_eigenvectors().middleCols(first, count);
}

Eigen::MatrixXd axis1_projection_real(const SpinSystem& sys, double alpha) {
  Eigen::MatrixXd F = axis1_frame(sys, alpha);
  return F * F.transpose();
}

ProjectionMatrix spectral_projection(const SpinSystem& sys, int axis,
                                     double alpha) {
  if (axis != 1 && axis != 3)
    throw domain_error("axis must be 1 or 3");
  int count = level_count(sys.n(), alpha);
  const int n = sys.n();
  if (axis == 3) {
    double cutoff = selection_cutoff(sys, count);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double m = sys.j() - i;
      if (m > 0.0 && m <= cutoff + 0.25) P(i, i) = 1.0;
    }
    ProjectionMatrix p;
    p.mat = std::move(P);
    p.rank = count;
    return p;
  }
  Eigen::MatrixXd Pr = axis1_projection_real(sys, alpha);
  ProjectionMatrix p;
  p.mat = Pr.cast<std::complex<double>>();
  p.rank = count;
  return p;
}

double wigner_d_half_pi(double j, double m) {
  if (!near_integer(j) || j < -0.5)
    throw domain_error("wigner_d_half_pi requires integer j >= 0");
  if (!near_integer(m) || std::abs(m) > j + 1e-9)
    throw domain_error("wigner_d_half_pi requires integer |m| <= j");
  long long ji = std::llround(j), mi = std::llround(m);
  long long jp = ji + mi, jm = ji - mi;
  if (jm % 2 != 0) return 0.0;
  // log binom(a, a/2) = lgamma(a+1) - 2 lgamma(a/2 + 1)
  auto log_central = [](long long a) {
    return std::lgamma(static_cast<double>(a) + 1.0) -
           2.0 * std::lgamma(0.5 * static_cast<double>(a) + 1.0);
  };
  double lg = 0.5 * (log_central(jp) + log_central(jm)) -
              static_cast<double>(ji) * std::log(2.0);
  double sign = (((jp / 2) % 2) == 0) ? 1.0 : -1.0;
  return sign * std::exp(lg);
}

namespace {

double nu(double j, double m) { return std::sqrt((j + m) * (j - m + 1.0)); }

}  // namespace

std::optional<std::complex<double>> p1_entry_closed(double j, double mp,
                                                    double m) {
  if (!near_integer(2 * j) || j < 0.5)
    throw domain_error("j must be a positive half-integer");
  if (!near_integer(j - m) || !near_integer(j - mp))
    throw domain_error("labels must be spectrum points for this j");
  if (std::abs(m) > j + 1e-9 || std::abs(mp) > j + 1e-9)
    throw domain_error("labels out of range");

  const bool integer_j = near_integer(j);
  const long long diff = std::llround(mp - m);

  if (diff == 0) {
    if (!integer_j) return std::complex<double>(0.5, 0.0);
    double d = wigner_d_half_pi(j, m);
    return std::complex<double>(0.5 - 0.5 * d * d, 0.0);
  }
  if (diff % 2 == 0) {
    if (!integer_j) return std::complex<double>(0.0, 0.0);
    return std::complex<double>(
        -0.5 * wigner_d_half_pi(j, mp) * wigner_d_half_pi(j, m), 0.0);
  }
  if (!integer_j) return std::nullopt;  // no closed form; diagonalize instead
  // The lowering coefficients vanish at m = -j, where the shifted index
  // would leave the spectrum; skip those terms outright.
  double term1 = 0.0, term2 = 0.0;
  if (nu(j, m) > 0.0)
    term1 = nu(j, m) * wigner_d_half_pi(j, mp) * wigner_d_half_pi(j, m - 1);
  if (nu(j, mp) > 0.0)
    term2 = nu(j, mp) * wigner_d_half_pi(j, mp - 1) * wigner_d_half_pi(j, m);
  return std::complex<double>((term1 - term2) / (2.0 * (m - mp)), 0.0);
}

std::complex<double> fourier_coeff_indicator(double alpha, long long k) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw domain_error("alpha must lie in (0, 1/2]");
  double a = std::acos(std::clamp(2.0 * alpha, -1.0, 1.0));
  if (k == 0) return {(0.5 * M_PI - a) / M_PI, 0.0};
  double kd = static_cast<double>(k);
  return {(std::sin(kd * 0.5 * M_PI) - std::sin(kd * a)) / (M_PI * kd), 0.0};
}

std::vector<double> entry_limit_residual(double alpha, double mp, double m,
                                         const std::vector<int>& n_list) {
  if (n_list.empty()) throw domain_error("n_list is empty");
  for (int n : n_list)
    if ((n % 2) != (n_list.front() % 2))
      throw domain_error("all n must share parity");
  {
    // Labels must be valid for the smallest n in the list.
    int n_min = *std::min_element(n_list.begin(), n_list.end());
    SpinSystem probe(n_min);
    probe.index_of(mp);
    probe.index_of(m);
  }
  double limit = fourier_coeff_indicator(alpha, std::llround(m - mp)).real();

  std::vector<double> residuals;
  residuals.reserve(n_list.size());
  for (int n : n_list) {
    SpinSystem sys(n);
    Eigen::MatrixXd F = axis1_frame(sys, alpha);
    double entry = F.row(sys.index_of(mp)).dot(F.row(sys.index_of(m)));
    residuals.push_back(std::abs(entry - limit));
  }
  return residuals;
}

}  // namespace twoproj
