#include "twoproj/concentration.hpp"

#include <algorithm>
#include <cmath>

#include "twoproj/errors.hpp"

namespace twoproj {

namespace {

constexpr double kEigSlack = 1e-9;

std::vector<int> window_indices(const SpinSystem& sys, double a, double b) {
  if (!(-1.0 <= a && a < b && b <= 1.0))
    throw domain_error("window requires -1 <= a < b <= 1");
  if (a <= -1.0 && b >= 1.0)
    throw domain_error("window must exclude one end of the spectrum");
  std::vector<int> idx;
  const double j = sys.j();
  for (int i = 0; i < sys.n(); ++i) {
    double m = j - i;
    if (m > a * j && m < b * j) idx.push_back(i);
  }
  if (idx.empty()) throw domain_error("window holds no spectrum point");
  return idx;
}

std::vector<int> alpha_indices(const SpinSystem& sys, double alpha) {
  int count = level_count(sys.n(), alpha);
  double base = (sys.n() % 2 == 0) ? 0.5 : 1.0;
  double cutoff = base + (count - 1);
  std::vector<int> idx;
  const double j = sys.j();
  for (int i = 0; i < sys.n(); ++i) {
    double m = j - i;
    if (m > 0.0 && m <= cutoff + 0.25) idx.push_back(i);
  }
  if (static_cast<int>(idx.size()) != count)
    throw internal_error("level selection mismatch");
  return idx;
}

// Half-spectrum axis-1 frame (alpha = 1/2): all positive levels.
Eigen::MatrixXd half_frame(const SpinSystem& sys) {
  return axis1_frame(sys, 0.5);
}

ConcentrationReport build_report(const SpinSystem& sys,
                                 const std::vector<int>& w, double a,
                                 double b) {
  Eigen::MatrixXd F = half_frame(sys);
  const int nw = static_cast<int>(w.size());
  Eigen::MatrixXd Fw(nw, F.cols());
  for (int r = 0; r < nw; ++r) Fw.row(r) = F.row(w[r]);

  Eigen::MatrixXd R = Fw * Fw.transpose();

  ConcentrationReport rep;
  rep.n = sys.n();
  rep.a = a;
  rep.b = b;
  rep.rank = nw;
  rep.trace_R = R.trace();
  rep.trace_R2 = R.squaredNorm();
  rep.sum_lambda_one_minus_lambda = rep.trace_R - rep.trace_R2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw internal_error("window eigensolve failed");
  rep.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + nw);
  std::reverse(rep.eigenvalues.begin(), rep.eigenvalues.end());
  for (double v : rep.eigenvalues)
    if (v < -kEigSlack || v > 1.0 + kEigSlack)
      throw internal_error("compression eigenvalue outside [0,1]");
  return rep;
}

double offdiag_from_indices(const SpinSystem& sys, const std::vector<int>& w) {
  Eigen::MatrixXd F = half_frame(sys);
  const int n = sys.n();
  const int nw = static_cast<int>(w.size());
  std::vector<char> inw(n, 0);
  for (int i : w) inw[i] = 1;
  Eigen::MatrixXd Fw(nw, F.cols());
  Eigen::MatrixXd Fc(n - nw, F.cols());
  int rw = 0, rc = 0;
  for (int i = 0; i < n; ++i) {
    if (inw[i])
      Fw.row(rw++) = F.row(i);
    else
      Fc.row(rc++) = F.row(i);
  }
  return (Fc * Fw.transpose()).squaredNorm();
}

}  // namespace

int ConcentrationReport::count_closed(double s, double t) const {
  int c = 0;
  for (double v : eigenvalues) {
    double x = std::clamp(v, 0.0, 1.0);
    if (x >= s && x <= t) ++c;
  }
  return c;
}

int ConcentrationReport::count_below(double t) const {
  int c = 0;
  for (double v : eigenvalues)
    if (std::clamp(v, 0.0, 1.0) < t) ++c;
  return c;
}

int ConcentrationReport::count_above(double s) const {
  int c = 0;
  for (double v : eigenvalues)
    if (std::clamp(v, 0.0, 1.0) > s) ++c;
  return c;
}

ConcentrationReport report(const SpinSystem& sys, double a, double b) {
  return build_report(sys, window_indices(sys, a, b), a, b);
}

ConcentrationReport report_alpha(const SpinSystem& sys, double alpha) {
  std::vector<int> idx = alpha_indices(sys, alpha);
  double j = sys.j();
  double top = j - idx.front();  // largest selected level
  return build_report(sys, idx, 0.0, (top + 0.5) / j);
}

double offdiag_frobenius2(const SpinSystem& sys, double a, double b) {
  return offdiag_from_indices(sys, window_indices(sys, a, b));
}

double offdiag_frobenius2_alpha(const SpinSystem& sys, double alpha) {
  return offdiag_from_indices(sys, alpha_indices(sys, alpha));
}

LogFit log_fit(const std::vector<double>& ns, const std::vector<double>& ys) {
  if (ns.size() != ys.size() || ns.size() < 3)
    throw domain_error("log fit needs at least three (n, y) pairs");
  const std::size_t k = ns.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(ns[i] > 0)) throw domain_error("n values must be positive");
    double x = std::log(ns[i]);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-12 * k * sxx)
    throw domain_error("degenerate abscissae for log fit");
  LogFit f;
  f.slope = (k * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / k;
  double ss = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double r = ys[i] - (f.intercept + f.slope * std::log(ns[i]));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / k);
  return f;
}

}  // namespace twoproj
