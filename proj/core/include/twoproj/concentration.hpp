#ifndef TWOPROJ_CONCENTRATION_HPP
#define TWOPROJ_CONCENTRATION_HPP

#include <vector>

#include "twoproj/spin.hpp"

namespace twoproj {

/// Spectral statistics of the compression R = P_w P1 P_w of the half-spectrum
/// axis-1 projection P1 to a J3 eigenvalue window, viewed on the range of the
/// window projection P_w. Eigenvalues cluster at 0 and 1 with a thin
/// logarithmic bulk.
struct ConcentrationReport {
  int n = 0;
  double a = 0.0, b = 0.0;  // window (a*j, b*j) on the J3 spectrum
  int rank = 0;             // number of selected levels = dim of R
  std::vector<double> eigenvalues;  // descending, raw (within [-1e-9, 1+1e-9])
  double trace_R = 0.0;
  double trace_R2 = 0.0;  // = squared Frobenius norm of R
  double sum_lambda_one_minus_lambda = 0.0;

  /// Number of eigenvalues (clamped to [0,1]) in the closed interval [s, t].
  int count_closed(double s, double t) const;
  /// Partition-safe variants: [0, t), [t, 1-t], (1-t, 1].
  int count_below(double t) const;
  int count_above(double s) const;
};

/// Report for the window (a*j, b*j) with -1 <= a < b <= 1, excluding the full
/// window (-1, 1). Throws domain_error when the window holds no level.
ConcentrationReport report(const SpinSystem& sys, double a, double b);

/// Headline window: (0, c) holding exactly floor(alpha*n) levels.
ConcentrationReport report_alpha(const SpinSystem& sys, double alpha);

/// Squared Frobenius norm of the off-diagonal block S = (I - P_w) P1 P_w.
/// Together with the report it satisfies |S|_F^2 + tr(R^2) = tr(R) up to
/// round-off.
double offdiag_frobenius2(const SpinSystem& sys, double a, double b);
double offdiag_frobenius2_alpha(const SpinSystem& sys, double alpha);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual
};

/// Ordinary least squares of ys against log(ns); needs >= 3 points.
LogFit log_fit(const std::vector<double>& ns, const std::vector<double>& ys);

}  // namespace twoproj

#endif
