#ifndef TWOPROJ_PSI_HPP
#define TWOPROJ_PSI_HPP

#include <array>
#include <complex>
#include <vector>

#include "twoproj/ncpoly.hpp"

namespace twoproj {

/// Dense univariate polynomial with complex double coefficients, ascending
/// degree. Just enough arithmetic for assembling the symbol functions.
struct CxPoly {
  std::vector<std::complex<double>> c;

  static CxPoly from(const CoeffPoly& p);
  std::complex<double> eval(double t) const;

  CxPoly operator+(const CxPoly& o) const;
  /// Multiplication by the variable (degree shift).
  CxPoly shifted() const;
  void add_constant(std::complex<double> v);
};

/// Symbol data attached to a polynomial: the four canonical functions written
/// as g00, g11 plus the square-root-free parts h01, h10 of the off-diagonal
/// symbols (g01 = r(t) h01, g10 = r(t) h10 with r(t) = sqrt(t(1-t))), and the
/// four corner values
///   a00 = g00(1), a01 = g00(0), a10 = g11(0), a11 = g11(1).
/// Corners are computed with exact coefficient sums when the source
/// polynomial is exact, so structural zeros are exact zeros.
struct GContext {
  CxPoly g00, h01, h10, g11;
  std::array<std::complex<double>, 4> corners;  // a00, a01, a10, a11

  std::complex<double> a00() const { return corners[0]; }
  std::complex<double> a01() const { return corners[1]; }
  std::complex<double> a10() const { return corners[2]; }
  std::complex<double> a11() const { return corners[3]; }
};

GContext g_context(const NcPoly& f);

/// The scalar norm function on [0,1]:
///   psi(t) = sqrt((g0(t) + sqrt(g0(t)^2 - 4|g1(t)|^2)) / 2),
/// with g0 = sum |g_lk|^2 and g1 = g00 g11 - g01 g10. At the endpoints this
/// reduces to corner moduli (max(|a10|,|a01|) at 0, max(|a00|,|a11|) at 1),
/// which are returned exactly. Throws domain_error outside [0,1] and
/// internal_error if the radicand is negative beyond round-off.
double psi_eval(const GContext& g, double t);
double psi_eval(const NcPoly& f, double t);

struct MaxResult {
  double value = 0.0;
  double argmax_t = 0.0;
  double lo = 0.0, hi = 1.0;
};

/// Maximum of psi over [lo, hi]: dense grid scan (4097 points) followed by
/// golden-section refinement of the best bracket. psi is continuous but not
/// smooth where the radicand vanishes, so no derivatives are used.
MaxResult max_on_interval(const GContext& g, double lo, double hi);
MaxResult max_on_interval(const NcPoly& f, double lo, double hi);

/// The universal tight upper bound for the operator norm of f evaluated on
/// any pair of orthogonal projections: max of psi over [0,1].
MaxResult m_f(const NcPoly& f);

}  // namespace twoproj

#endif
