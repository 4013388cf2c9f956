#include "twoproj/psi.hpp"

#include <algorithm>
#include <cmath>

#include "twoproj/errors.hpp"

namespace twoproj {

CxPoly CxPoly::from(const CoeffPoly& p) {
  CxPoly q;
  q.c.reserve(p.size());
  for (const auto& v : p) q.c.push_back(v.value());
  return q;
}

std::complex<double> CxPoly::eval(double t) const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
  return acc;
}

CxPoly CxPoly::operator+(const CxPoly& o) const {
  CxPoly r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (std::size_t k = 0; k < r.c.size(); ++k) {
    if (k < c.size()) r.c[k] += c[k];
    if (k < o.c.size()) r.c[k] += o.c[k];
  }
  return r;
}

CxPoly CxPoly::shifted() const {
  CxPoly r;
  if (c.empty()) return r;
  r.c.resize(c.size() + 1);
  for (std::size_t k = 0; k < c.size(); ++k) r.c[k + 1] = c[k];
  return r;
}

void CxPoly::add_constant(std::complex<double> v) {
  if (c.empty()) c.resize(1);
  c[0] += v;
}

namespace {

Coeff coeff_sum(const CoeffPoly& p, std::size_t from = 0) {
  Coeff s;
  for (std::size_t k = from; k < p.size(); ++k) s = s + p[k];
  return s;
}

}  // namespace

GContext g_context(const NcPoly& f) {
  Decomposition d = f.decompose();
  CxPoly f1 = CxPoly::from(d.f1), f2 = CxPoly::from(d.f2);
  CxPoly f3 = CxPoly::from(d.f3), f4 = CxPoly::from(d.f4);
  std::complex<double> a0 = d.a0.value();

  GContext g;
  g.g00 = f3 + (f1 + f2 + f4).shifted();
  g.g00.add_constant(a0);
  g.h01 = f1 + f4;
  g.h10 = f2 + f4;
  // g11(t) = a0 + (1 - t) f4(t)
  CxPoly minus_t_f4 = f4.shifted();
  for (auto& v : minus_t_f4.c) v = -v;
  g.g11 = f4 + minus_t_f4;
  g.g11.add_constant(a0);

  // Corner values via coefficient sums, exact when the input is exact.
  Coeff a00 = d.a0 + coeff_sum(d.f3) + coeff_sum(d.f1) + coeff_sum(d.f2) +
              coeff_sum(d.f4);
  Coeff a01 = d.a0 + (d.f3.empty() ? Coeff{} : d.f3[0]);
  Coeff a10 = d.a0 + (d.f4.empty() ? Coeff{} : d.f4[0]);
  Coeff a11 = d.a0;
  g.corners = {a00.value(), a01.value(), a10.value(), a11.value()};
  return g;
}

double psi_eval(const GContext& g, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("psi is defined on [0,1]");
  if (t == 0.0) return std::max(std::abs(g.a10()), std::abs(g.a01()));
  if (t == 1.0) return std::max(std::abs(g.a00()), std::abs(g.a11()));

  const double r2 = t * (1.0 - t);
  const std::complex<double> v00 = g.g00.eval(t);
  const std::complex<double> v11 = g.g11.eval(t);
  const std::complex<double> w01 = g.h01.eval(t);
  const std::complex<double> w10 = g.h10.eval(t);

  // g0 = sum |g_lk|^2 and the radicand g0^2 - 4|g1|^2 are assembled from the
  // Gram matrix of the 2x2 symbol: with h11 = |g00|^2 + |g01|^2,
  // h22 = |g10|^2 + |g11|^2 and h12 = g00 conj(g10) + g01 conj(g11),
  //   g0 = h11 + h22,   g0^2 - 4|g1|^2 = (h11 - h22)^2 + 4 |h12|^2.
  // The right-hand side is a sum of squares, so the radicand cannot go
  // negative and no cancellation occurs where the two singular values of
  // the symbol coalesce.
  const double h11 = std::norm(v00) + r2 * std::norm(w01);
  const double h22 = r2 * std::norm(w10) + std::norm(v11);
  const std::complex<double> cross = v00 * std::conj(w10) + w01 * std::conj(v11);

  const double g0 = h11 + h22;
  const double radicand =
      (h11 - h22) * (h11 - h22) + 4.0 * r2 * std::norm(cross);
  if (!(radicand >= -1e-12))
    throw internal_error("psi radicand negative beyond round-off");
  return std::sqrt(0.5 * (g0 + std::sqrt(std::max(radicand, 0.0))));
}

double psi_eval(const NcPoly& f, double t) { return psi_eval(g_context(f), t); }

namespace {

constexpr int kGridPoints = 4097;
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Golden-section search for the maximum of psi on [a, b].
double golden_refine(const GContext& g, double a, double b, double& best_t,
                     double& best_v) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = psi_eval(g, x1);
  double f2 = psi_eval(g, x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = psi_eval(g, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = psi_eval(g, x1);
    }
  }
  double mid = 0.5 * (a + b);
  double fm = psi_eval(g, mid);
  if (fm > best_v) {
    best_v = fm;
    best_t = mid;
  }
  if (f1 > best_v) {
    best_v = f1;
    best_t = x1;
  }
  if (f2 > best_v) {
    best_v = f2;
    best_t = x2;
  }
  return best_v;
}

}  // namespace

MaxResult max_on_interval(const GContext& g, double lo, double hi) {
  if (!(0.0 <= lo && lo < hi && hi <= 1.0))
    throw domain_error("max_on_interval requires 0 <= lo < hi <= 1");

  double best_v = -1.0, best_t = lo;
  for (int k = 0; k < kGridPoints; ++k) {
    double t = lo + (hi - lo) * static_cast<double>(k) / (kGridPoints - 1);
    double v = psi_eval(g, t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double step = (hi - lo) / (kGridPoints - 1);
  double a = std::max(lo, best_t - step);
  double b = std::min(hi, best_t + step);
  golden_refine(g, a, b, best_t, best_v);

  MaxResult r;
  r.value = best_v;
  r.argmax_t = best_t;
  r.lo = lo;
  r.hi = hi;
  return r;
}

MaxResult max_on_interval(const NcPoly& f, double lo, double hi) {
  return max_on_interval(g_context(f), lo, hi);
}

MaxResult m_f(const NcPoly& f) { return max_on_interval(f, 0.0, 1.0); }

}  // namespace twoproj
