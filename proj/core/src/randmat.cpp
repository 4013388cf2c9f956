#include "twoproj/randmat.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "twoproj/errors.hpp"
#include "twoproj/psi.hpp"

namespace twoproj {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::complex<double> RandomStream::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

RandomStream SeededRng::stream(std::uint64_t index) const {
  std::uint64_t mix = index;
  std::uint64_t h = splitmix64(mix);
  return RandomStream(master_ ^ h);
}

Eigen::MatrixXcd haar_frame(int n, int k, RandomStream& rng) {
  if (k < 1 || k > n) throw domain_error("haar frame rank out of range");
  Eigen::MatrixXcd G(n, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) G(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  Eigen::MatrixXcd V = qr.householderQ() * Eigen::MatrixXcd::Identity(n, k);
  // Normalize so the implicit R factor has positive diagonal; the frame then
  // depends only on the Gaussian draw.
  for (int c = 0; c < k; ++c) {
    std::complex<double> d = qr.matrixQR()(c, c);
    double a = std::abs(d);
    if (a > 0.0) V.col(c) *= d / a;
  }
  return V;
}

ProjectionMatrix haar_projection(int n, int k, RandomStream& rng) {
  Eigen::MatrixXcd V = haar_frame(n, k, rng);
  ProjectionMatrix p;
  p.mat = V * V.adjoint();
  p.rank = k;
  return p;
}

JacobiLimit JacobiLimit::make(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= beta && alpha + beta <= 1.0 + 1e-15))
    throw domain_error("need 0 < alpha <= beta with alpha + beta <= 1");
  JacobiLimit jl;
  jl.alpha = alpha;
  jl.beta = beta;
  const double u = std::sqrt(beta * (1.0 - alpha));
  const double v = std::sqrt(alpha * (1.0 - beta));
  jl.lambda_minus = (u - v) * (u - v);
  jl.lambda_plus = std::min((u + v) * (u + v), 1.0);
  // 1 - (u+v)^2 = (1 - u - v)(1 + u + v), stable near lambda_+ = 1.
  jl.one_minus_lambda_plus = std::max((1.0 - u - v) * (1.0 + u + v), 0.0);
  return jl;
}

double jacobi_density(const JacobiLimit& jl, double t) {
  if (t <= jl.lambda_minus || t >= jl.lambda_plus) return 0.0;
  double num = std::sqrt((t - jl.lambda_minus) * (jl.lambda_plus - t));
  return num / (2.0 * M_PI * jl.alpha * t * (1.0 - t));
}

namespace {

void adaptive_simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb, double whole,
                      double tol, int depth, double& acc) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    acc += left + right + (left + right - whole) / 15.0;
    return;
  }
  adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double acc = 0.0;
  adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48, acc);
  return acc;
}

}  // namespace

double jacobi_cdf(const JacobiLimit& jl, double t) {
  if (t <= jl.lambda_minus) return 0.0;
  const double span = jl.lambda_plus - jl.lambda_minus;
  double u_hi;
  if (t >= jl.lambda_plus) {
    u_hi = 0.5 * M_PI;
  } else {
    double x = std::clamp((t - jl.lambda_minus) / span, 0.0, 1.0);
    u_hi = std::asin(std::sqrt(x));
  }
  // Substituting t = l- + span*sin^2(u) turns the density into
  //   w(u) = span^2 sin^2 cos^2 / (pi alpha (l- + span sin^2)((1-l+) + span cos^2)),
  // and each factor that vanishes at an endpoint of the support cancels
  // analytically against the matching sin^2 or cos^2.
  const double lm = jl.lambda_minus;
  const double om_lp = jl.one_minus_lambda_plus;
  const double scale = span * span / (M_PI * jl.alpha);
  auto w = [&](double u) {
    double s2 = std::sin(u) * std::sin(u);
    double c2 = 1.0 - s2;
    double f1 = (lm == 0.0) ? 1.0 / span : s2 / (lm + span * s2);
    double f2 = (om_lp == 0.0) ? 1.0 / span : c2 / (om_lp + span * c2);
    return scale * f1 * f2;
  };
  double val = integrate(w, 0.0, u_hi, 1e-10);
  return std::clamp(val, 0.0, 1.0);
}

double limit_value(const NcPoly& f, double alpha, double beta) {
  JacobiLimit jl = JacobiLimit::make(alpha, beta);
  GContext g = g_context(f);
  const double eps = 1e-12;
  const bool equal_ranks = std::abs(alpha - beta) <= eps;
  const bool complementary = std::abs(alpha + beta - 1.0) <= eps;

  if (equal_ranks && complementary)  // alpha = beta = 1/2
    return max_on_interval(g, 0.0, 1.0).value;
  if (!equal_ranks && complementary)
    return std::max(max_on_interval(g, jl.lambda_minus, 1.0).value,
                    std::abs(g.a10()));
  if (equal_ranks)
    return std::max(max_on_interval(g, 0.0, jl.lambda_plus).value,
                    std::abs(g.a11()));
  return std::max({max_on_interval(g, jl.lambda_minus, jl.lambda_plus).value,
                   std::abs(g.a10()), std::abs(g.a11())});
}

MonteCarloResult monte_carlo_norm(const NcPoly& f, int n, double alpha,
                                  double beta, int trials,
                                  const SeededRng& rng, int threads) {
  if (trials < 1) throw domain_error("need at least one trial");
  if (!(alpha > 0.0 && beta > 0.0 && alpha <= 1.0 && beta <= 1.0))
    throw domain_error("alpha, beta must lie in (0, 1]");
  const int ka = static_cast<int>(std::floor(alpha * n + 1e-9));
  const int kb = static_cast<int>(std::floor(beta * n + 1e-9));
  if (ka < 1 || kb < 1) throw domain_error("rank floor(alpha*n) is zero");

  MonteCarloResult res;
  res.samples.assign(static_cast<std::size_t>(trials), 0.0);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int t = next.fetch_add(1);
      if (t >= trials) return;
      RandomStream sp = rng.stream(2 * static_cast<std::uint64_t>(t));
      RandomStream sq = rng.stream(2 * static_cast<std::uint64_t>(t) + 1);
      ProjectionMatrix P = haar_projection(n, ka, sp);
      ProjectionMatrix Q = haar_projection(n, kb, sq);
      res.samples[t] = op_norm(eval_matrix(f, P.mat, Q.mat));
    }
  };
  int nthreads = std::max(1, std::min(threads, trials));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double sum = 0.0;
  for (double s : res.samples) sum += s;
  res.mean = sum / trials;
  if (trials > 1) {
    double ss = 0.0;
    for (double s : res.samples) ss += (s - res.mean) * (s - res.mean);
    res.stddev = std::sqrt(ss / (trials - 1));
  }
  return res;
}

}  // namespace twoproj
