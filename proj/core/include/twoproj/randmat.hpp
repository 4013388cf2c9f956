#ifndef TWOPROJ_RANDMAT_HPP
#define TWOPROJ_RANDMAT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "twoproj/ncpoly.hpp"
#include "twoproj/pairs.hpp"

namespace twoproj {

/// Deterministic random stream (xoshiro256++ seeded via splitmix64) with a
/// cached polar-method normal generator. A given seed always produces the
/// same sequence, independent of platform or standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  std::complex<double> complex_normal();

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Master seed plus counter-based substream derivation: stream(i) depends
/// only on (master_seed, i), so draws are bit-identical no matter how work is
/// scheduled across threads.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t master_seed) : master_(master_seed) {}
  std::uint64_t master_seed() const { return master_; }
  RandomStream stream(std::uint64_t index) const;

 private:
  std::uint64_t master_;
};

/// Orthonormal frame of the column span of an n x k complex Gaussian matrix,
/// with the R-factor diagonal normalized positive so the frame is a
/// well-defined function of the Gaussian draw.
Eigen::MatrixXcd haar_frame(int n, int k, RandomStream& rng);

/// Haar-uniform rank-k orthogonal projection on C^n.
ProjectionMatrix haar_projection(int n, int k, RandomStream& rng);

/// Support data of the limiting eigenvalue law of compressed random
/// projections: lambda_pm = (sqrt(beta(1-alpha)) +- sqrt(alpha(1-beta)))^2.
struct JacobiLimit {
  double alpha = 0.0, beta = 0.0;
  double lambda_minus = 0.0, lambda_plus = 0.0;
  // Complements kept in cancellation-free form for quadrature.
  double one_minus_lambda_plus = 0.0;

  static JacobiLimit make(double alpha, double beta);
};

/// Limiting spectral density on [lambda_-, lambda_+]:
///   (1 / (2 pi alpha)) sqrt((t - l-)(l+ - t)) / (t (1 - t)).
double jacobi_density(const JacobiLimit& jl, double t);

/// CDF of the limiting law by adaptive quadrature (absolute accuracy ~1e-9).
double jacobi_cdf(const JacobiLimit& jl, double t);

/// Limit of the expected operator norm of f over independent Haar pairs of
/// ranks floor(alpha n), floor(beta n), 0 < alpha <= beta, alpha + beta <= 1.
/// Case split on (alpha = beta?, alpha + beta = 1?) combines corner moduli
/// with the maximum of psi over [lambda_-, lambda_+].
double limit_value(const NcPoly& f, double alpha, double beta);

struct MonteCarloResult {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (0 for a single trial)
  std::vector<double> samples;
};

/// Mean operator norm of f over `trials` independent Haar pairs of ranks
/// floor(alpha n) and floor(beta n). Trial i draws from substreams (2i,
/// 2i+1), so results are independent of the parallel schedule.
MonteCarloResult monte_carlo_norm(const NcPoly& f, int n, double alpha,
                                  double beta, int trials,
                                  const SeededRng& rng, int threads = 1);

}  // namespace twoproj

#endif
