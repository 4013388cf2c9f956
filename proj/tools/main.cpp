// Command-line experiment runner: evaluates the norm functional, sweeps
// spectral and random projection pairs, and emits CSV for plotting.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "twoproj/concentration.hpp"
#include "twoproj/errors.hpp"
#include "twoproj/ncpoly.hpp"
#include "twoproj/pairs.hpp"
#include "twoproj/psi.hpp"
#include "twoproj/randmat.hpp"
#include "twoproj/spin.hpp"

namespace {

using namespace twoproj;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInternal = 4;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  std::string experiment;
  std::optional<long long> n;
  std::optional<double> alpha, beta;
  std::string poly;
  std::string statistic;
  double value = 0.0;
  std::optional<std::uint64_t> seed;

  std::string line() const {
    std::ostringstream os;
    os << experiment << ',';
    if (n) os << *n;
    os << ',';
    if (alpha) os << fmt(*alpha);
    os << ',';
    if (beta) os << fmt(*beta);
    os << ',' << poly << ',' << statistic << ',' << fmt(value) << ',';
    if (seed) os << *seed;
    os << '\n';
    return os.str();
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw domain_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void csv_header() {
    stream() << "experiment,n,alpha,beta,poly,statistic,value,seed\n";
  }

 private:
  std::ofstream file_;
};

std::vector<int> parse_int_range(const std::string& text) {
  int a, b, step;
  if (std::sscanf(text.c_str(), "%d:%d:%d", &a, &b, &step) != 3 || step <= 0 ||
      b < a)
    throw domain_error("range must be a:b:step with step > 0 and b >= a");
  std::vector<int> v;
  for (int x = a; x <= b; x += step) v.push_back(x);
  return v;
}

std::vector<double> parse_grid(const std::string& text) {
  double a, b, step;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 ||
      step <= 0 || b < a)
    throw domain_error("grid must be lo:hi:step with step > 0 and hi >= lo");
  std::vector<double> v;
  for (int k = 0;; ++k) {
    double x = a + k * step;
    if (x > b + 1e-12) break;
    v.push_back(std::min(x, b));
  }
  return v;
}

/// Shared spin systems for sweeps that revisit the same dimension.
class SpinCache {
 public:
  std::shared_ptr<const SpinSystem> get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[n];
    if (!slot) slot = std::make_shared<SpinSystem>(n);
    return slot;
  }

 private:
  std::mutex mu_;
  std::map<int, std::shared_ptr<const SpinSystem>> cache_;
};

/// Runs fn(i) for i in [0, count) on a pool, collecting per-index row blocks;
/// emission order is by index regardless of scheduling.
template <typename Fn>
void ordered_parallel_rows(int count, int threads, Output& out, Fn&& fn) {
  std::vector<std::vector<Row>> blocks(count);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      blocks[i] = fn(i);
    }
  };
  int nthreads = std::max(1, std::min(threads, count));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& block : blocks)
    for (const auto& row : block) out.stream() << row.line();
}

// ---------------------------------------------------------------------------

struct PsiArgs {
  std::string poly;
  std::optional<double> t;
  std::vector<double> max_interval;
  std::string out;
};

int run_psi(const PsiArgs& a) {
  NcPoly f = NcPoly::parse(a.poly);
  Output out(a.out);
  if (a.t) {
    out.stream() << fmt(psi_eval(f, *a.t)) << '\n';
  } else {
    MaxResult r = max_on_interval(f, a.max_interval[0], a.max_interval[1]);
    out.stream() << fmt(r.value) << ' ' << fmt(r.argmax_t) << '\n';
  }
  return 0;
}

struct SweepArgs {
  std::string poly;
  std::optional<int> n;
  std::string n_range;
  double alpha = 0.5;
  std::string alpha_grid;
  std::optional<double> beta;
  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;

  std::vector<int> ns() const {
    if (!n_range.empty()) return parse_int_range(n_range);
    if (n) return {*n};
    throw domain_error("need --n or --n-range");
  }
  std::vector<double> alphas() const {
    if (!alpha_grid.empty()) return parse_grid(alpha_grid);
    return {alpha};
  }
};

int run_spin_norm(const SweepArgs& a) {
  NcPoly f = NcPoly::parse(a.poly);
  const std::string poly = f.str();
  auto ns = a.ns();
  auto alphas = a.alphas();
  Output out(a.out);
  out.csv_header();
  SpinCache cache;

  const int count = static_cast<int>(ns.size() * alphas.size());
  ordered_parallel_rows(count, a.threads, out, [&](int i) {
    int n = ns[i / alphas.size()];
    double alpha = alphas[i % alphas.size()];
    auto sys = cache.get(n);
    ProjectionMatrix P3 = spectral_projection(*sys, 3, alpha);
    ProjectionMatrix P1 = spectral_projection(*sys, 1, alpha);
    double v = op_norm(eval_matrix(f, P3.mat, P1.mat));
    Row r{"spin_norm", n, alpha, std::nullopt, poly, "op_norm", v,
          std::nullopt};
    return std::vector<Row>{r};
  });
  return 0;
}

int run_random_norm(const SweepArgs& a) {
  NcPoly f = NcPoly::parse(a.poly);
  const std::string poly = f.str();
  auto ns = a.ns();
  auto alphas = a.alphas();
  Output out(a.out);
  out.csv_header();
  SeededRng master(a.seed);

  struct Point {
    int n;
    double alpha, beta;
  };
  std::vector<Point> points;
  for (int n : ns)
    for (double al : alphas) points.push_back({n, al, a.beta.value_or(al)});

  // Each sweep point derives its own substream family; trials inside a point
  // are already schedule-independent, so the whole sweep is deterministic.
  ordered_parallel_rows(
      static_cast<int>(points.size()), a.threads, out, [&](int i) {
        const Point& p = points[i];
        SeededRng point_rng(master.master_seed() ^
                            (0x51BD0C6E21C4B7A3ull * (i + 1)));
        MonteCarloResult mc =
            monte_carlo_norm(f, p.n, p.alpha, p.beta, a.trials, point_rng, 1);
        std::vector<Row> rows;
        for (double s : mc.samples)
          rows.push_back(Row{"random_norm", p.n, p.alpha, p.beta, poly,
                             "op_norm", s, a.seed});
        rows.push_back(Row{"random_norm", p.n, p.alpha, p.beta, poly, "mean",
                           mc.mean, a.seed});
        rows.push_back(Row{"random_norm", p.n, p.alpha, p.beta, poly,
                           "stddev", mc.stddev, a.seed});
        return rows;
      });
  return 0;
}

struct SpectrumArgs {
  std::string source;
  int n = 0;
  double alpha = 0.5;
  std::optional<double> beta;
  std::uint64_t seed = 0;
  std::string out;
};

int run_spectrum(const SpectrumArgs& a) {
  Output out(a.out);
  out.csv_header();
  Eigen::VectorXd evs;
  std::optional<std::uint64_t> seed;
  std::optional<double> beta;

  if (a.source == "spin") {
    SpinSystem sys(a.n);
    Eigen::MatrixXd F = axis1_frame(sys, a.alpha);
    int count = level_count(a.n, a.alpha);
    // Rows indexed by the axis-3 selection: the same window of smallest
    // positive levels, read off in the standard basis.
    double base = (a.n % 2 == 0) ? 0.5 : 1.0;
    double cutoff = base + (count - 1);
    std::vector<int> w;
    for (int i = 0; i < a.n; ++i) {
      double m = sys.j() - i;
      if (m > 0.0 && m <= cutoff + 0.25) w.push_back(i);
    }
    Eigen::MatrixXd Fw(w.size(), F.cols());
    for (std::size_t r = 0; r < w.size(); ++r) Fw.row(r) = F.row(w[r]);
    Eigen::MatrixXd R = Fw * Fw.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R,
                                                      Eigen::EigenvaluesOnly);
    evs = es.eigenvalues();
  } else if (a.source == "random") {
    double beta_v = a.beta.value_or(a.alpha);
    beta = beta_v;
    seed = a.seed;
    int ka = static_cast<int>(std::floor(a.alpha * a.n + 1e-9));
    int kb = static_cast<int>(std::floor(beta_v * a.n + 1e-9));
    if (ka < 1 || kb < 1) throw domain_error("empty spectral selection");
    SeededRng rng(a.seed);
    RandomStream sp = rng.stream(0), sq = rng.stream(1);
    Eigen::MatrixXcd Vp = haar_frame(a.n, ka, sp);
    ProjectionMatrix Q = haar_projection(a.n, kb, sq);
    Eigen::MatrixXcd R = Vp.adjoint() * Q.mat * Vp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R,
                                                       Eigen::EigenvaluesOnly);
    evs = es.eigenvalues();
  } else {
    throw domain_error("--source must be spin or random");
  }

  for (Eigen::Index i = 0; i < evs.size(); ++i) {
    Row r{a.source == "spin" ? "spectrum_spin" : "spectrum_random",
          a.n,
          a.alpha,
          beta,
          "",
          "lambda",
          evs(i),
          seed};
    out.stream() << r.line();
  }
  return 0;
}

struct ConcentrationArgs {
  std::vector<int> ns;
  double alpha = 0.5;
  std::optional<double> wa, wb;
  double t = 0.1;
  int threads = 1;
  std::string out;
};

int run_concentration(const ConcentrationArgs& a) {
  if (a.ns.empty()) throw domain_error("need at least one --n");
  if (!(a.t > 0.0 && a.t < 0.5)) throw domain_error("--t must lie in (0, 1/2)");
  const bool window = a.wa.has_value() || a.wb.has_value();
  if (window && (!a.wa || !a.wb))
    throw domain_error("--a and --b must be given together");
  Output out(a.out);
  out.csv_header();

  SpinCache cache;
  std::vector<std::vector<Row>> blocks(a.ns.size());
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= static_cast<int>(a.ns.size())) return;
      int n = a.ns[i];
      auto sys = cache.get(n);
      ConcentrationReport rep =
          window ? report(*sys, *a.wa, *a.wb) : report_alpha(*sys, a.alpha);
      double s2 = window ? offdiag_frobenius2(*sys, *a.wa, *a.wb)
                         : offdiag_frobenius2_alpha(*sys, a.alpha);
      std::optional<double> alpha_col;
      if (!window) alpha_col = a.alpha;
      std::vector<Row> rows;
      auto push = [&](const std::string& stat, double v) {
        rows.push_back(Row{"concentration", n, alpha_col, std::nullopt, "",
                           stat, v, std::nullopt});
      };
      push("rank", rep.rank);
      push("trace_R", rep.trace_R);
      push("trace_R2", rep.trace_R2);
      push("sum_lambda_one_minus_lambda", rep.sum_lambda_one_minus_lambda);
      push("frobenius_s2", s2);
      push("count_low", rep.count_closed(0.0, a.t));
      push("count_mid", rep.count_closed(a.t, 1.0 - a.t));
      push("count_high", rep.count_closed(1.0 - a.t, 1.0));
      blocks[i] = rows;
    }
  };
  int nthreads = std::max(1, std::min<int>(a.threads, a.ns.size()));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<double> ns_d, frob, sums;
  for (std::size_t i = 0; i < a.ns.size(); ++i) {
    for (const auto& row : blocks[i]) out.stream() << row.line();
    ns_d.push_back(a.ns[i]);
    for (const auto& row : blocks[i]) {
      if (row.statistic == "frobenius_s2") frob.push_back(row.value);
      if (row.statistic == "sum_lambda_one_minus_lambda")
        sums.push_back(row.value);
    }
  }

  if (a.ns.size() >= 3) {
    std::optional<double> alpha_col;
    if (!window) alpha_col = a.alpha;
    auto emit_fit = [&](const std::string& name, const LogFit& f) {
      const std::pair<std::string, double> stats[] = {
          {name + "_slope", f.slope},
          {name + "_intercept", f.intercept},
          {name + "_residual", f.residual}};
      for (const auto& [stat, v] : stats) {
        Row r{"concentration", std::nullopt, alpha_col, std::nullopt, "",
              stat, v, std::nullopt};
        out.stream() << r.line();
      }
    };
    emit_fit("logfit_frobenius_s2", log_fit(ns_d, frob));
    emit_fit("logfit_sum_lambda_one_minus_lambda", log_fit(ns_d, sums));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical laboratory for polynomials in two orthogonal projections: "
      "norm functionals, spectral projections of spin generators, and "
      "Haar-random projection pairs."};
  app.require_subcommand(1);

  PsiArgs psi_args;
  auto* cmd_psi = app.add_subcommand(
      "psi", "Evaluate the norm function psi or maximize it on an interval");
  cmd_psi->add_option("--poly", psi_args.poly, "Polynomial in x, y")
      ->required();
  auto* opt_t = cmd_psi->add_option("--t", psi_args.t, "Evaluation point");
  auto* opt_max = cmd_psi
                      ->add_option("--max", psi_args.max_interval,
                                   "Maximize over [lo, hi]")
                      ->expected(2);
  opt_t->excludes(opt_max);
  cmd_psi->add_option("--out", psi_args.out, "Output path (default stdout)");

  SweepArgs spin_args;
  auto* cmd_spin = app.add_subcommand(
      "spin-norm",
      "Norm of f on spectral projections of the spin generators, per n");
  cmd_spin->add_option("--poly", spin_args.poly)->required();
  cmd_spin->add_option("--n", spin_args.n);
  cmd_spin->add_option("--n-range", spin_args.n_range, "a:b:step");
  cmd_spin->add_option("--alpha", spin_args.alpha, "Rank fraction (0, 1/2]");
  cmd_spin->add_option("--alpha-grid", spin_args.alpha_grid, "lo:hi:step");
  cmd_spin->add_option("--threads", spin_args.threads);
  cmd_spin->add_option("--out", spin_args.out);

  SweepArgs rand_args;
  auto* cmd_rand = app.add_subcommand(
      "random-norm", "Monte Carlo norm of f on Haar-random projection pairs");
  cmd_rand->add_option("--poly", rand_args.poly)->required();
  cmd_rand->add_option("--n", rand_args.n);
  cmd_rand->add_option("--n-range", rand_args.n_range, "a:b:step");
  cmd_rand->add_option("--alpha", rand_args.alpha);
  cmd_rand->add_option("--alpha-grid", rand_args.alpha_grid, "lo:hi:step");
  cmd_rand->add_option("--beta", rand_args.beta,
                       "Second rank fraction (default: alpha)");
  cmd_rand->add_option("--trials", rand_args.trials);
  cmd_rand->add_option("--seed", rand_args.seed);
  cmd_rand->add_option("--threads", rand_args.threads);
  cmd_rand->add_option("--out", rand_args.out);

  SpectrumArgs spec_args;
  auto* cmd_spec = app.add_subcommand(
      "spectrum", "Sorted eigenvalues of the compressed pair product PQP");
  cmd_spec->add_option("--source", spec_args.source, "spin or random")
      ->required();
  cmd_spec->add_option("--n", spec_args.n)->required();
  cmd_spec->add_option("--alpha", spec_args.alpha);
  cmd_spec->add_option("--beta", spec_args.beta);
  cmd_spec->add_option("--seed", spec_args.seed);
  cmd_spec->add_option("--out", spec_args.out);

  ConcentrationArgs conc_args;
  auto* cmd_conc = app.add_subcommand(
      "concentration",
      "Eigenvalue clustering statistics of the windowed spin projection pair");
  cmd_conc->add_option("--n", conc_args.ns, "Dimensions (repeatable)")
      ->required();
  cmd_conc->add_option("--alpha", conc_args.alpha);
  cmd_conc->add_option("--a", conc_args.wa, "Window lower fraction of j");
  cmd_conc->add_option("--b", conc_args.wb, "Window upper fraction of j");
  cmd_conc->add_option("--t", conc_args.t, "Count threshold in (0, 1/2)");
  cmd_conc->add_option("--threads", conc_args.threads);
  cmd_conc->add_option("--out", conc_args.out);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(cmd_psi)) {
      if (!psi_args.t && psi_args.max_interval.size() != 2)
        throw domain_error("psi needs --t or --max");
      return run_psi(psi_args);
    }
    if (app.got_subcommand(cmd_spin)) return run_spin_norm(spin_args);
    if (app.got_subcommand(cmd_rand)) return run_random_norm(rand_args);
    if (app.got_subcommand(cmd_spec)) return run_spectrum(spec_args);
    if (app.got_subcommand(cmd_conc)) return run_concentration(conc_args);
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  } catch (const twoproj::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const twoproj::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const twoproj::internal_error& e) {
    std::cerr << "internal consistency error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
