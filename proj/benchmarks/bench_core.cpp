#include <benchmark/benchmark.h>

#include "twoproj/concentration.hpp"
#include "twoproj/ncpoly.hpp"
#include "twoproj/pairs.hpp"
#include "twoproj/psi.hpp"
#include "twoproj/randmat.hpp"
#include "twoproj/spin.hpp"

using namespace twoproj;

namespace {

const NcPoly& commutator() {
  static NcPoly f = NcPoly::parse("x*y - y*x");
  return f;
}

void BM_parse(benchmark::State& state) {
  for (auto _ : state) {
    NcPoly f = NcPoly::parse("0.5*x*y + (0.25-2*i)*y*x - i*(x*y)^3*x");
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_parse);

void BM_psi_eval(benchmark::State& state) {
  GContext g = g_context(NcPoly::parse("(x*y)^3 - (y*x)^3 + x - y"));
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-6;
    if (t > 1.0) t = 0.0;
    benchmark::DoNotOptimize(psi_eval(g, t));
  }
}
BENCHMARK(BM_psi_eval);

void BM_max_on_interval(benchmark::State& state) {
  GContext g = g_context(NcPoly::parse("(x*y)^2 - (y*x)^2"));
  for (auto _ : state)
    benchmark::DoNotOptimize(max_on_interval(g, 0.0, 1.0).value);
}
BENCHMARK(BM_max_on_interval);

void BM_haar_projection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(1);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RandomStream s = rng.stream(i++);
    benchmark::DoNotOptimize(haar_projection(n, n / 2, s));
  }
}
BENCHMARK(BM_haar_projection)->Arg(32)->Arg(128);

void BM_op_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(2);
  RandomStream s1 = rng.stream(0), s2 = rng.stream(1);
  ProjectionMatrix P = haar_projection(n, n / 2, s1);
  ProjectionMatrix Q = haar_projection(n, n / 2, s2);
  Eigen::MatrixXcd A = eval_matrix(commutator(), P.mat, Q.mat);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(A));
}
BENCHMARK(BM_op_norm)->Arg(64)->Arg(256);

void BM_analyze(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(3);
  RandomStream s1 = rng.stream(0), s2 = rng.stream(1);
  ProjectionMatrix P = haar_projection(n, n / 3, s1);
  ProjectionMatrix Q = haar_projection(n, n / 2, s2);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(P, Q));
}
BENCHMARK(BM_analyze)->Arg(32)->Arg(96);

void BM_spin_system(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SpinSystem sys(n);
    benchmark::DoNotOptimize(sys.axis1_eigenvalues().sum());
  }
}
BENCHMARK(BM_spin_system)->Arg(101)->Arg(401);

void BM_concentration_report(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpinSystem sys(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(report_alpha(sys, 0.5).trace_R);
}
BENCHMARK(BM_concentration_report)->Arg(200)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
