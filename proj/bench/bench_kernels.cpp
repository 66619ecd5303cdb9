#include <benchmark/benchmark.h>
#include <omp.h>

#include <algorithm>

#include "wigner/ensemble.hpp"
#include "wigner/parallel.hpp"
#include "wigner/semicircle.hpp"
#include "wigner/spectral.hpp"

using namespace wigner;

namespace {

EnsembleSpec gue(std::size_t n) {
  EnsembleSpec s;
  s.n = n;
  s.seed = 99;
  return s;
}

double realization(const EnsembleSpec& s, std::size_t k) {
  const Eigen::VectorXd ev = eigenvalues(sample_realization(s, k));
  return im_stieltjes_over_pi({ev.data(), static_cast<std::size_t>(ev.size())}, 0.0, 1.0, s.n);
}

void BM_RealizationsSerial(benchmark::State& state) {
  const EnsembleSpec s = gue(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(map_realizations_serial<double>(32, [&](std::size_t k) { return realization(s, k); }));
}

void BM_RealizationsOpenMP(benchmark::State& state) {
  const EnsembleSpec s = gue(static_cast<std::size_t>(state.range(0)));
  const int w = std::max(1, omp_get_num_procs());
  for (auto _ : state)
    benchmark::DoNotOptimize(map_realizations<double>(32, w, [&](std::size_t k) { return realization(s, k); }));
  state.counters["workers"] = w;
}

void BM_EigenLapack(benchmark::State& state) {
  const HermitianMatrix h = sample_realization(gue(static_cast<std::size_t>(state.range(0))), 0);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h, state.range(1) != 0, EigenMethod::lapack));
}

void BM_EigenReference(benchmark::State& state) {
  const HermitianMatrix h = sample_realization(gue(static_cast<std::size_t>(state.range(0))), 0);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h, state.range(1) != 0, EigenMethod::householder_ql));
}

}  // namespace

BENCHMARK(BM_RealizationsSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RealizationsOpenMP)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenLapack)->ArgsProduct({{100, 400, 1000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenReference)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
