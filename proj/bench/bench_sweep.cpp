// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP for the batch kernels.

#include <benchmark/benchmark.h>

#include "pseudoherm/sweep.hpp"

using namespace pseudoherm;

namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_SharpAlgebra(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sharp_algebra_batch(100, 8, 1, exec_of(state)).max_all());
  }
  state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_Forward(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum_forward_batch(200, 10, 2, 1e-8, exec_of(state)).mixed);
  }
  state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_Converse(benchmark::State& state) {
  Eigen::VectorXcd spec(4);
  spec << 1.0, 2.0, cplx(3, 4), cplx(3, -4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_converse_batch(spec, 50, 3, 1e-8, exec_of(state)).max_residual);
  }
  state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_WdwAlphaSweep(benchmark::State& state) {
  const WdwModel model(1, 1.0, 0.0, Grid1D::make(101, 8.0));
  std::vector<double> alphas;
  for (int k = 0; k < 16; ++k) alphas.push_back(-0.5 + 0.1 * k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wdw_alpha_sweep(model, alphas, 4, exec_of(state)).size());
  }
  state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_SharpAlgebra)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Forward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Converse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WdwAlphaSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
