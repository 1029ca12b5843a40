// Copyright 2026 The darwinium Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Serial reference vs OpenMP kernels on the same state sizes.
#include <benchmark/benchmark.h>

#include <vector>

#include "darwinium/gates.hpp"
#include "darwinium/kernels.hpp"
#include "darwinium/rng.hpp"

namespace {

using namespace darwinium;

std::vector<cplx> random_amps(int n) {
    CounterRng rng(7);
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    return a;
}

template <void (*F)(std::span<cplx>, int, const Mat2 &)>
void bm_apply_1q(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto amps = random_amps(n);
    const Mat2 h = gates::hadamard();
    for (auto _ : state) {
        F(amps, n / 2, h);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <void (*F)(std::span<cplx>, const kernels::ControlPattern &, int, const Mat2 &, const Mat2 &)>
void bm_conditional(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto amps = random_amps(n);
    const kernels::ControlPattern ctrl{0b11, 0b00, 0b11};
    const Mat2 u = gates::xy_rotation(1.1, 0.3);
    for (auto _ : state) {
        F(amps, ctrl, n - 1, Mat2::Identity(), u);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <double (*F)(std::span<const cplx>)>
void bm_norm(benchmark::State &state) {
    const auto amps = random_amps(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(F(amps));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

}  // namespace

BENCHMARK(bm_apply_1q<kernels::serial::apply_1q>)->Name("apply_1q/serial")->DenseRange(12, 22, 5);
BENCHMARK(bm_apply_1q<kernels::omp::apply_1q>)->Name("apply_1q/omp")->DenseRange(12, 22, 5);
BENCHMARK(bm_conditional<kernels::serial::apply_conditional>)->Name("conditional/serial")->DenseRange(12, 22, 5);
BENCHMARK(bm_conditional<kernels::omp::apply_conditional>)->Name("conditional/omp")->DenseRange(12, 22, 5);
BENCHMARK(bm_norm<kernels::serial::norm_squared>)->Name("norm/serial")->DenseRange(12, 22, 5);
BENCHMARK(bm_norm<kernels::omp::norm_squared>)->Name("norm/omp")->DenseRange(12, 22, 5);

BENCHMARK_MAIN();
