// Copyright 2026 The covneu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "covneu/circuits.hpp"
#include "covneu/povm.hpp"

namespace {

using namespace covneu;

Vector random_state(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    Vector v(static_cast<Eigen::Index>(n));
    for (auto &x : v) x = cplx(normal(rng), normal(rng));
    return v.normalized();
}

// Range(0) is k; the circuit acts on 2k qubits.
template <Vector (*Sim)(const Circuit &, const Vector &)>
void BM_WhCircuit(benchmark::State &state) {
    const std::size_t m = std::size_t{1} << state.range(0);
    const Circuit c = build_wh_circuit(m, wh_symmetric_vector(m, cplx(0.7, 0.0)));
    const Vector psi = random_state(c.dim());
    for (auto _ : state) benchmark::DoNotOptimize(Sim(c, psi));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.dim()));
}

template <Vector (*Sim)(const Circuit &, const Vector &)>
void BM_Qft(benchmark::State &state) {
    const auto q = static_cast<unsigned>(state.range(0));
    Circuit c(q);
    c.add(Gate::qft(0, q - 1));
    const Circuit lowered = lower(c);
    const Vector psi = random_state(c.dim());
    for (auto _ : state) benchmark::DoNotOptimize(Sim(lowered, psi));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.dim()));
}

void BM_Sample(benchmark::State &state) {
    const Circuit c = build_cyclic_circuit(std::size_t{1} << 12, 4);
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(sample(c, rho, static_cast<std::uint64_t>(state.range(0)), 42));
}

BENCHMARK_TEMPLATE(BM_WhCircuit, simulate_serial)->DenseRange(4, 9)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_WhCircuit, simulate)->DenseRange(4, 9)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_Qft, simulate_serial)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_Qft, simulate)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Sample)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
