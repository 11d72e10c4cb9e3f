// Copyright 2026 The clocklab Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "clocklab/clock_hamiltonian.hpp"
#include "clocklab/kernels.hpp"
#include "clocklab/rng.hpp"

namespace {

using namespace clocklab;

CVector random_vector(Eigen::Index n) {
  Rng rng(42);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return v;
}

const ClockHamiltonian& grover_hamiltonian() {
  static const ClockHamiltonian h = build_standard(build_grover(10, 32, std::string(10, '1')), 0.5);
  return h;
}

template <bool Parallel>
void BM_ClockApply(benchmark::State& state) {
  const ClockHamiltonian& h = grover_hamiltonian();
  const CVector in = random_vector(static_cast<Eigen::Index>(h.dim()));
  CVector out(in.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      h.apply(as_span(in), as_span(out));
    } else {
      h.apply_serial(as_span(in), as_span(out));
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(h.dim()));
}
BENCHMARK(BM_ClockApply<false>)->Name("ClockApply/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClockApply<true>)->Name("ClockApply/omp")->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_Matvec(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  CMatrix m(n, n);
  Rng rng(1);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(rng.uniform(), rng.uniform());
  const CVector x = random_vector(n);
  CVector y(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      omp::matvec(m, as_span(x), as_span(y));
    } else {
      serial::matvec(m, as_span(x), as_span(y));
    }
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_Matvec<false>)->Name("Matvec/serial")->Arg(1024)->Arg(4096);
BENCHMARK(BM_Matvec<true>)->Name("Matvec/omp")->Arg(1024)->Arg(4096);

template <bool Parallel>
void BM_Dot(benchmark::State& state) {
  const CVector a = random_vector(state.range(0));
  const CVector b = random_vector(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? omp::dot(as_span(a), as_span(b)) : serial::dot(as_span(a), as_span(b)));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) * 2 * static_cast<long>(sizeof(Complex)));
}
BENCHMARK(BM_Dot<false>)->Name("Dot/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Dot<true>)->Name("Dot/omp")->Arg(1 << 16)->Arg(1 << 20);

template <bool Parallel>
void BM_Reflect(benchmark::State& state) {
  CVector v = random_vector(state.range(0));
  const Complex phase(0.0, 1.0);
  for (auto _ : state) {
    if constexpr (Parallel) {
      omp::reflect_uniform(as_span(v), phase);
    } else {
      serial::reflect_uniform(as_span(v), phase);
    }
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_Reflect<false>)->Name("ReflectUniform/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Reflect<true>)->Name("ReflectUniform/omp")->Arg(1 << 16)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
