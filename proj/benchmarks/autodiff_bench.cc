// Copyright 2026 The ucoalign Authors
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

#include <benchmark/benchmark.h>

#include <vector>

#include "ucoalign/autodiff.h"

namespace ucoalign {
namespace {

// A chain of elementary ops; measures recording plus one reverse sweep.
void BM_TapeChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Tape tape;
    std::vector<Var> in;
    in.reserve(n);
    for (std::size_t i = 0; i < n; ++i) in.push_back(tape.variable(0.5 + 1e-3 * i));
    Var acc = in[0];
    for (std::size_t i = 1; i < n; ++i) acc = acc * in[i] + in[i] * 0.5;
    benchmark::DoNotOptimize(tape.backward(acc, in));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_TapeChain)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace
}  // namespace ucoalign
