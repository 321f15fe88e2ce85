// Copyright 2026 The relgraph Authors.
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

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "relgraph/metrics.h"

namespace {

using relgraph::eval::PairLabels;

PairLabels RandomLabels(int pairs, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> label(0, relgraph::kNumLabels - 2);
  std::bernoulli_distribution second(0.2);
  PairLabels out;
  for (int i = 0; i < pairs; ++i) {
    relgraph::LabelSet s{relgraph::LabelAt(label(rng))};
    if (second(rng)) s.Insert(relgraph::LabelAt(label(rng)));
    out[{"doc" + std::to_string(i / 3), i % 3, i % 3 + 1}] = s;
  }
  return out;
}

void BM_MacroF1(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int n = static_cast<int>(state.range(0));
  const auto preds = RandomLabels(n, rng);
  const auto golds = RandomLabels(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(relgraph::eval::MacroF1(preds, golds));
  state.SetItemsProcessed(state.iterations() * n);
}
// Roughly the size of one domain's test split, and of all six.
BENCHMARK(BM_MacroF1)->Arg(900)->Arg(6000);

}  // namespace
