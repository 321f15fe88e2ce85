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

#include <benchmark/benchmark.h>

#include "relgraph/gnn.h"
#include "relgraph/graph.h"

namespace {

using relgraph::nn::Matrix;

// A mini-document sized like a sentence plus a five-sentence paragraph.
relgraph::graph::DocumentGraph CliqueChain(int sentences, int words) {
  relgraph::graph::DocumentGraph g;
  const int n = sentences * words;
  g.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < sentences; ++s) {
    g.adjacency.block(s * words, s * words, words, words).setOnes();
    g.sentence_offsets.push_back(s * words);
  }
  g.sentence_offsets.push_back(n);
  for (int v = 0; v < n; ++v) g.nodes.push_back({v, "w", v / words, v % words, std::nullopt});
  return g;
}

void BM_GcnLayerDirect(benchmark::State& state) {
  const auto g = CliqueChain(6, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const Matrix h = relgraph::nn::GaussianMatrix(g.node_count(), 64, 1.0, rng);
  const relgraph::gnn::GcnLayerParams params{relgraph::nn::GaussianMatrix(64, 64, 0.1, rng),
                                             relgraph::gnn::Activation::kRelu};
  for (auto _ : state) benchmark::DoNotOptimize(relgraph::gnn::GcnLayer(h, g, params));
  state.SetItemsProcessed(state.iterations() * g.node_count());
}
BENCHMARK(BM_GcnLayerDirect)->Arg(10)->Arg(25)->Arg(50);

void BM_GcnLayerPropagator(benchmark::State& state) {
  const auto g = CliqueChain(6, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto h = relgraph::nn::Constant(relgraph::nn::GaussianMatrix(g.node_count(), 64, 1.0, rng));
  const auto w = relgraph::nn::Constant(relgraph::nn::GaussianMatrix(64, 64, 0.1, rng));
  const relgraph::gnn::Propagator prop(g.adjacency);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        relgraph::gnn::GcnLayer(h, prop, w, relgraph::gnn::Activation::kRelu).value());
  }
  state.SetItemsProcessed(state.iterations() * g.node_count());
}
BENCHMARK(BM_GcnLayerPropagator)->Arg(10)->Arg(25)->Arg(50);

}  // namespace
