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

#include <string>

#include <benchmark/benchmark.h>

#include "relgraph/corpus.h"
#include "relgraph/graph.h"

namespace {

relgraph::corpus::Document MillerDoc() {
  relgraph::corpus::Document doc;
  doc.id = "bench";
  doc.tokens = {"For", "many", "years", "starting", "from", "1986", ",", "Miller",
                "directed", "the", "development", "of", "WordNet", ",", "a", "large",
                "computer-readable", "electronic", "reference", "usable", "in",
                "applications", "such", "as", "search", "engines", "."};
  doc.entities = {{7, 7, "researcher", 0}, {12, 12, "product", 1}, {24, 25, "product", 2}};
  doc.support = relgraph::corpus::SupportDocument::FromText(
      "WordNet groups English words into sets of synonyms. For many years starting "
      "from 1986, Miller directed the development of WordNet, a large computer-readable "
      "electronic reference usable in applications such as search engines. Miller was a "
      "psychologist at Princeton. Search engines still draw on WordNet today. It remains "
      "freely available.",
      relgraph::corpus::SupportSource::kMock);
  return doc;
}

void BM_BuildGraph(benchmark::State& state) {
  const auto doc = MillerDoc();
  for (auto _ : state) benchmark::DoNotOptimize(relgraph::graph::BuildGraph(doc));
}
BENCHMARK(BM_BuildGraph);

void BM_AssembleMiniDoc(benchmark::State& state) {
  const auto doc = MillerDoc();
  for (auto _ : state) benchmark::DoNotOptimize(relgraph::graph::AssembleMiniDoc(doc));
}
BENCHMARK(BM_AssembleMiniDoc);

}  // namespace
