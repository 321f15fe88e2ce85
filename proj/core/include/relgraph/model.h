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

#ifndef RELGRAPH_MODEL_H_
#define RELGRAPH_MODEL_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "relgraph/corpus.h"
#include "relgraph/encode.h"
#include "relgraph/gnn.h"
#include "relgraph/graph.h"
#include "relgraph/metrics.h"
#include "relgraph/optimizer.h"
#include "relgraph/relclf.h"

namespace relgraph::model {

struct ModelConfig {
  encode::EncoderConfig encoder;
  gnn::GnnConfig gnn;
  relclf::DecodePolicy decode;
  // When false the support paragraph is ignored and the graph covers the
  // annotated sentence only.
  bool use_support = true;
  std::uint64_t seed = 13;
};

// Everything about a document that does not depend on parameters.
struct PreparedDocument {
  const corpus::Document* doc = nullptr;
  encode::EncodingPlan plan;
  // Built on plan.kept, so truncated support sentences have no nodes.
  graph::DocumentGraph graph;
  nn::Matrix pooling;
};

// Encoder -> word graph -> GCN + attention pooling -> fusion -> pair scorer.
// Candidate pairs are the document's annotated (head, tail) pairs.
class RelationModel {
 public:
  explicit RelationModel(ModelConfig cfg);

  RelationModel(const RelationModel&) = delete;
  RelationModel& operator=(const RelationModel&) = delete;

  // The returned value refers to `doc`, which must outlive it.
  PreparedDocument Prepare(const corpus::Document& doc) const;

  gnn::EntityEmbeddingSet EntityEmbeddings(const PreparedDocument& prepared) const;
  // One 1 x 17 logit row per entry of doc->relations.
  std::vector<nn::Var> PairLogits(const PreparedDocument& prepared) const;
  std::vector<relclf::PairScore> Score(const PreparedDocument& prepared) const;

  eval::PairLabels Predict(std::span<const PreparedDocument> docs) const;

  const ModelConfig& config() const { return cfg_; }
  nn::ParameterStore& parameters() { return store_; }
  const nn::ParameterStore& parameters() const { return store_; }

 private:
  ModelConfig cfg_;
  nn::ParameterStore store_;
  std::unique_ptr<encode::Encoder> encoder_;
  std::unique_ptr<gnn::EntityGraphEncoder> graph_encoder_;
  std::unique_ptr<relclf::PairClassifier> classifier_;
};

eval::PairLabels GoldLabels(std::span<const corpus::Document> docs);

}  // namespace relgraph::model

#endif  // RELGRAPH_MODEL_H_
