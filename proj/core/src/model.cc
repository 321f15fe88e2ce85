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

#include "relgraph/model.h"

namespace relgraph::model {

RelationModel::RelationModel(ModelConfig cfg) : cfg_(std::move(cfg)) {
  encoder_ = std::make_unique<encode::Encoder>(cfg_.encoder, store_, cfg_.seed);
  graph_encoder_ = std::make_unique<gnn::EntityGraphEncoder>(
      cfg_.gnn, cfg_.encoder.hidden_dim, store_, cfg_.seed);
  classifier_ = std::make_unique<relclf::PairClassifier>(cfg_.encoder.hidden_dim,
                                                         store_, cfg_.seed);
}

PreparedDocument RelationModel::Prepare(const corpus::Document& doc) const {
  PreparedDocument prepared;
  prepared.doc = &doc;
  graph::MiniDoc minidoc;
  if (cfg_.use_support) {
    minidoc = graph::AssembleMiniDoc(doc);
  } else {
    minidoc.push_back(doc.tokens);
  }
  prepared.plan = encode::PlanEncoding(minidoc, encoder_->tokenizer(),
                                       cfg_.encoder.max_length);
  prepared.graph = graph::BuildGraph(doc, prepared.plan.kept);
  prepared.pooling =
      encode::PoolingMatrix(prepared.plan, prepared.graph, cfg_.encoder.pooling);
  return prepared;
}

gnn::EntityEmbeddingSet RelationModel::EntityEmbeddings(
    const PreparedDocument& prepared) const {
  nn::Var subwords = encoder_->Forward(prepared.plan);
  nn::Var nodes = nn::LeftMul(prepared.pooling, subwords);
  return graph_encoder_->Forward(nodes, prepared.graph, *prepared.doc);
}

std::vector<nn::Var> RelationModel::PairLogits(const PreparedDocument& prepared) const {
  std::vector<nn::Var> out;
  if (prepared.doc->relations.empty()) return out;
  const auto entities = EntityEmbeddings(prepared);
  for (const auto& r : prepared.doc->relations) {
    out.push_back(classifier_->Logits(entities.fused[r.head], entities.fused[r.tail]));
  }
  return out;
}

std::vector<relclf::PairScore> RelationModel::Score(
    const PreparedDocument& prepared) const {
  std::vector<relclf::PairScore> out;
  const auto logits = PairLogits(prepared);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const auto& r = prepared.doc->relations[i];
    out.push_back(relclf::PairScore::FromLogits(r.head, r.tail, logits[i].value().row(0)));
  }
  return out;
}

eval::PairLabels RelationModel::Predict(std::span<const PreparedDocument> docs) const {
  eval::PairLabels out;
  for (const auto& prepared : docs) {
    for (const auto& score : Score(prepared)) {
      out[{prepared.doc->id, score.head, score.tail}] =
          relclf::DecodeLabels(score, cfg_.decode);
    }
  }
  return out;
}

eval::PairLabels GoldLabels(std::span<const corpus::Document> docs) {
  eval::PairLabels out;
  for (const auto& doc : docs) {
    for (const auto& r : doc.relations) {
      LabelSet& slot = out[{doc.id, r.head, r.tail}];
      for (Label l : r.labels.ToVector()) slot.Insert(l);
    }
  }
  return out;
}

}  // namespace relgraph::model
