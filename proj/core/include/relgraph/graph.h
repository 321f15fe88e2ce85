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

#ifndef RELGRAPH_GRAPH_H_
#define RELGRAPH_GRAPH_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relgraph/corpus.h"

namespace relgraph::graph {

// Sentence 0 is the annotated sentence; the rest are the tokenized sentences
// of the support paragraph.
using MiniDoc = std::vector<std::vector<std::string>>;

MiniDoc AssembleMiniDoc(const corpus::Document& doc);

// One node per word occurrence. `entity_id` is the lowest entity whose
// mention contains this occurrence (a word can belong to several entities;
// DocumentGraph::entity_components holds full membership).
struct NodeRef {
  int node_index = 0;
  std::string word;
  int sentence_index = 0;
  int word_index = 0;
  std::optional<int> entity_id;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

// Nodes are numbered sentence by sentence, word by word.
int NodeIndex(const MiniDoc& minidoc, int sentence_index, int word_index);

// Every occurrence of the entity's surface token sequence in the mini-document
// (ASCII case-insensitive exact match), as word-level nodes ordered by node
// index. Always contains the original span's words. `entity_id` of the
// returned nodes is set to `entity.id`.
std::vector<NodeRef> FindMentions(const corpus::EntitySpan& entity,
                                  const corpus::Document& doc,
                                  const MiniDoc& minidoc);

struct DocumentGraph {
  std::vector<NodeRef> nodes;
  // Binary, symmetric, unit diagonal.
  Eigen::MatrixXd adjacency;
  // entity id -> sorted node indices of its mention words.
  std::map<int, std::vector<int>> entity_components;
  // First node index of each sentence, plus a final sentinel (node count).
  std::vector<int> sentence_offsets;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int sentence_count() const {
    return static_cast<int>(sentence_offsets.size()) - 1;
  }
  // Node indices of the entity's original span in sentence 0.
  std::vector<int> OriginalSpanNodes(const corpus::EntitySpan& entity) const;
  // Off-diagonal undirected edges.
  int EdgeCount() const;
};

// Self-loops plus one clique per sentence and per entity mention set.
DocumentGraph BuildGraph(const corpus::Document& doc);
DocumentGraph BuildGraph(const corpus::Document& doc, const MiniDoc& minidoc);

// Node table: "index<TAB>sentence<TAB>word_index<TAB>entity|-<TAB>word".
void WriteNodeTable(const DocumentGraph& graph, std::ostream& out);
// Edge list: "u<TAB>v" for u < v.
void WriteEdgeList(const DocumentGraph& graph, std::ostream& out);

}  // namespace relgraph::graph

#endif  // RELGRAPH_GRAPH_H_
