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

#include "relgraph/graph.h"

#include <algorithm>

#include "relgraph/text.h"
#include "text_util.h"

namespace relgraph::graph {

MiniDoc AssembleMiniDoc(const corpus::Document& doc) {
  MiniDoc minidoc;
  minidoc.push_back(doc.tokens);
  if (!doc.support || internal::Trim(doc.support->text).empty()) return minidoc;
  for (std::size_t i = 0; i < doc.support->sentence_count(); ++i) {
    auto words = text::TokenizeWords(doc.support->sentence(i));
    if (!words.empty()) minidoc.push_back(std::move(words));
  }
  return minidoc;
}

int NodeIndex(const MiniDoc& minidoc, int sentence_index, int word_index) {
  int offset = 0;
  for (int s = 0; s < sentence_index; ++s) {
    offset += static_cast<int>(minidoc[s].size());
  }
  return offset + word_index;
}

std::vector<NodeRef> FindMentions(const corpus::EntitySpan& entity,
                                  const corpus::Document& doc,
                                  const MiniDoc& minidoc) {
  const auto surface = doc.EntityTokens(entity);
  const int len = static_cast<int>(surface.size());
  std::vector<NodeRef> out;
  int offset = 0;
  for (int s = 0; s < static_cast<int>(minidoc.size()); ++s) {
    const auto& words = minidoc[s];
    const int n = static_cast<int>(words.size());
    for (int w = 0; w + len <= n; ++w) {
      bool match = true;
      for (int k = 0; k < len && match; ++k) {
        match = text::TokenEqualsIgnoreCase(words[w + k], surface[k]);
      }
      // The annotated span always counts, even if the tokens somehow differ.
      const bool original = s == 0 && w == entity.start;
      if (!match && !original) continue;
      for (int k = 0; k < len; ++k) {
        out.push_back({offset + w + k, words[w + k], s, w + k, entity.id});
      }
    }
    offset += n;
  }
  std::sort(out.begin(), out.end(),
            [](const NodeRef& a, const NodeRef& b) { return a.node_index < b.node_index; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const NodeRef& a, const NodeRef& b) {
                          return a.node_index == b.node_index;
                        }),
            out.end());
  return out;
}

std::vector<int> DocumentGraph::OriginalSpanNodes(
    const corpus::EntitySpan& entity) const {
  std::vector<int> out;
  for (int w = entity.start; w <= entity.end; ++w) {
    out.push_back(sentence_offsets[0] + w);
  }
  return out;
}

int DocumentGraph::EdgeCount() const {
  int edges = 0;
  const int n = node_count();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges += adjacency(u, v) != 0.0 ? 1 : 0;
  }
  return edges;
}

DocumentGraph BuildGraph(const corpus::Document& doc) {
  return BuildGraph(doc, AssembleMiniDoc(doc));
}

DocumentGraph BuildGraph(const corpus::Document& doc, const MiniDoc& minidoc) {
  DocumentGraph g;
  int offset = 0;
  for (int s = 0; s < static_cast<int>(minidoc.size()); ++s) {
    g.sentence_offsets.push_back(offset);
    for (int w = 0; w < static_cast<int>(minidoc[s].size()); ++w) {
      g.nodes.push_back({offset + w, minidoc[s][w], s, w, std::nullopt});
    }
    offset += static_cast<int>(minidoc[s].size());
  }
  g.sentence_offsets.push_back(offset);

  const int n = offset;
  g.adjacency = Eigen::MatrixXd::Identity(n, n);
  for (int s = 0; s < g.sentence_count(); ++s) {
    const int begin = g.sentence_offsets[s];
    const int size = g.sentence_offsets[s + 1] - begin;
    g.adjacency.block(begin, begin, size, size).setOnes();
  }

  for (const auto& entity : doc.entities) {
    auto mentions = FindMentions(entity, doc, minidoc);
    std::vector<int>& component = g.entity_components[entity.id];
    for (const NodeRef& m : mentions) {
      component.push_back(m.node_index);
      auto& slot = g.nodes[m.node_index].entity_id;
      if (!slot || *slot > entity.id) slot = entity.id;
    }
    for (int u : component) {
      for (int v : component) g.adjacency(u, v) = 1.0;
    }
  }
  return g;
}

void WriteNodeTable(const DocumentGraph& graph, std::ostream& out) {
  for (const NodeRef& node : graph.nodes) {
    out << node.node_index << '\t' << node.sentence_index << '\t'
        << node.word_index << '\t';
    if (node.entity_id) {
      out << *node.entity_id;
    } else {
      out << '-';
    }
    out << '\t' << node.word << '\n';
  }
}

void WriteEdgeList(const DocumentGraph& graph, std::ostream& out) {
  const int n = graph.node_count();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (graph.adjacency(u, v) != 0.0) out << u << '\t' << v << '\n';
    }
  }
}

}  // namespace relgraph::graph
