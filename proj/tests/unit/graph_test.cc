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
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "relgraph/graph.h"

namespace relgraph::graph {
namespace {

corpus::Document Doc(std::vector<std::string> tokens,
                     std::vector<corpus::EntitySpan> entities = {},
                     const std::string& support = "") {
  corpus::Document doc;
  doc.id = "g";
  doc.tokens = std::move(tokens);
  doc.entities = std::move(entities);
  if (!support.empty()) {
    doc.support = corpus::SupportDocument::FromText(support, corpus::SupportSource::kMock);
  }
  return doc;
}

TEST(GraphTest, SingleSentenceIsAClique) {
  const auto g = BuildGraph(Doc({"a", "b", "c"}));
  EXPECT_EQ(g.node_count(), 3);
  EXPECT_EQ(g.adjacency, Eigen::MatrixXd::Ones(3, 3));
  EXPECT_EQ(g.EdgeCount(), 3);
}

TEST(GraphTest, EntityBridgesSentences) {
  // Sentence 0 "A b", support sentence "A d": the two A nodes join.
  const auto doc = Doc({"A", "b"}, {{0, 0, "misc", 0}});
  const MiniDoc minidoc = {{"A", "b"}, {"a", "d"}};
  const auto g = BuildGraph(doc, minidoc);
  Eigen::MatrixXd expected(4, 4);
  expected << 1, 1, 1, 0,
              1, 1, 0, 0,
              1, 0, 1, 1,
              0, 0, 1, 1;
  EXPECT_EQ(g.adjacency, expected);
  EXPECT_EQ(g.entity_components.at(0), (std::vector<int>{0, 2}));
  EXPECT_EQ(g.sentence_offsets, (std::vector<int>{0, 2, 4}));
}

corpus::Document MillerDoc() {
  return Doc({"For", "many", "years", "starting", "from", "1986", ",", "Miller",
              "directed", "the", "development", "of", "WordNet", ",", "a", "large",
              "computer-readable", "electronic", "reference", "usable", "in",
              "applications", "such", "as", "search", "engines", "."},
             {{7, 7, "researcher", 0}, {12, 12, "product", 1}, {24, 25, "product", 2}},
             "WordNet groups English words into sets of synonyms. For many years "
             "starting from 1986, Miller directed the development of WordNet, a large "
             "computer-readable electronic reference usable in applications such as "
             "search engines. Researchers still cite wordnet today.");
}

TEST(GraphTest, MentionsAcrossSupport) {
  const auto doc = MillerDoc();
  const auto minidoc = AssembleMiniDoc(doc);
  ASSERT_EQ(minidoc.size(), 4u);
  const auto wordnet = FindMentions(doc.entities[1], doc, minidoc);
  // Original, the support's first sentence, the repeated sentence, lower-case.
  ASSERT_EQ(wordnet.size(), 4u);
  EXPECT_EQ(wordnet[0].node_index, 12);
  for (const auto& n : wordnet) EXPECT_EQ(n.entity_id, 1);
  EXPECT_EQ(wordnet[3].word, "wordnet");

  const auto engines = FindMentions(doc.entities[2], doc, minidoc);
  ASSERT_EQ(engines.size(), 4u);
  EXPECT_EQ(engines[0].word, "search");
  EXPECT_EQ(engines[1].word, "engines");
  EXPECT_EQ(engines[1].node_index, engines[0].node_index + 1);

  const auto g = BuildGraph(doc, minidoc);
  EXPECT_EQ(testing::CheckGraphProperties(doc, minidoc, g), "");
  EXPECT_EQ(g.OriginalSpanNodes(doc.entities[2]), (std::vector<int>{24, 25}));
}

TEST(GraphTest, NoSupportGivesOneSentence) {
  auto doc = MillerDoc();
  doc.support.reset();
  const auto g = BuildGraph(doc);
  EXPECT_EQ(g.sentence_count(), 1);
  EXPECT_EQ(g.node_count(), 27);
  EXPECT_EQ(g.EdgeCount(), 27 * 26 / 2);
}

TEST(GraphTest, RandomDocumentsSatisfyProperties) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto doc = testing::RandomDocument(rng, i % 4 != 0);
    const auto minidoc = AssembleMiniDoc(doc);
    const auto g = BuildGraph(doc, minidoc);
    ASSERT_EQ(testing::CheckGraphProperties(doc, minidoc, g), "") << "document " << i;
  }
}

TEST(GraphTest, Tables) {
  const auto doc = Doc({"A", "b"}, {{0, 0, "misc", 0}});
  const auto g = BuildGraph(doc, {{"A", "b"}, {"a", "d"}});
  std::ostringstream nodes, edges;
  WriteNodeTable(g, nodes);
  WriteEdgeList(g, edges);
  EXPECT_EQ(nodes.str(), "0\t0\t0\t0\tA\n1\t0\t1\t-\tb\n2\t1\t0\t0\ta\n3\t1\t1\t-\td\n");
  EXPECT_EQ(edges.str(), "0\t1\n0\t2\n2\t3\n");
}

}  // namespace
}  // namespace relgraph::graph
