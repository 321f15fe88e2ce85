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

#ifndef RELGRAPH_TESTS_SUPPORT_ORACLES_H_
#define RELGRAPH_TESTS_SUPPORT_ORACLES_H_

// Reference computations the library is checked against. These deliberately
// take the slow, direct route (dense matrices, exhaustive scans) and share
// no code with the implementations under test.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relgraph/corpus.h"
#include "relgraph/gnn.h"
#include "relgraph/graph.h"
#include "relgraph/metrics.h"

namespace relgraph::testing {

// act(D^-1/2 (A + I) D^-1/2 H W) with D the row sums of A + I. The diagonal
// of `adjacency` is overwritten with ones first.
Eigen::MatrixXd DenseGcn(Eigen::MatrixXd adjacency, const Eigen::MatrixXd& h,
                         const Eigen::MatrixXd& w, gnn::Activation act);

// Largest |a - b| / max(1, |b|) over all entries.
double MaxRelativeError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Random symmetric 0/1 adjacency with a unit diagonal.
Eigen::MatrixXd RandomAdjacency(int n, double density, std::mt19937_64& rng);

// Node indices (in minidoc order) of every case-insensitive occurrence of
// the entity's token sequence, plus the original span, by exhaustive scan.
std::vector<int> BruteForceMentionNodes(const corpus::Document& doc,
                                        const corpus::EntitySpan& entity,
                                        const graph::MiniDoc& minidoc);

// Checks every structural property of a word graph; returns an empty string
// when all hold, otherwise a description of the first failure.
std::string CheckGraphProperties(const corpus::Document& doc,
                                 const graph::MiniDoc& minidoc,
                                 const graph::DocumentGraph& g);

// Random document over a small vocabulary (so surface forms repeat), with an
// optional support paragraph assembled from random sentences.
corpus::Document RandomDocument(std::mt19937_64& rng, bool with_support);

struct ConfusionCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

struct BruteForceMacro {
  std::vector<ConfusionCounts> per_label;
  double macro_f1 = 0.0;
};

// Per-label counts by enumerating every (pair, label) cell of the merged
// indicator table.
BruteForceMacro BruteForceMacroF1(const eval::PairLabels& predictions,
                                  const eval::PairLabels& golds,
                                  const std::vector<Label>& labels);

// Central differences of f at x, one coordinate at a time.
Eigen::MatrixXd NumericGradient(const std::function<double(const Eigen::MatrixXd&)>& f,
                                Eigen::MatrixXd x, double step = 1e-5);

}  // namespace relgraph::testing

#endif  // RELGRAPH_TESTS_SUPPORT_ORACLES_H_
