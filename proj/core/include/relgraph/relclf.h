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

#ifndef RELGRAPH_RELCLF_H_
#define RELGRAPH_RELCLF_H_

#include <cstdint>

#include "relgraph/labels.h"
#include "relgraph/optimizer.h"
#include "relgraph/tape.h"

namespace relgraph::relclf {

using nn::Matrix;
using nn::RowVector;

struct PairScore {
  int head = 0;
  int tail = 0;
  RowVector logits = RowVector::Zero(kNumLabels);
  RowVector probabilities = RowVector::Constant(kNumLabels, 0.5);

  static PairScore FromLogits(int head, int tail, RowVector logits);
};

struct DecodePolicy {
  double threshold = 0.5;
  // false: single-label argmax over all 17 labels.
  bool multi_label = true;
};

struct ClassifierParams {
  Matrix weight;  // 3d x 17
  RowVector bias;  // 17
};

// [head ; tail ; head * tail].
RowVector PairFeatures(const RowVector& head, const RowVector& tail);

// Throws std::invalid_argument on dimension mismatch.
PairScore ScorePair(const RowVector& head, const RowVector& tail,
                    const ClassifierParams& params, int head_id = 0,
                    int tail_id = 0);

// Multi-label: labels other than RELATED-TO whose probability exceeds the
// threshold, or {RELATED-TO} when there are none. The RELATED-TO output
// itself is ignored.
LabelSet DecodeLabels(const PairScore& score, const DecodePolicy& policy = {});

RowVector GoldIndicator(LabelSet gold);

// Sum over the 17 labels of binary cross-entropy, computed from logits.
double PairLoss(const PairScore& score, LabelSet gold);
// d PairLoss / d logits = sigmoid(logits) - indicator.
RowVector PairLossGradient(const PairScore& score, LabelSet gold);

// Differentiable loss. Single-label mode averages softmax cross-entropy over
// the gold labels.
nn::Var PairLossVar(const nn::Var& logits, LabelSet gold, bool multi_label = true);

// Linear scorer over pair features; parameters "clf.weight" / "clf.bias".
class PairClassifier {
 public:
  PairClassifier(int dim, nn::ParameterStore& store, std::uint64_t seed);

  nn::Var Logits(const nn::Var& head, const nn::Var& tail) const;
  ClassifierParams Params() const;
  int dim() const { return dim_; }

 private:
  int dim_;
  nn::ParameterStore& store_;
};

}  // namespace relgraph::relclf

#endif  // RELGRAPH_RELCLF_H_
