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

#include "relgraph/relclf.h"

#include <cmath>
#include <stdexcept>

namespace relgraph::relclf {
namespace {

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace

PairScore PairScore::FromLogits(int head, int tail, RowVector logits) {
  if (logits.size() != kNumLabels) {
    throw std::invalid_argument("logits must have 17 entries");
  }
  PairScore s;
  s.head = head;
  s.tail = tail;
  s.probabilities = (1.0 / (1.0 + (-logits.array()).exp())).matrix();
  s.logits = std::move(logits);
  return s;
}

RowVector PairFeatures(const RowVector& head, const RowVector& tail) {
  if (head.size() != tail.size()) {
    throw std::invalid_argument("head and tail embeddings differ in size");
  }
  const Eigen::Index d = head.size();
  RowVector f(3 * d);
  f << head, tail, head.cwiseProduct(tail);
  return f;
}

PairScore ScorePair(const RowVector& head, const RowVector& tail,
                    const ClassifierParams& params, int head_id, int tail_id) {
  const RowVector features = PairFeatures(head, tail);
  if (params.weight.rows() != features.size() ||
      params.weight.cols() != kNumLabels || params.bias.size() != kNumLabels) {
    throw std::invalid_argument("classifier weight must be 3d x 17");
  }
  return PairScore::FromLogits(head_id, tail_id,
                               features * params.weight + params.bias);
}

LabelSet DecodeLabels(const PairScore& score, const DecodePolicy& policy) {
  LabelSet out;
  if (!policy.multi_label) {
    Eigen::Index best = 0;
    score.logits.maxCoeff(&best);
    out.Insert(LabelAt(static_cast<int>(best)));
    return out;
  }
  for (int i = 0; i < kNumLabels; ++i) {
    if (i == kRelatedToIndex) continue;
    if (score.probabilities(i) > policy.threshold) out.Insert(LabelAt(i));
  }
  if (out.Empty()) out.Insert(Label::kRelatedTo);
  return out;
}

RowVector GoldIndicator(LabelSet gold) {
  RowVector y = RowVector::Zero(kNumLabels);
  for (int i = 0; i < kNumLabels; ++i) {
    if (gold.Contains(LabelAt(i))) y(i) = 1.0;
  }
  return y;
}

double PairLoss(const PairScore& score, LabelSet gold) {
  const RowVector y = GoldIndicator(gold);
  double loss = 0.0;
  for (int i = 0; i < kNumLabels; ++i) {
    loss += Softplus(score.logits(i)) - y(i) * score.logits(i);
  }
  return loss;
}

RowVector PairLossGradient(const PairScore& score, LabelSet gold) {
  return score.probabilities - GoldIndicator(gold);
}

nn::Var PairLossVar(const nn::Var& logits, LabelSet gold, bool multi_label) {
  if (multi_label) return nn::BceWithLogitsSum(logits, GoldIndicator(gold));
  const auto labels = gold.ToVector();
  if (labels.empty()) throw std::invalid_argument("gold label set is empty");
  nn::Var total = nn::SoftmaxCrossEntropy(logits, LabelIndex(labels[0]));
  for (std::size_t k = 1; k < labels.size(); ++k) {
    total = nn::Add(total, nn::SoftmaxCrossEntropy(logits, LabelIndex(labels[k])));
  }
  return labels.size() == 1
             ? total
             : nn::Scale(total, 1.0 / static_cast<double>(labels.size()));
}

PairClassifier::PairClassifier(int dim, nn::ParameterStore& store,
                               std::uint64_t seed)
    : dim_(dim), store_(store) {
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  store_.Add("clf.weight",
             nn::GaussianMatrix(3 * dim, kNumLabels,
                                1.0 / std::sqrt(3.0 * dim), rng),
             nn::ParamGroup::kHead);
  store_.Add("clf.bias", Matrix::Zero(1, kNumLabels), nn::ParamGroup::kHead);
}

nn::Var PairClassifier::Logits(const nn::Var& head, const nn::Var& tail) const {
  const nn::Var parts[] = {head, tail, nn::Mul(head, tail)};
  return nn::AddRow(nn::MatMul(nn::ConcatCols(parts), store_.Get("clf.weight")),
                    store_.Get("clf.bias"));
}

ClassifierParams PairClassifier::Params() const {
  return {store_.Get("clf.weight").value(), store_.Get("clf.bias").value().row(0)};
}

}  // namespace relgraph::relclf
