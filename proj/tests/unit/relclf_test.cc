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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "relgraph/relclf.h"

namespace relgraph::relclf {
namespace {

PairScore WithProbabilities(std::initializer_list<std::pair<Label, double>> probs) {
  RowVector logits = RowVector::Constant(kNumLabels, -5.0);
  for (const auto& [label, p] : probs) logits(LabelIndex(label)) = std::log(p / (1.0 - p));
  return PairScore::FromLogits(0, 1, logits);
}

TEST(ScorePairTest, ZeroParametersGiveOneHalf) {
  const int d = 4;
  ClassifierParams params{Matrix::Zero(3 * d, kNumLabels), RowVector::Zero(kNumLabels)};
  const auto s = ScorePair(RowVector::Ones(d), RowVector::Ones(d), params, 2, 5);
  EXPECT_EQ(s.head, 2);
  EXPECT_EQ(s.tail, 5);
  for (int i = 0; i < kNumLabels; ++i) EXPECT_DOUBLE_EQ(s.probabilities(i), 0.5);
  // Nothing strictly above 0.5, so the exclusive label fires.
  EXPECT_EQ(DecodeLabels(s), LabelSet{Label::kRelatedTo});
  EXPECT_THROW(ScorePair(RowVector::Ones(d), RowVector::Ones(d + 1), params),
               std::invalid_argument);
}

TEST(ScorePairTest, FeaturesAreHeadTailProduct) {
  RowVector h(2), t(2);
  h << 1, 2;
  t << 3, -1;
  EXPECT_EQ(PairFeatures(h, t), (RowVector(6) << 1, 2, 3, -1, 3, -2).finished());
}

TEST(DecodeTest, Examples) {
  EXPECT_EQ(DecodeLabels(WithProbabilities({{Label::kRole, 0.7}, {Label::kUsage, 0.6}})),
            (LabelSet{Label::kRole, Label::kUsage}));
  EXPECT_EQ(DecodeLabels(WithProbabilities({{Label::kRole, 0.4}})),
            LabelSet{Label::kRelatedTo});
  // A confident RELATED-TO output does not suppress other labels.
  EXPECT_EQ(DecodeLabels(WithProbabilities({{Label::kRelatedTo, 0.9}, {Label::kTopic, 0.8}})),
            LabelSet{Label::kTopic});
  EXPECT_EQ(DecodeLabels(WithProbabilities({{Label::kRole, 0.7}}), {0.75, true}),
            LabelSet{Label::kRelatedTo});
  EXPECT_EQ(DecodeLabels(WithProbabilities({{Label::kRole, 0.7}, {Label::kUsage, 0.9}}),
                         {0.5, false}),
            LabelSet{Label::kUsage});
}

TEST(DecodeTest, ExclusiveAndMonotoneInThreshold) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    RowVector logits(kNumLabels);
    for (int i = 0; i < kNumLabels; ++i) logits(i) = z(rng);
    const auto s = PairScore::FromLogits(0, 1, logits);
    LabelSet previous = DecodeLabels(s, {0.05, true});
    for (double t = 0.1; t < 1.0; t += 0.05) {
      const LabelSet now = DecodeLabels(s, {t, true});
      ASSERT_TRUE(now.SatisfiesExclusivity());
      ASSERT_FALSE(now.Empty());
      if (!now.Contains(Label::kRelatedTo)) {
        // Every label kept at a higher threshold was kept at the lower one.
        for (Label l : now.ToVector()) ASSERT_TRUE(previous.Contains(l));
      }
      previous = now;
    }
  }
}

TEST(LossTest, UniformScoreCostsSeventeenLnTwo) {
  const PairScore s = PairScore::FromLogits(0, 1, RowVector::Zero(kNumLabels));
  EXPECT_NEAR(PairLoss(s, {Label::kRole}), 17.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(PairLossVar(nn::Constant(RowVector::Zero(kNumLabels)), {Label::kRole}).scalar(),
              17.0 * std::log(2.0), 1e-12);
}

TEST(LossTest, GradientIsProbabilityMinusIndicator) {
  std::mt19937_64 rng(8);
  const LabelSet gold{Label::kPartOf, Label::kPhysical};
  for (int trial = 0; trial < 20; ++trial) {
    const RowVector logits = nn::GaussianMatrix(1, kNumLabels, 3.0, rng);
    const auto s = PairScore::FromLogits(0, 1, logits);
    const RowVector analytic = PairLossGradient(s, gold);
    EXPECT_LT(testing::MaxRelativeError(analytic, s.probabilities - GoldIndicator(gold)), 1e-15);
    const Matrix numeric = testing::NumericGradient(
        [&](const Matrix& x) { return PairLoss(PairScore::FromLogits(0, 1, x), gold); }, logits);
    EXPECT_LT(testing::MaxRelativeError(analytic, numeric), 1e-7);
    const nn::Var v = nn::Parameter(logits);
    nn::Backward(PairLossVar(v, gold));
    EXPECT_LT(testing::MaxRelativeError(v.grad(), analytic), 1e-12);
  }
}

TEST(LossTest, SingleLabelAveragesCrossEntropy) {
  const RowVector zero = RowVector::Zero(kNumLabels);
  const double ce = std::log(17.0);
  EXPECT_NEAR(PairLossVar(nn::Constant(zero), {Label::kRole}, false).scalar(), ce, 1e-12);
  EXPECT_NEAR(PairLossVar(nn::Constant(zero), {Label::kRole, Label::kUsage}, false).scalar(),
              ce, 1e-12);
}

TEST(PairClassifierTest, TapeMatchesPlainScorer) {
  nn::ParameterStore store;
  PairClassifier clf(5, store, 4);
  std::mt19937_64 rng(6);
  const RowVector h = nn::GaussianMatrix(1, 5, 1.0, rng), t = nn::GaussianMatrix(1, 5, 1.0, rng);
  const auto logits = clf.Logits(nn::Constant(h), nn::Constant(t)).value();
  EXPECT_LT(testing::MaxRelativeError(logits, ScorePair(h, t, clf.Params()).logits), 1e-12);
}

}  // namespace
}  // namespace relgraph::relclf
