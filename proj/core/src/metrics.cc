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

#include "relgraph/metrics.h"

#include <array>
#include <cstdint>

namespace relgraph::eval {

MacroF1Report ScoreMacroF1(const PairLabels& predictions, const PairLabels& golds,
                           std::span<const Label> labels) {
  // Per-label counts, indexed by label ordinal.
  std::array<int, kNumLabels> tp{}, fp{}, fn{};
  auto tally = [&](std::uint32_t predicted, std::uint32_t gold) {
    for (int i = 0; i < kNumLabels; ++i) {
      const bool p = (predicted >> i) & 1u;
      const bool g = (gold >> i) & 1u;
      tp[i] += p && g;
      fp[i] += p && !g;
      fn[i] += !p && g;
    }
  };
  for (const auto& [key, set] : predictions) {
    auto g = golds.find(key);
    tally(set.bits(), g == golds.end() ? 0u : g->second.bits());
  }
  for (const auto& [key, set] : golds) {
    if (!predictions.contains(key)) tally(0u, set.bits());
  }

  MacroF1Report report;
  for (Label label : labels) {
    LabelScore score;
    score.label = label;
    const int i = LabelIndex(label);
    score.true_positives = tp[i];
    score.false_positives = fp[i];
    score.false_negatives = fn[i];
    const int tp = score.true_positives;
    if (tp + score.false_positives > 0) {
      score.precision = static_cast<double>(tp) / (tp + score.false_positives);
    }
    if (tp + score.false_negatives > 0) {
      score.recall = static_cast<double>(tp) / (tp + score.false_negatives);
    }
    // Same value as 2PR / (P + R), without the intermediate rounding.
    if (tp > 0) {
      score.f1 = 2.0 * tp /
                 static_cast<double>(2 * tp + score.false_positives +
                                     score.false_negatives);
    }
    report.per_label.push_back(score);
  }
  if (!report.per_label.empty()) {
    double sum = 0.0;
    for (const auto& s : report.per_label) sum += s.f1;
    report.macro_f1 = 100.0 * sum / static_cast<double>(report.per_label.size());
  }
  return report;
}

double MacroF1(const PairLabels& predictions, const PairLabels& golds,
               std::span<const Label> labels) {
  return ScoreMacroF1(predictions, golds, labels).macro_f1;
}

double MacroF1(const PairLabels& predictions, const PairLabels& golds) {
  return MacroF1(predictions, golds, AllLabels());
}

}  // namespace relgraph::eval
