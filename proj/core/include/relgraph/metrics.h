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

#ifndef RELGRAPH_METRICS_H_
#define RELGRAPH_METRICS_H_

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "relgraph/labels.h"

namespace relgraph::eval {

struct PairKey {
  std::string doc_id;
  int head = 0;
  int tail = 0;

  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

using PairLabels = std::map<PairKey, LabelSet>;

struct LabelScore {
  Label label = Label::kPartOf;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MacroF1Report {
  std::vector<LabelScore> per_label;
  // Percent.
  double macro_f1 = 0.0;
};

// Unweighted mean of per-label F1 over `labels`, in percent. Pairs missing
// from one side count as an empty label set there. A label with no gold and
// no predicted instance scores F1 = 0.
MacroF1Report ScoreMacroF1(const PairLabels& predictions, const PairLabels& golds,
                           std::span<const Label> labels);

double MacroF1(const PairLabels& predictions, const PairLabels& golds,
               std::span<const Label> labels);
double MacroF1(const PairLabels& predictions, const PairLabels& golds);

}  // namespace relgraph::eval

#endif  // RELGRAPH_METRICS_H_
