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

#ifndef RELGRAPH_TRAINER_H_
#define RELGRAPH_TRAINER_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/corpus.h"
#include "relgraph/metrics.h"
#include "relgraph/model.h"

namespace relgraph::eval {

// One cell of the experiment grid plus its optimisation settings.
struct RunConfig {
  model::ModelConfig model;
  Domain domain = Domain::kNews;
  // Cross-domain transfer: train on this domain, evaluate on `domain`.
  std::optional<Domain> train_domain;
  int epochs = 10;
  double encoder_lr = 2e-5;
  double head_lr = 1e-3;
  int batch_size = 16;
  double clip_norm = 1.0;
};

// Compact JSON object with every hyperparameter.
std::string RunConfigToJson(const RunConfig& cfg, int indent = -1);
// Keys present in `json` override `defaults`; unknown keys are rejected with
// std::invalid_argument.
RunConfig RunConfigFromJson(std::string_view json, RunConfig defaults = {});

class NonFiniteLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_f1 = 0.0;
};

struct TrainResult {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  double best_dev_f1 = 0.0;
  double test_f1 = 0.0;
  // Best-dev parameters restored.
  std::unique_ptr<model::RelationModel> model;
  PairLabels test_predictions;
};

// Mini-batch Adam over the gold pairs of `train`, dev Macro-F1 after each
// epoch, best-dev checkpoint restored before scoring `test`. Deterministic
// for a fixed config. Throws NonFiniteLoss.
TrainResult Train(const RunConfig& cfg, std::span<const corpus::Document> train,
                  std::span<const corpus::Document> dev,
                  std::span<const corpus::Document> test);

// Macro-F1 (percent) of the model's decoded predictions on `docs`.
double Evaluate(const model::RelationModel& model,
                std::span<const corpus::Document> docs,
                PairLabels* predictions = nullptr);

// One-line JSON with the config and per-epoch records plus the final scores.
std::string MetricsRecord(const RunConfig& cfg, const TrainResult& result);

struct MetricsSummary {
  RunConfig config;
  double test_f1 = 0.0;
  double best_dev_f1 = 0.0;
};

MetricsSummary ParseMetricsRecord(std::string_view json);

// Prediction dump: one JSON line per pair with doc id, head, tail, decoded
// labels and the 17 probabilities.
std::string PredictionDump(const model::RelationModel& model,
                           std::span<const corpus::Document> docs);

}  // namespace relgraph::eval

#endif  // RELGRAPH_TRAINER_H_
