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

#include "relgraph/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "json.hpp"

namespace relgraph::eval {
namespace {

using nlohmann::json;

std::string_view PoolingName(encode::Pooling p) {
  return p == encode::Pooling::kFirst ? "first" : "mean";
}

json ToJson(const RunConfig& cfg) {
  const auto& m = cfg.model;
  json j;
  j["encoder"] = {{"model_name", m.encoder.model_name},
                  {"max_length", m.encoder.max_length},
                  {"finetune", m.encoder.finetune},
                  {"pooling", PoolingName(m.encoder.pooling)},
                  {"hidden_dim", m.encoder.hidden_dim},
                  {"vocab_buckets", m.encoder.vocab_buckets},
                  {"layers", m.encoder.layers}};
  j["gnn"] = {{"gcn_layers", m.gnn.gcn_layers},
              {"gcn_activation", gnn::ActivationName(m.gnn.gcn_activation)},
              {"gat_heads", m.gnn.gat_heads},
              {"use_gcn", m.gnn.use_gcn},
              {"use_gat", m.gnn.use_gat},
              {"fusion", gnn::FusionName(m.gnn.fusion)}};
  j["decode"] = {{"threshold", m.decode.threshold},
                 {"multi_label", m.decode.multi_label}};
  j["use_support"] = m.use_support;
  j["seed"] = m.seed;
  j["domain"] = DomainName(cfg.domain);
  j["train_domain"] =
      cfg.train_domain ? json(DomainName(*cfg.train_domain)) : json(nullptr);
  j["epochs"] = cfg.epochs;
  j["encoder_lr"] = cfg.encoder_lr;
  j["head_lr"] = cfg.head_lr;
  j["batch_size"] = cfg.batch_size;
  j["clip_norm"] = cfg.clip_norm;
  return j;
}

void RejectUnknown(const json& j, std::initializer_list<const char*> known,
                   const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return key == k; })) {
      throw std::invalid_argument("unknown config key '" + where + key + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j[key].is_null()) out = j[key].get<T>();
}

Domain DomainOrThrow(const std::string& name) {
  auto d = ParseDomain(name);
  if (!d) throw std::invalid_argument("unknown domain '" + name + "'");
  return *d;
}

RunConfig FromJson(const json& j, RunConfig cfg) {
  RejectUnknown(j,
                {"encoder", "gnn", "decode", "use_support", "seed", "domain",
                 "train_domain", "epochs", "encoder_lr", "head_lr",
                 "batch_size", "clip_norm"},
                "");
  auto& m = cfg.model;
  if (j.contains("encoder")) {
    const json& e = j["encoder"];
    RejectUnknown(e,
                  {"model_name", "max_length", "finetune", "pooling",
                   "hidden_dim", "vocab_buckets", "layers"},
                  "encoder.");
    Read(e, "model_name", m.encoder.model_name);
    Read(e, "max_length", m.encoder.max_length);
    Read(e, "finetune", m.encoder.finetune);
    Read(e, "hidden_dim", m.encoder.hidden_dim);
    Read(e, "vocab_buckets", m.encoder.vocab_buckets);
    Read(e, "layers", m.encoder.layers);
    if (e.contains("pooling")) {
      const auto p = e["pooling"].get<std::string>();
      if (p == "mean") {
        m.encoder.pooling = encode::Pooling::kMean;
      } else if (p == "first") {
        m.encoder.pooling = encode::Pooling::kFirst;
      } else {
        throw std::invalid_argument("unknown pooling '" + p + "'");
      }
    }
  }
  if (j.contains("gnn")) {
    const json& g = j["gnn"];
    RejectUnknown(g,
                  {"gcn_layers", "gcn_activation", "gat_heads", "use_gcn",
                   "use_gat", "fusion"},
                  "gnn.");
    Read(g, "gcn_layers", m.gnn.gcn_layers);
    Read(g, "gat_heads", m.gnn.gat_heads);
    Read(g, "use_gcn", m.gnn.use_gcn);
    Read(g, "use_gat", m.gnn.use_gat);
    if (g.contains("gcn_activation")) {
      const auto name = g["gcn_activation"].get<std::string>();
      auto a = gnn::ParseActivation(name);
      if (!a) throw std::invalid_argument("unknown activation '" + name + "'");
      m.gnn.gcn_activation = *a;
    }
    if (g.contains("fusion")) {
      const auto name = g["fusion"].get<std::string>();
      auto f = gnn::ParseFusion(name);
      if (!f) throw std::invalid_argument("unknown fusion '" + name + "'");
      m.gnn.fusion = *f;
    }
  }
  if (j.contains("decode")) {
    const json& d = j["decode"];
    RejectUnknown(d, {"threshold", "multi_label"}, "decode.");
    Read(d, "threshold", m.decode.threshold);
    Read(d, "multi_label", m.decode.multi_label);
  }
  Read(j, "use_support", m.use_support);
  Read(j, "seed", m.seed);
  if (j.contains("domain")) cfg.domain = DomainOrThrow(j["domain"].get<std::string>());
  if (j.contains("train_domain")) {
    cfg.train_domain = j["train_domain"].is_null()
                           ? std::nullopt
                           : std::optional<Domain>(DomainOrThrow(
                                 j["train_domain"].get<std::string>()));
  }
  Read(j, "epochs", cfg.epochs);
  Read(j, "encoder_lr", cfg.encoder_lr);
  Read(j, "head_lr", cfg.head_lr);
  Read(j, "batch_size", cfg.batch_size);
  Read(j, "clip_norm", cfg.clip_norm);
  if (m.decode.threshold <= 0.0 || m.decode.threshold >= 1.0) {
    throw std::invalid_argument("decode.threshold must lie in (0, 1)");
  }
  if (cfg.epochs < 0 || cfg.batch_size < 1) {
    throw std::invalid_argument("epochs must be >= 0 and batch_size >= 1");
  }
  return cfg;
}

std::vector<model::PreparedDocument> PrepareAll(
    const model::RelationModel& m, std::span<const corpus::Document> docs) {
  std::vector<model::PreparedDocument> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) out.push_back(m.Prepare(doc));
  return out;
}

}  // namespace

std::string RunConfigToJson(const RunConfig& cfg, int indent) {
  return ToJson(cfg).dump(indent);
}

RunConfig RunConfigFromJson(std::string_view text, RunConfig defaults) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return FromJson(j, std::move(defaults));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
}

double Evaluate(const model::RelationModel& m,
                std::span<const corpus::Document> docs, PairLabels* predictions) {
  const auto prepared = PrepareAll(m, docs);
  PairLabels predicted = m.Predict(prepared);
  const double f1 = MacroF1(predicted, model::GoldLabels(docs));
  if (predictions != nullptr) *predictions = std::move(predicted);
  return f1;
}

TrainResult Train(const RunConfig& cfg, std::span<const corpus::Document> train,
                  std::span<const corpus::Document> dev,
                  std::span<const corpus::Document> test) {
  TrainResult result;
  result.model = std::make_unique<model::RelationModel>(cfg.model);
  model::RelationModel& m = *result.model;
  const bool multi_label = cfg.model.decode.multi_label;

  const auto train_prepared = PrepareAll(m, train);
  const auto dev_prepared = PrepareAll(m, dev);
  const PairLabels dev_gold = model::GoldLabels(dev);

  nn::AdamOptions adam_options;
  adam_options.clip_norm = cfg.clip_norm;
  nn::Adam optimizer(m.parameters(),
                     cfg.model.encoder.finetune ? cfg.encoder_lr : 0.0,
                     cfg.head_lr, adam_options);

  std::vector<std::size_t> order(train_prepared.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<nn::Matrix> best = m.parameters().Snapshot();
  double best_f1 = -1.0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::mt19937_64 shuffle_rng(cfg.model.seed * 1000003ULL +
                                static_cast<std::uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_loss = 0.0;
    int epoch_pairs = 0;

    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      int batch_pairs = 0;
      for (std::size_t k = start; k < stop; ++k) {
        batch_pairs += static_cast<int>(train_prepared[order[k]].doc->relations.size());
      }
      if (batch_pairs == 0) continue;
      for (std::size_t k = start; k < stop; ++k) {
        const auto& prepared = train_prepared[order[k]];
        const auto logits = m.PairLogits(prepared);
        if (logits.empty()) continue;
        nn::Var loss;
        for (std::size_t r = 0; r < logits.size(); ++r) {
          nn::Var pair_loss = relclf::PairLossVar(
              logits[r], prepared.doc->relations[r].labels, multi_label);
          loss = loss.valid() ? nn::Add(loss, pair_loss) : pair_loss;
        }
        if (!std::isfinite(loss.scalar())) {
          throw NonFiniteLoss("non-finite loss " + std::to_string(loss.scalar()) +
                              " at epoch " + std::to_string(epoch) + " on '" +
                              prepared.doc->id + "'");
        }
        epoch_loss += loss.scalar();
        nn::Backward(nn::Scale(loss, 1.0 / batch_pairs));
      }
      epoch_pairs += batch_pairs;
      optimizer.Step();
      if (!m.parameters().AllFinite()) {
        throw NonFiniteLoss("parameters became non-finite at epoch " +
                            std::to_string(epoch));
      }
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = epoch_pairs > 0 ? epoch_loss / epoch_pairs : 0.0;
    record.dev_f1 = dev.empty() ? 0.0 : MacroF1(m.Predict(dev_prepared), dev_gold);
    result.epochs.push_back(record);
    if (dev.empty() || record.dev_f1 > best_f1) {
      best_f1 = record.dev_f1;
      result.best_epoch = epoch;
      best = m.parameters().Snapshot();
    }
  }

  m.parameters().Restore(best);
  result.best_dev_f1 = std::max(best_f1, 0.0);
  result.test_f1 = Evaluate(m, test, &result.test_predictions);
  return result;
}

std::string MetricsRecord(const RunConfig& cfg, const TrainResult& result) {
  json j;
  j["config"] = ToJson(cfg);
  json epochs = json::array();
  for (const auto& e : result.epochs) {
    epochs.push_back(
        {{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"dev_f1", e.dev_f1}});
  }
  j["epochs"] = std::move(epochs);
  j["best_epoch"] = result.best_epoch;
  j["best_dev_f1"] = result.best_dev_f1;
  j["test_f1"] = result.test_f1;
  return j.dump();
}

MetricsSummary ParseMetricsRecord(std::string_view text) {
  try {
    const json j = json::parse(text);
    MetricsSummary s;
    s.config = FromJson(j.at("config"), RunConfig{});
    s.test_f1 = j.at("test_f1").get<double>();
    s.best_dev_f1 = j.value("best_dev_f1", 0.0);
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed metrics record: ") + e.what());
  }
}

std::string PredictionDump(const model::RelationModel& m,
                           std::span<const corpus::Document> docs) {
  std::string out;
  for (const auto& doc : docs) {
    const auto prepared = m.Prepare(doc);
    for (const auto& score : m.Score(prepared)) {
      json labels = json::array();
      for (Label l : relclf::DecodeLabels(score, m.config().decode).ToVector()) {
        labels.push_back(LabelName(l));
      }
      json probs = json::array();
      for (int i = 0; i < kNumLabels; ++i) probs.push_back(score.probabilities(i));
      json line = {{"doc_id", doc.id},
                   {"head", score.head},
                   {"tail", score.tail},
                   {"labels", std::move(labels)},
                   {"probabilities", std::move(probs)}};
      out += line.dump();
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace relgraph::eval
