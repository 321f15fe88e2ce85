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

// Command-line entry point; one subcommand per pipeline stage.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pipeline_config.h"
#include "relgraph/augment.h"
#include "relgraph/corpus.h"
#include "relgraph/fileio.h"
#include "relgraph/graph.h"
#include "relgraph/metrics.h"
#include "relgraph/results_table.h"
#include "relgraph/trainer.h"
#include "relgraph/upstream.h"

namespace relgraph::cli {
namespace {

using nlohmann::json;

struct GlobalFlags {
  std::string config;
  std::string workspace;
};

// Training/model flags shared by train and eval. Unset flags leave the
// config-file (or default) value alone.
struct RunFlags {
  std::optional<std::string> encoder, fusion, domain, train_domain, activation;
  std::optional<int> epochs, batch_size, hidden_dim, max_length, gcn_layers,
      gat_heads, layers;
  std::optional<std::uint64_t> seed;
  std::optional<double> encoder_lr, head_lr, clip_norm, threshold;
  bool single_label = false, no_support = false, no_finetune = false,
       no_gcn = false, no_gat = false;

  void Register(CLI::App* cmd) {
    cmd->add_option("--encoder", encoder, "bert-base-cased, roberta-base or deberta-v3-base");
    cmd->add_option("--fusion", fusion, "none, mean, max, tanh or times");
    cmd->add_option("--domain", domain, "Evaluation domain");
    cmd->add_option("--train-domain", train_domain, "Train on another domain");
    cmd->add_option("--epochs", epochs);
    cmd->add_option("--batch-size", batch_size);
    cmd->add_option("--seed", seed);
    cmd->add_option("--encoder-lr", encoder_lr);
    cmd->add_option("--head-lr", head_lr);
    cmd->add_option("--clip-norm", clip_norm);
    cmd->add_option("--threshold", threshold, "Decision threshold in (0, 1)");
    cmd->add_option("--hidden-dim", hidden_dim);
    cmd->add_option("--max-length", max_length, "Subword budget per mini-document");
    cmd->add_option("--encoder-layers", layers);
    cmd->add_option("--gcn-layers", gcn_layers);
    cmd->add_option("--gcn-activation", activation, "identity, relu or tanh");
    cmd->add_option("--gat-heads", gat_heads);
    cmd->add_flag("--single-label", single_label, "Argmax decoding with softmax loss");
    cmd->add_flag("--no-support", no_support, "Ignore support paragraphs");
    cmd->add_flag("--no-finetune", no_finetune, "Freeze encoder parameters");
    cmd->add_flag("--no-gcn", no_gcn);
    cmd->add_flag("--no-gat", no_gat);
  }

  void Apply(eval::RunConfig& run) const {
    auto& m = run.model;
    if (encoder) m.encoder.model_name = *encoder;
    if (fusion) {
      auto f = gnn::ParseFusion(*fusion);
      if (!f) throw CommandError(kExitValidation, "unknown fusion '" + *fusion + "'");
      m.gnn.fusion = *f;
    }
    if (activation) {
      auto a = gnn::ParseActivation(*activation);
      if (!a) throw CommandError(kExitValidation, "unknown activation '" + *activation + "'");
      m.gnn.gcn_activation = *a;
    }
    if (domain) run.domain = ParseDomainOrThrow(*domain);
    if (train_domain) run.train_domain = ParseDomainOrThrow(*train_domain);
    if (epochs) run.epochs = *epochs;
    if (batch_size) run.batch_size = *batch_size;
    if (seed) m.seed = *seed;
    if (encoder_lr) run.encoder_lr = *encoder_lr;
    if (head_lr) run.head_lr = *head_lr;
    if (clip_norm) run.clip_norm = *clip_norm;
    if (threshold) m.decode.threshold = *threshold;
    if (hidden_dim) m.encoder.hidden_dim = *hidden_dim;
    if (max_length) m.encoder.max_length = *max_length;
    if (layers) m.encoder.layers = *layers;
    if (gcn_layers) m.gnn.gcn_layers = *gcn_layers;
    if (gat_heads) m.gnn.gat_heads = *gat_heads;
    if (single_label) m.decode.multi_label = false;
    if (no_support) m.use_support = false;
    if (no_finetune) m.encoder.finetune = false;
    if (no_gcn) m.gnn.use_gcn = false;
    if (no_gat) m.gnn.use_gat = false;
    // Round-trip through the JSON reader to reuse its range checks.
    try {
      run = eval::RunConfigFromJson(eval::RunConfigToJson(run));
      encode::ValidateConfig(m.encoder);
    } catch (const std::exception& e) {
      throw CommandError(kExitValidation, e.what());
    }
  }

  static Domain ParseDomainOrThrow(const std::string& name) {
    auto d = ParseDomain(name);
    if (!d) throw CommandError(kExitValidation, "unknown domain '" + name + "'");
    return *d;
  }
};

PipelineConfig LoadConfig(const GlobalFlags& g) {
  PipelineConfig cfg;
  if (!g.config.empty()) cfg = LoadPipelineConfig(g.config);
  if (!g.workspace.empty()) cfg.workspace = g.workspace;
  return cfg;
}

std::vector<corpus::Document> LoadCorpusOrThrow(const fs::path& path) {
  if (!fs::exists(path)) {
    throw CommandError(kExitMissingArtifact, "missing corpus " + path.string());
  }
  try {
    return corpus::ReadCorpus(path);
  } catch (const corpus::CorpusError& e) {
    throw CommandError(e.kind() == corpus::CorpusError::Kind::kIo ? kExitIo
                                                                   : kExitValidation,
                       e.what());
  }
}

void WriteText(const fs::path& path, const std::string& content) {
  try {
    WriteFileAtomically(path, content);
  } catch (const std::exception& e) {
    throw CommandError(kExitIo, e.what());
  }
}

// Infers (domain, split) from a "<domain>-<split>.json" file name.
std::optional<std::pair<Domain, Split>> DomainSplitFromName(const fs::path& p) {
  const std::string stem = p.stem().string();
  const auto dash = stem.rfind('-');
  if (dash == std::string::npos) return std::nullopt;
  auto d = ParseDomain(stem.substr(0, dash));
  auto s = ParseSplit(stem.substr(dash + 1));
  if (!d || !s) return std::nullopt;
  return std::pair(*d, *s);
}

// ---------------------------------------------------------------- ingest

struct IngestFlags {
  std::string input, output, domain, split, adapter;
  bool lenient = false;
};

int RunIngest(const GlobalFlags& g, const IngestFlags& f,
              const std::vector<std::string>& argv) {
  PipelineConfig cfg = LoadConfig(g);
  if (!f.adapter.empty()) cfg.adapter = f.adapter;
  if (!f.output.empty()) cfg.corpus = f.output;
  RunMetadata meta("ingest", argv);
  const fs::path input = cfg.Resolve(f.input);
  const fs::path output = cfg.Resolve(cfg.corpus);
  meta.AddInput(input);

  std::optional<Domain> domain;
  if (!f.domain.empty()) domain = RunFlags::ParseDomainOrThrow(f.domain);
  std::optional<Split> split;
  if (!f.split.empty()) {
    split = ParseSplit(f.split);
    if (!split) throw CommandError(kExitValidation, "unknown split '" + f.split + "'");
  }

  std::vector<std::string> rejected;
  std::vector<corpus::Document> docs;
  std::vector<Domain> seen_domains;
  try {
    if (!fs::exists(input)) throw CommandError(kExitIo, "cannot read " + input.string());
    if (fs::is_directory(input)) {
      docs = corpus::ReadUpstreamDirectory(input, domain, &rejected);
      if (domain) seen_domains.push_back(*domain);
    } else if (cfg.adapter == "canonical") {
      docs = corpus::ReadCorpus(input, &rejected);
    } else if (cfg.adapter == "upstream") {
      auto inferred = DomainSplitFromName(input);
      if (!domain && inferred) domain = inferred->first;
      if (!split && inferred) split = inferred->second;
      if (!domain || !split) {
        throw CommandError(kExitValidation,
                           "--domain and --split are required for " + input.string());
      }
      seen_domains.push_back(*domain);
      docs = corpus::ReadUpstreamFile(input, *domain, *split, &rejected);
    } else {
      throw CommandError(kExitValidation, "unknown adapter '" + cfg.adapter + "'");
    }
  } catch (const corpus::CorpusError& e) {
    throw CommandError(kExitIo, e.what());
  }

  const auto violations = corpus::ValidateCorpus(docs);
  if (!rejected.empty() || !violations.empty()) {
    for (const auto& r : rejected) std::cerr << "rejected: " << r << "\n";
    for (const auto& v : violations) {
      std::cerr << corpus::ViolationKindName(v.kind) << ": " << v.doc_id << ": "
                << v.detail << "\n";
    }
    if (!f.lenient) {
      throw CommandError(kExitValidation,
                         std::to_string(rejected.size() + violations.size()) +
                             " validation failure(s); rerun with --lenient to skip them");
    }
    std::vector<bool> drop(docs.size(), false);
    for (const auto& v : violations) drop[v.doc_index] = true;
    std::vector<corpus::Document> kept;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!drop[i]) kept.push_back(std::move(docs[i]));
    }
    docs = std::move(kept);
  }

  try {
    corpus::WriteCorpus(output, docs);
  } catch (const std::exception& e) {
    throw CommandError(kExitIo, e.what());
  }
  auto stats = corpus::CorpusStats(docs);
  for (Domain d : seen_domains) stats.try_emplace(d);
  const std::string table = corpus::FormatStatsTable(stats, '\t');
  const fs::path stats_path = output.string() + ".stats.tsv";
  WriteText(stats_path, table);
  std::cout << table;

  meta.AddOutput(output);
  meta.AddOutput(stats_path);
  meta.extra() = {{"documents", docs.size()},
                  {"rejected", rejected.size()},
                  {"violations", violations.size()}};
  meta.Write(output.string() + ".meta.json", cfg);
  return kExitOk;
}

// ---------------------------------------------------------------- augment

struct AugmentFlags {
  std::string input, output, fixtures, cache_dir;
  std::optional<int> retry_budget, jobs;
  bool offline = false, no_fallback = false, no_cache = false;
};

int RunAugment(const GlobalFlags& g, const AugmentFlags& f,
               const std::vector<std::string>& argv) {
  PipelineConfig cfg = LoadConfig(g);
  if (f.offline) cfg.augment.offline = true;
  if (!f.fixtures.empty()) cfg.augment.fixtures = f.fixtures;
  if (f.retry_budget) cfg.augment.policy.retry_budget = *f.retry_budget;
  if (f.jobs) cfg.augment.jobs = *f.jobs;
  if (f.no_fallback) cfg.augment.policy.fallback = false;
  if (!f.input.empty()) cfg.corpus = f.input;
  if (!f.output.empty()) cfg.augmented = f.output;
  // Cache directory precedence: flag, environment, config file, default.
  if (!f.cache_dir.empty()) {
    cfg.cache = f.cache_dir;
  } else if (const char* env = std::getenv("RELGRAPH_CACHE_DIR"); env && *env) {
    cfg.cache = env;
  }

  RunMetadata meta("augment", argv);
  const fs::path input = cfg.Resolve(cfg.corpus);
  const fs::path output = cfg.Resolve(cfg.augmented);
  auto docs = LoadCorpusOrThrow(input);
  meta.AddInput(input);

  std::unique_ptr<augment::GenerationClient> client;
  if (cfg.augment.offline) {
    if (cfg.augment.fixtures.empty()) {
      client = std::make_unique<augment::MockClient>();
    } else {
      const fs::path fixtures = cfg.Resolve(cfg.augment.fixtures);
      if (!fs::exists(fixtures)) {
        throw CommandError(kExitMissingArtifact, "missing fixtures " + fixtures.string());
      }
      meta.AddInput(fixtures);
      try {
        client = std::make_unique<augment::MockClient>(
            augment::MockClient::LoadFixtures(fixtures));
      } catch (const std::exception& e) {
        throw CommandError(kExitValidation, e.what());
      }
    }
  } else {
    const char* key = std::getenv(cfg.augment.client.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw CommandError(kExitClient, "credential variable " +
                                          cfg.augment.client.api_key_env +
                                          " is not set (use --offline for the mock client)");
    }
    client = std::make_unique<augment::ChatCompletionClient>(cfg.augment.client);
  }

  std::optional<augment::SupportCache> cache;
  if (!f.no_cache) cache.emplace(cfg.Resolve(cfg.cache));
  augment::AugmentStats stats;
  try {
    stats = augment::AugmentCorpus(docs, *client, cfg.augment.policy,
                                   cache ? &*cache : nullptr, cfg.augment.jobs);
  } catch (const augment::AugmentError& e) {
    throw CommandError(e.kind() == augment::AugmentError::Kind::kClientUnavailable
                           ? kExitClient
                           : kExitValidation,
                       e.what());
  }
  try {
    corpus::WriteCorpus(output, docs);
  } catch (const std::exception& e) {
    throw CommandError(kExitIo, e.what());
  }

  const json summary = {{"documents", docs.size()},
                        {"generated", stats.generated},
                        {"mock", stats.mock},
                        {"cached", stats.cached},
                        {"fallback", stats.fallback},
                        {"client_calls", stats.client_calls},
                        {"repaired_cache", stats.repaired_cache}};
  std::cout << summary.dump() << "\n";
  meta.AddOutput(output);
  meta.extra() = summary;
  meta.Write(output.string() + ".meta.json", cfg);
  return kExitOk;
}

// ---------------------------------------------------------------- build-graphs

struct GraphFlags {
  std::string input, output_dir;
  std::vector<std::string> ids;
  bool no_support = false;
};

std::string SafeFileName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
      c = '_';
    }
  }
  return out;
}

int RunBuildGraphs(const GlobalFlags& g, const GraphFlags& f,
                   const std::vector<std::string>& argv) {
  PipelineConfig cfg = LoadConfig(g);
  RunMetadata meta("build-graphs", argv);
  const fs::path input = cfg.Resolve(f.input.empty() ? cfg.corpus : f.input);
  const fs::path out_dir = cfg.Resolve(
      f.output_dir.empty() ? fs::path(cfg.output) / "graphs" : fs::path(f.output_dir));
  const auto docs = LoadCorpusOrThrow(input);
  meta.AddInput(input);

  std::string summary = "doc_id\tsentences\tnodes\tedges\n";
  int written = 0;
  for (const auto& doc : docs) {
    if (!f.ids.empty() && std::find(f.ids.begin(), f.ids.end(), doc.id) == f.ids.end()) {
      continue;
    }
    const graph::MiniDoc minidoc =
        f.no_support ? graph::MiniDoc{doc.tokens} : graph::AssembleMiniDoc(doc);
    const auto gr = graph::BuildGraph(doc, minidoc);
    std::ostringstream nodes, edges;
    graph::WriteNodeTable(gr, nodes);
    graph::WriteEdgeList(gr, edges);
    const std::string base = SafeFileName(doc.id);
    WriteText(out_dir / (base + ".nodes.tsv"), nodes.str());
    WriteText(out_dir / (base + ".edges.tsv"), edges.str());
    summary += doc.id + "\t" + std::to_string(gr.sentence_count()) + "\t" +
               std::to_string(gr.node_count()) + "\t" +
               std::to_string(gr.EdgeCount()) + "\n";
    ++written;
  }
  for (const auto& id : f.ids) {
    if (std::none_of(docs.begin(), docs.end(), [&](const auto& d) { return d.id == id; })) {
      throw CommandError(kExitMissingArtifact, "no document with id '" + id + "'");
    }
  }
  WriteText(out_dir / "graphs.tsv", summary);
  std::cout << "wrote " << written << " graph(s) to " << out_dir.string() << "\n";
  meta.AddOutput(out_dir);
  meta.Write(out_dir / "build-graphs.meta.json", cfg);
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainFlags {
  std::string corpus, output_dir;
  RunFlags run;
};

std::string CellDirName(const eval::RunConfig& run) {
  std::string name = run.model.encoder.model_name + "_" +
                     std::string(gnn::FusionName(run.model.gnn.fusion)) + "_" +
                     std::string(DomainName(run.domain));
  if (run.train_domain) name += "_from-" + std::string(DomainName(*run.train_domain));
  return name + "_s" + std::to_string(run.model.seed);
}

fs::path DefaultCorpus(const PipelineConfig& cfg) {
  const fs::path augmented = cfg.Resolve(cfg.augmented);
  return fs::exists(augmented) ? augmented : cfg.Resolve(cfg.corpus);
}

int RunTrain(const GlobalFlags& g, const TrainFlags& f,
             const std::vector<std::string>& argv) {
  PipelineConfig cfg = LoadConfig(g);
  f.run.Apply(cfg.run);
  RunMetadata meta("train", argv);
  const fs::path corpus_path = f.corpus.empty() ? DefaultCorpus(cfg) : cfg.Resolve(f.corpus);
  const fs::path out_dir = f.output_dir.empty()
                               ? cfg.Resolve(fs::path(cfg.output) / CellDirName(cfg.run))
                               : cfg.Resolve(f.output_dir);
  const auto docs = LoadCorpusOrThrow(corpus_path);
  meta.AddInput(corpus_path);

  const Domain source = cfg.run.train_domain.value_or(cfg.run.domain);
  const auto train = eval::SelectDocuments(docs, source, Split::kTrain);
  const auto dev = eval::SelectDocuments(docs, source, Split::kDev);
  const auto test = eval::SelectDocuments(docs, cfg.run.domain, Split::kTest);
  if (train.empty()) {
    throw CommandError(kExitMissingArtifact, "no training documents for domain " +
                                                 std::string(DomainName(source)) +
                                                 " in " + corpus_path.string());
  }

  eval::TrainResult result;
  try {
    result = eval::Train(cfg.run, train, dev, test);
  } catch (const eval::NonFiniteLoss& e) {
    throw CommandError(kExitNonFinite, e.what());
  } catch (const encode::EncodeError& e) {
    throw CommandError(kExitValidation, e.what());
  }

  for (const auto& e : result.epochs) {
    std::printf("epoch %d  loss %.6f  dev macro-F1 %.2f\n", e.epoch, e.train_loss,
                e.dev_f1);
  }
  std::printf("best epoch %d  dev %.2f  test macro-F1 %.2f\n", result.best_epoch,
              result.best_dev_f1, result.test_f1);

  const std::vector<std::pair<std::string, std::string>> files = {
      {"config.json", eval::RunConfigToJson(cfg.run, 2) + "\n"},
      {"metrics.json", eval::MetricsRecord(cfg.run, result) + "\n"},
      {"params.bin", result.model->parameters().Serialize()},
      {"predictions.jsonl", eval::PredictionDump(*result.model, test)},
  };
  for (const auto& [name, content] : files) {
    WriteText(out_dir / name, content);
    meta.AddOutput(out_dir / name);
  }
  meta.extra() = {{"best_epoch", result.best_epoch},
                  {"best_dev_f1", result.best_dev_f1},
                  {"test_f1", result.test_f1}};
  meta.Write(out_dir / "train.meta.json", cfg);
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalFlags {
  std::string corpus, model_dir, split = "test", domain;
};

int RunEval(const GlobalFlags& g, const EvalFlags& f,
            const std::vector<std::string>& argv) {
  PipelineConfig cfg = LoadConfig(g);
  RunMetadata meta("eval", argv);
  if (f.model_dir.empty()) throw CommandError(kExitValidation, "--model-dir is required");
  const fs::path model_dir = cfg.Resolve(f.model_dir);
  const auto config_text = ReadFile(model_dir / "config.json");
  const auto params = ReadFile(model_dir / "params.bin");
  if (!config_text || !params) {
    throw CommandError(kExitMissingArtifact,
                       "missing config.json or params.bin in " + model_dir.string());
  }
  try {
    cfg.run = eval::RunConfigFromJson(*config_text);
  } catch (const std::exception& e) {
    throw CommandError(kExitValidation, e.what());
  }
  if (!f.domain.empty()) cfg.run.domain = RunFlags::ParseDomainOrThrow(f.domain);
  auto split = ParseSplit(f.split);
  if (!split) throw CommandError(kExitValidation, "unknown split '" + f.split + "'");

  const fs::path corpus_path = f.corpus.empty() ? DefaultCorpus(cfg) : cfg.Resolve(f.corpus);
  const auto docs = LoadCorpusOrThrow(corpus_path);
  meta.AddInput(corpus_path);
  meta.AddInput(model_dir / "params.bin");

  model::RelationModel model(cfg.run.model);
  try {
    model.parameters().Deserialize(*params);
  } catch (const std::exception& e) {
    throw CommandError(kExitValidation, std::string("bad params.bin: ") + e.what());
  }
  const auto selected = eval::SelectDocuments(docs, cfg.run.domain, *split);
  eval::PairLabels predictions;
  const double f1 = eval::Evaluate(model, selected, &predictions);
  const auto report = eval::ScoreMacroF1(predictions, model::GoldLabels(selected),
                                         AllLabels());
  json per_label = json::object();
  for (const auto& s : report.per_label) {
    per_label[std::string(LabelName(s.label))] = {{"tp", s.true_positives},
                                                  {"fp", s.false_positives},
                                                  {"fn", s.false_negatives},
                                                  {"precision", s.precision},
                                                  {"recall", s.recall},
                                                  {"f1", s.f1}};
  }
  const std::string tag = std::string(DomainName(cfg.run.domain)) + "-" +
                          std::string(SplitName(*split));
  const json result = {{"domain", DomainName(cfg.run.domain)},
                       {"split", SplitName(*split)},
                       {"documents", selected.size()},
                       {"pairs", predictions.size()},
                       {"macro_f1", f1},
                       {"per_label", per_label}};
  const fs::path eval_path = model_dir / ("eval-" + tag + ".json");
  const fs::path pred_path = model_dir / ("predictions-" + tag + ".jsonl");
  WriteText(eval_path, result.dump(2) + "\n");
  WriteText(pred_path, eval::PredictionDump(model, selected));
  std::printf("%s macro-F1 %.2f over %zu pair(s)\n", tag.c_str(), f1, predictions.size());
  meta.AddOutput(eval_path);
  meta.AddOutput(pred_path);
  meta.extra() = {{"macro_f1", f1}};
  meta.Write(model_dir / ("eval-" + tag + ".meta.json"), cfg);
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportFlags {
  std::vector<std::string> metrics, domains, fusions;
  std::string output_dir, format, corpus;
  bool label_distribution = false;
};

std::vector<fs::path> FindMetrics(const std::vector<fs::path>& roots) {
  std::vector<fs::path> out;
  for (const auto& root : roots) {
    if (!fs::exists(root)) {
      throw CommandError(kExitMissingArtifact, "missing " + root.string());
    }
    if (fs::is_regular_file(root)) {
      out.push_back(root);
      continue;
    }
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().filename() == "metrics.json") {
        out.push_back(entry.path());
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int RunReport(const GlobalFlags& g, const ReportFlags& f,
              const std::vector<std::string>& argv) {
  PipelineConfig cfg = LoadConfig(g);
  if (!f.domains.empty()) cfg.report.domains = f.domains;
  if (!f.fusions.empty()) cfg.report.fusions = f.fusions;
  if (!f.format.empty()) cfg.report.format = f.format;
  if (cfg.report.format != "csv" && cfg.report.format != "tsv") {
    throw CommandError(kExitValidation, "--format must be csv or tsv");
  }
  RunMetadata meta("report", argv);

  eval::GridSpec grid;
  if (!cfg.report.domains.empty()) {
    grid.domains.clear();
    for (const auto& d : cfg.report.domains) {
      grid.domains.push_back(RunFlags::ParseDomainOrThrow(d));
    }
  }
  if (!cfg.report.fusions.empty()) {
    grid.fusions.clear();
    for (const auto& name : cfg.report.fusions) {
      auto fu = gnn::ParseFusion(name);
      if (!fu) throw CommandError(kExitValidation, "unknown fusion '" + name + "'");
      grid.fusions.push_back(*fu);
    }
  }

  std::vector<fs::path> roots;
  for (const auto& m : f.metrics) roots.push_back(cfg.Resolve(m));
  if (roots.empty()) roots.push_back(cfg.Resolve(cfg.output));
  const auto files = FindMetrics(roots);
  if (files.empty()) throw CommandError(kExitMissingArtifact, "no metrics.json found");
  std::vector<std::string> records;
  for (const auto& path : files) {
    auto text = ReadFile(path);
    if (!text) throw CommandError(kExitIo, "cannot read " + path.string());
    records.push_back(std::move(*text));
    meta.AddInput(path);
  }

  const fs::path out_dir = cfg.Resolve(f.output_dir.empty() ? cfg.output : f.output_dir);
  std::string text, delimited, js;
  try {
    const eval::ResultsTable table = eval::TableFromMetrics(records, grid);
    text = table.RenderText();
    delimited = table.RenderDelimited(cfg.report.format == "tsv" ? '\t' : ',');
    js = table.RenderJson() + "\n";
  } catch (const eval::MissingCell& e) {
    throw CommandError(kExitMissingArtifact, e.what());
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitValidation, e.what());
  }
  if (f.label_distribution) {
    const fs::path corpus_path = f.corpus.empty() ? DefaultCorpus(cfg) : cfg.Resolve(f.corpus);
    const auto docs = LoadCorpusOrThrow(corpus_path);
    meta.AddInput(corpus_path);
    std::string dist;
    for (Domain d : grid.domains) {
      dist += eval::FormatLabelDistribution(corpus::LabelDistribution(docs, d), d);
    }
    WriteText(out_dir / "label_distribution.txt", dist);
    meta.AddOutput(out_dir / "label_distribution.txt");
    text += "\n" + dist;
  }
  const std::vector<std::pair<std::string, std::string>> outputs = {
      {"results.txt", text},
      {"results." + cfg.report.format, delimited},
      {"results.json", js},
  };
  for (const auto& [name, content] : outputs) {
    WriteText(out_dir / name, content);
    meta.AddOutput(out_dir / name);
  }
  std::cout << text;
  meta.Write(out_dir / "report.meta.json", cfg);
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Relation classification with graph-refined entity embeddings"};
  app.require_subcommand(1);
  GlobalFlags global;
  app.add_option("--config", global.config, "JSON pipeline config");
  app.add_option("--workspace", global.workspace,
                 "Root for relative paths (default: the config file's directory, else cwd)");

  IngestFlags ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Convert raw data to the canonical corpus");
  ingest_cmd->add_option("input", ingest.input, "Raw file or directory")->required();
  ingest_cmd->add_option("-o,--output", ingest.output, "Canonical corpus path");
  ingest_cmd->add_option("--domain", ingest.domain);
  ingest_cmd->add_option("--split", ingest.split);
  ingest_cmd->add_option("--adapter", ingest.adapter, "upstream or canonical");
  ingest_cmd->add_flag("--lenient", ingest.lenient, "Skip invalid records instead of failing");

  AugmentFlags aug;
  auto* aug_cmd = app.add_subcommand("augment", "Attach support paragraphs");
  aug_cmd->add_option("-i,--input", aug.input);
  aug_cmd->add_option("-o,--output", aug.output);
  aug_cmd->add_flag("--offline", aug.offline, "Use the mock client");
  aug_cmd->add_option("--fixtures", aug.fixtures, "Mock fixtures (JSON keyed by sentence hash)");
  aug_cmd->add_option("--cache-dir", aug.cache_dir);
  aug_cmd->add_flag("--no-cache", aug.no_cache);
  aug_cmd->add_option("--retry-budget", aug.retry_budget);
  aug_cmd->add_flag("--no-fallback", aug.no_fallback,
                    "Fail instead of falling back to the bare sentence");
  aug_cmd->add_option("--jobs", aug.jobs, "Concurrent requests");

  GraphFlags graphs;
  auto* graph_cmd = app.add_subcommand("build-graphs", "Dump word graphs for inspection");
  graph_cmd->add_option("-i,--input", graphs.input);
  graph_cmd->add_option("-o,--output-dir", graphs.output_dir);
  graph_cmd->add_option("--id", graphs.ids, "Only these document ids");
  graph_cmd->add_flag("--no-support", graphs.no_support);

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "Train one (encoder, fusion, domain) cell");
  train_cmd->add_option("-c,--corpus", train.corpus);
  train_cmd->add_option("-o,--output-dir", train.output_dir);
  train.run.Register(train_cmd);

  EvalFlags ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score a trained model on a split");
  eval_cmd->add_option("-m,--model-dir", ev.model_dir)->required();
  eval_cmd->add_option("-c,--corpus", ev.corpus);
  eval_cmd->add_option("--split", ev.split);
  eval_cmd->add_option("--domain", ev.domain);

  ReportFlags rep;
  auto* report_cmd = app.add_subcommand("report", "Render the results grid");
  report_cmd->add_option("metrics", rep.metrics, "metrics.json files or directories");
  report_cmd->add_option("-o,--output-dir", rep.output_dir);
  report_cmd->add_option("--domains", rep.domains)->delimiter(',');
  report_cmd->add_option("--fusions", rep.fusions)->delimiter(',');
  report_cmd->add_option("--format", rep.format, "csv or tsv");
  report_cmd->add_flag("--label-distribution", rep.label_distribution);
  report_cmd->add_option("--corpus", rep.corpus, "Corpus for --label-distribution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const std::vector<std::string> args(argv, argv + argc);
  try {
    if (*ingest_cmd) return RunIngest(global, ingest, args);
    if (*aug_cmd) return RunAugment(global, aug, args);
    if (*graph_cmd) return RunBuildGraphs(global, graphs, args);
    if (*train_cmd) return RunTrain(global, train, args);
    if (*eval_cmd) return RunEval(global, ev, args);
    if (*report_cmd) return RunReport(global, rep, args);
  } catch (const CommandError& e) {
    std::cerr << "relgraph: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "relgraph: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace
}  // namespace relgraph::cli

int main(int argc, char** argv) { return relgraph::cli::Main(argc, argv); }
