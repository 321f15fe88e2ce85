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

#ifndef RELGRAPH_TOOLS_PIPELINE_CONFIG_H_
#define RELGRAPH_TOOLS_PIPELINE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "relgraph/augment.h"
#include "relgraph/trainer.h"

namespace relgraph::cli {

namespace fs = std::filesystem;

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitIo = 3,
  kExitClient = 4,
  kExitMissingArtifact = 5,
  kExitNonFinite = 6,
};

// Thrown by commands; main() prints the message and exits with `code`.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct AugmentSettings {
  bool offline = false;
  std::string fixtures;  // Mock fixtures file (offline only).
  augment::GenerationPolicy policy;
  augment::ClientSettings client;
  int jobs = 4;
};

struct ReportSettings {
  std::vector<std::string> domains;  // Empty: all six.
  std::vector<std::string> fusions;  // Empty: all five.
  std::string format = "csv";        // csv or tsv.
};

// Everything a pipeline run depends on. Paths are kept as written; Resolve()
// anchors relative ones at the workspace root.
struct PipelineConfig {
  fs::path workspace = ".";
  std::string corpus = "corpus.jsonl";
  std::string augmented = "corpus.augmented.jsonl";
  std::string cache = ".relgraph-cache";
  std::string output = "runs";
  std::string adapter = "upstream";  // upstream or canonical.
  AugmentSettings augment;
  eval::RunConfig run;
  ReportSettings report;

  fs::path Resolve(const fs::path& p) const;
};

// Reads the JSON config file over the defaults. A relative "workspace" is
// taken relative to the file's directory; without one the directory itself
// is the workspace. Unknown keys are rejected.
PipelineConfig LoadPipelineConfig(const fs::path& path);

nlohmann::json PipelineConfigToJson(const PipelineConfig& cfg);

// Run-metadata record written next to a command's outputs.
class RunMetadata {
 public:
  RunMetadata(std::string command, std::vector<std::string> argv);

  void AddInput(const fs::path& p) { inputs_.push_back(p.string()); }
  void AddOutput(const fs::path& p) { outputs_.push_back(p.string()); }
  nlohmann::json& extra() { return extra_; }

  // Stamps the finish time and writes the record atomically.
  void Write(const fs::path& path, const PipelineConfig& cfg) const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::string started_at_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  nlohmann::json extra_ = nlohmann::json::object();
};

std::string UtcTimestamp();

}  // namespace relgraph::cli

#endif  // RELGRAPH_TOOLS_PIPELINE_CONFIG_H_
