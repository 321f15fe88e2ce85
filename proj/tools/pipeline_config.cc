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

#include "pipeline_config.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "relgraph/fileio.h"

#ifndef RELGRAPH_VERSION
#define RELGRAPH_VERSION "unknown"
#endif

namespace relgraph::cli {
namespace {

using nlohmann::json;

void RejectUnknown(const json& j, std::initializer_list<const char*> known,
                   const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      throw CommandError(kExitValidation, "unknown config key '" + where + key + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j[key].is_null()) out = j[key].get<T>();
}

}  // namespace

fs::path PipelineConfig::Resolve(const fs::path& p) const {
  if (p.empty() || p.is_absolute()) return p;
  return (workspace / p).lexically_normal();
}

PipelineConfig LoadPipelineConfig(const fs::path& path) {
  auto text = ReadFile(path);
  if (!text) throw CommandError(kExitIo, "cannot read config " + path.string());
  PipelineConfig cfg;
  cfg.workspace = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  try {
    const json j = json::parse(*text);
    RejectUnknown(j, {"workspace", "paths", "adapter", "augment", "run", "report"}, "");
    if (j.contains("workspace")) {
      fs::path w = j["workspace"].get<std::string>();
      cfg.workspace = w.is_absolute() ? w : (cfg.workspace / w).lexically_normal();
    }
    if (j.contains("paths")) {
      const json& p = j["paths"];
      RejectUnknown(p, {"corpus", "augmented", "cache", "output"}, "paths.");
      Read(p, "corpus", cfg.corpus);
      Read(p, "augmented", cfg.augmented);
      Read(p, "cache", cfg.cache);
      Read(p, "output", cfg.output);
    }
    Read(j, "adapter", cfg.adapter);
    if (j.contains("augment")) {
      const json& a = j["augment"];
      RejectUnknown(a,
                    {"offline", "fixtures", "retry_budget", "fallback",
                     "prompt_version", "jobs", "client"},
                    "augment.");
      Read(a, "offline", cfg.augment.offline);
      Read(a, "fixtures", cfg.augment.fixtures);
      Read(a, "retry_budget", cfg.augment.policy.retry_budget);
      Read(a, "fallback", cfg.augment.policy.fallback);
      Read(a, "prompt_version", cfg.augment.policy.prompt_version);
      Read(a, "jobs", cfg.augment.jobs);
      if (a.contains("client")) {
        const json& c = a["client"];
        RejectUnknown(c,
                      {"model", "temperature", "base_url", "endpoint",
                       "api_key_env", "system_prompt", "timeout_seconds"},
                      "augment.client.");
        auto& s = cfg.augment.client;
        Read(c, "model", s.model);
        Read(c, "temperature", s.temperature);
        Read(c, "base_url", s.base_url);
        Read(c, "endpoint", s.endpoint);
        Read(c, "api_key_env", s.api_key_env);
        Read(c, "system_prompt", s.system_prompt);
        Read(c, "timeout_seconds", s.timeout_seconds);
      }
    }
    if (j.contains("run")) {
      cfg.run = eval::RunConfigFromJson(j["run"].dump(), cfg.run);
    }
    if (j.contains("report")) {
      const json& r = j["report"];
      RejectUnknown(r, {"domains", "fusions", "format"}, "report.");
      Read(r, "domains", cfg.report.domains);
      Read(r, "fusions", cfg.report.fusions);
      Read(r, "format", cfg.report.format);
    }
  } catch (const json::exception& e) {
    throw CommandError(kExitValidation,
                       "bad config " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitValidation,
                       "bad config " + path.string() + ": " + e.what());
  }
  return cfg;
}

json PipelineConfigToJson(const PipelineConfig& cfg) {
  const auto& a = cfg.augment;
  return {
      {"workspace", cfg.workspace.string()},
      {"paths",
       {{"corpus", cfg.corpus},
        {"augmented", cfg.augmented},
        {"cache", cfg.cache},
        {"output", cfg.output}}},
      {"adapter", cfg.adapter},
      {"augment",
       {{"offline", a.offline},
        {"fixtures", a.fixtures},
        {"retry_budget", a.policy.retry_budget},
        {"fallback", a.policy.fallback},
        {"prompt_version", a.policy.prompt_version},
        {"jobs", a.jobs},
        {"client",
         {{"model", a.client.model},
          {"temperature", a.client.temperature},
          {"base_url", a.client.base_url},
          {"endpoint", a.client.endpoint},
          {"api_key_env", a.client.api_key_env},
          {"system_prompt", a.client.system_prompt},
          {"timeout_seconds", a.client.timeout_seconds}}}}},
      {"run", json::parse(eval::RunConfigToJson(cfg.run))},
      {"report",
       {{"domains", cfg.report.domains},
        {"fusions", cfg.report.fusions},
        {"format", cfg.report.format}}},
  };
}

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()) % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(ms.count()));
  return out;
}

RunMetadata::RunMetadata(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)),
      argv_(std::move(argv)),
      started_at_(UtcTimestamp()) {}

void RunMetadata::Write(const fs::path& path, const PipelineConfig& cfg) const {
  json j = {
      {"command", command_},
      {"version", RELGRAPH_VERSION},
      {"argv", argv_},
      {"seed", cfg.run.model.seed},
      {"config", PipelineConfigToJson(cfg)},
      {"inputs", inputs_},
      {"outputs", outputs_},
      {"started_at", started_at_},
      {"finished_at", UtcTimestamp()},
  };
  if (!extra_.empty()) j["details"] = extra_;
  WriteFileAtomically(path, j.dump(2) + "\n");
}

}  // namespace relgraph::cli
