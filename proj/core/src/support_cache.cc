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

#include <system_error>

#include "relgraph/fileio.h"
#include "json.hpp"
#include "relgraph/augment.h"
#include "relgraph/hash.h"

namespace relgraph::augment {

std::string SupportCache::Key(std::string_view sentence,
                              std::string_view prompt_version) {
  std::string material(prompt_version);
  material.push_back('\n');
  material += BuildPrompt(sentence);
  return Sha256Hex(material);
}

std::filesystem::path SupportCache::PathFor(const std::string& key) const {
  return dir_ / (key + ".json");
}

std::optional<corpus::SupportDocument> SupportCache::Get(
    const std::string& key, std::string_view sentence) const {
  const auto path = PathFor(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  auto content = ReadFile(path);
  if (!content) {
    throw AugmentError(AugmentError::Kind::kCacheCorrupt,
                       "unreadable cache entry " + path.string());
  }
  std::string text;
  bool fallback = false;
  try {
    const auto j = nlohmann::json::parse(*content);
    text = j.at("text").get<std::string>();
    fallback = j.value("fallback", false);
  } catch (const nlohmann::json::exception& e) {
    throw AugmentError(AugmentError::Kind::kCacheCorrupt,
                       "malformed cache entry " + path.string() + ": " + e.what());
  }
  // A remembered fallback is the bare sentence; anything else is damage.
  if (fallback) {
    if (text != sentence) {
      throw AugmentError(AugmentError::Kind::kCacheCorrupt,
                         "fallback entry " + path.string() + " does not match");
    }
    return corpus::SupportDocument::FromText(std::move(text),
                                             corpus::SupportSource::kCached);
  }
  auto support = corpus::SupportDocument::FromText(std::move(text),
                                                   corpus::SupportSource::kCached);
  const SupportProblem problem = CheckSupport(support, sentence);
  if (problem != SupportProblem::kNone) {
    throw AugmentError(AugmentError::Kind::kCacheCorrupt,
                       "cache entry " + path.string() + " invalid: " +
                           std::string(SupportProblemName(problem)));
  }
  return support;
}

void SupportCache::Put(const std::string& key,
                       const corpus::SupportDocument& support,
                       std::string_view prompt_version, bool fallback) const {
  nlohmann::json j;
  j["prompt_version"] = prompt_version;
  j["source"] = corpus::SupportSourceName(support.source);
  j["text"] = support.text;
  if (fallback) j["fallback"] = true;
  WriteFileAtomically(PathFor(key), j.dump(2) + "\n");
}

void SupportCache::Erase(const std::string& key) const {
  std::error_code ec;
  std::filesystem::remove(PathFor(key), ec);
}

}  // namespace relgraph::augment
