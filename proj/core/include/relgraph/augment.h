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

#ifndef RELGRAPH_AUGMENT_H_
#define RELGRAPH_AUGMENT_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/corpus.h"

namespace relgraph::augment {

// Bumping this invalidates every cached paragraph.
inline constexpr std::string_view kPromptVersion = "v1";

inline constexpr int kMinSupportSentences = 4;
inline constexpr int kMaxSupportSentences = 6;

class AugmentError : public std::runtime_error {
 public:
  enum class Kind { kEmptySentence, kClientUnavailable, kCacheCorrupt };

  AugmentError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Substitutes `sentence` verbatim into the context-generation prompt.
std::string BuildPrompt(std::string_view sentence);

// Recovers the sentence from a prompt produced by BuildPrompt.
std::optional<std::string> SentenceFromPrompt(std::string_view prompt);

// A chat model that turns a prompt into a paragraph. Implementations throw
// std::runtime_error on transport failures.
class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  virtual std::string Complete(const std::string& prompt) = 0;
  virtual corpus::SupportSource source() const {
    return corpus::SupportSource::kGenerated;
  }
};

// Offline client. Paragraphs come from a fixture table keyed by
// Sha256Hex(sentence); sentences without a fixture get a deterministic
// five-sentence synthetic paragraph. Thread-safe.
class MockClient : public GenerationClient {
 public:
  MockClient() = default;
  explicit MockClient(std::map<std::string, std::string> fixtures)
      : fixtures_(std::move(fixtures)) {}

  // Fixture file: a JSON object {"<sha256 of sentence>": "paragraph", ...}.
  // Throws std::runtime_error when unreadable or malformed.
  static std::map<std::string, std::string> LoadFixtures(
      const std::filesystem::path& path);

  std::string Complete(const std::string& prompt) override;
  corpus::SupportSource source() const override {
    return corpus::SupportSource::kMock;
  }

  int calls() const { return calls_.load(); }

 private:
  std::map<std::string, std::string> fixtures_;
  std::atomic<int> calls_{0};
};

std::string SentenceKey(std::string_view sentence);

// The paragraph MockClient produces when no fixture matches.
std::string SynthesizeParagraph(std::string_view sentence);

struct ClientSettings {
  std::string model = "gpt-3.5-turbo";
  double temperature = 1.0;
  std::string base_url = "https://api.openai.com";
  std::string endpoint = "/v1/chat/completions";
  std::string api_key_env = "RELGRAPH_API_KEY";
  std::string system_prompt;  // Empty: no system message.
  int timeout_seconds = 60;
};

// OpenAI-compatible chat-completions client. The credential is read from the
// environment variable named in `api_key_env`.
class ChatCompletionClient : public GenerationClient {
 public:
  explicit ChatCompletionClient(ClientSettings settings);
  std::string Complete(const std::string& prompt) override;

 private:
  ClientSettings settings_;
  std::string api_key_;
};

struct GenerationPolicy {
  int retry_budget = 3;
  bool fallback = true;
  std::string prompt_version = std::string(kPromptVersion);
};

enum class SupportProblem {
  kNone,
  kTooFewSentences,
  kTooManySentences,
  kMissingSentence,
};

std::string_view SupportProblemName(SupportProblem problem);

// Sentence count within [4, 6] and the original sentence contained (after
// text::NormalizeForMatch).
SupportProblem CheckSupport(const corpus::SupportDocument& support,
                            std::string_view sentence);

// One file per key under a directory; writes are atomic.
class SupportCache {
 public:
  explicit SupportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  // Sha256Hex of the prompt version and the full prompt text.
  static std::string Key(std::string_view sentence,
                         std::string_view prompt_version);

  // nullopt on miss; throws AugmentError(kCacheCorrupt) when the entry exists
  // but is unreadable or fails CheckSupport for `sentence`. Entries stored
  // with `fallback` hold the bare sentence and skip that check.
  std::optional<corpus::SupportDocument> Get(const std::string& key,
                                             std::string_view sentence) const;
  void Put(const std::string& key, const corpus::SupportDocument& support,
           std::string_view prompt_version, bool fallback = false) const;
  void Erase(const std::string& key) const;

  std::filesystem::path PathFor(const std::string& key) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct GenerationOutcome {
  corpus::SupportDocument support;
  int client_calls = 0;
  bool from_cache = false;
  bool fell_back = false;
  bool repaired_cache = false;
};

// Cache lookup, then up to 1 + retry_budget client attempts. When every
// attempt is invalid the original sentence becomes the support text
// (source kMock), or AugmentError(kClientUnavailable) is thrown when
// fallback is disabled. Fallbacks are not cached.
GenerationOutcome GenerateSupport(const corpus::Document& doc,
                                  GenerationClient& client,
                                  const GenerationPolicy& policy,
                                  const SupportCache* cache);

struct AugmentStats {
  int generated = 0;
  int mock = 0;
  int cached = 0;
  int fallback = 0;
  int client_calls = 0;
  int repaired_cache = 0;
};

// Attaches a support paragraph to every document, with at most
// `max_in_flight` concurrent client requests. Only Document::support is
// modified.
AugmentStats AugmentCorpus(std::vector<corpus::Document>& docs,
                           GenerationClient& client,
                           const GenerationPolicy& policy,
                           const SupportCache* cache, int max_in_flight = 4);

}  // namespace relgraph::augment

#endif  // RELGRAPH_AUGMENT_H_
