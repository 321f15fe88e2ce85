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

#include "relgraph/augment.h"

#include <exception>
#include <mutex>
#include <thread>

#include "relgraph/fileio.h"
#include "json.hpp"
#include "relgraph/hash.h"
#include "relgraph/text.h"
#include "text_util.h"

namespace relgraph::augment {
namespace {

constexpr std::string_view kPromptPrefix =
    "Generate some context for the given sentence: ";
constexpr std::string_view kPromptSuffix =
    " while including the sentence in the paragraph generated. Keep the "
    "paragraph around 4 sentences.";

bool EndsWithTerminator(std::string_view s) {
  s = internal::Trim(s);
  while (!s.empty() && (s.back() == '"' || s.back() == '\'' || s.back() == ')'))
    s.remove_suffix(1);
  return !s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?');
}

// Capitalised tokens after the first, in order of appearance, deduplicated.
std::vector<std::string> SalientWords(std::string_view sentence) {
  const auto tokens = text::TokenizeWords(sentence);
  std::vector<std::string> out;
  for (std::size_t i = 1; i < tokens.size() && out.size() < 2; ++i) {
    const std::string& t = tokens[i];
    if (t.size() < 2 || !(t[0] >= 'A' && t[0] <= 'Z')) continue;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  if (out.empty() && !tokens.empty()) out.push_back(tokens.front());
  return out;
}

}  // namespace

std::string BuildPrompt(std::string_view sentence) {
  if (internal::Trim(sentence).empty()) {
    throw AugmentError(AugmentError::Kind::kEmptySentence,
                       "cannot build a prompt for an empty sentence");
  }
  std::string prompt;
  prompt.reserve(kPromptPrefix.size() + sentence.size() + kPromptSuffix.size());
  prompt += kPromptPrefix;
  prompt += sentence;
  prompt += kPromptSuffix;
  return prompt;
}

std::optional<std::string> SentenceFromPrompt(std::string_view prompt) {
  if (!prompt.starts_with(kPromptPrefix) || !prompt.ends_with(kPromptSuffix) ||
      prompt.size() < kPromptPrefix.size() + kPromptSuffix.size()) {
    return std::nullopt;
  }
  prompt.remove_prefix(kPromptPrefix.size());
  prompt.remove_suffix(kPromptSuffix.size());
  return std::string(prompt);
}

std::string SentenceKey(std::string_view sentence) { return Sha256Hex(sentence); }

std::string SynthesizeParagraph(std::string_view sentence) {
  const auto words = SalientWords(sentence);
  const std::string& first = words.front();
  const std::string& second = words.size() > 1 ? words[1] : words.front();
  std::string body(internal::Trim(sentence));
  if (!EndsWithTerminator(body)) body += ".";
  std::string out;
  out += "Some background helps to place the following statement in context. ";
  out += body;
  out += " The statement gives a central role to " + first + ". ";
  out += "Further details about " + second +
         " are discussed in related sources. ";
  out += "Together these points summarize the situation described above.";
  return out;
}

std::map<std::string, std::string> MockClient::LoadFixtures(
    const std::filesystem::path& path) {
  auto content = ReadFile(path);
  if (!content) throw std::runtime_error("cannot read fixtures " + path.string());
  std::map<std::string, std::string> fixtures;
  try {
    const auto j = nlohmann::json::parse(*content);
    for (const auto& [key, value] : j.items()) {
      fixtures.emplace(key, value.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed fixtures " + path.string() + ": " + e.what());
  }
  return fixtures;
}

std::string MockClient::Complete(const std::string& prompt) {
  ++calls_;
  auto sentence = SentenceFromPrompt(prompt);
  if (!sentence) throw std::runtime_error("mock client received a foreign prompt");
  auto it = fixtures_.find(SentenceKey(*sentence));
  if (it != fixtures_.end()) return it->second;
  return SynthesizeParagraph(*sentence);
}

std::string_view SupportProblemName(SupportProblem problem) {
  switch (problem) {
    case SupportProblem::kNone:
      return "ok";
    case SupportProblem::kTooFewSentences:
      return "too few sentences";
    case SupportProblem::kTooManySentences:
      return "too many sentences";
    case SupportProblem::kMissingSentence:
      return "original sentence missing";
  }
  return "unknown";
}

SupportProblem CheckSupport(const corpus::SupportDocument& support,
                            std::string_view sentence) {
  const auto n = static_cast<int>(support.sentence_count());
  if (n < kMinSupportSentences) return SupportProblem::kTooFewSentences;
  if (n > kMaxSupportSentences) return SupportProblem::kTooManySentences;
  if (!text::ContainsNormalized(support.text, sentence))
    return SupportProblem::kMissingSentence;
  return SupportProblem::kNone;
}

GenerationOutcome GenerateSupport(const corpus::Document& doc,
                                  GenerationClient& client,
                                  const GenerationPolicy& policy,
                                  const SupportCache* cache) {
  const std::string sentence = doc.SentenceText();
  const std::string prompt = BuildPrompt(sentence);
  GenerationOutcome outcome;

  std::string key;
  if (cache != nullptr) {
    key = SupportCache::Key(sentence, policy.prompt_version);
    try {
      if (auto hit = cache->Get(key, sentence)) {
        outcome.support = std::move(*hit);
        outcome.from_cache = true;
        return outcome;
      }
    } catch (const AugmentError& e) {
      if (e.kind() != AugmentError::Kind::kCacheCorrupt) throw;
      cache->Erase(key);
      outcome.repaired_cache = true;
    }
  }

  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= policy.retry_budget; ++attempt) {
    std::string paragraph;
    ++outcome.client_calls;
    try {
      paragraph = client.Complete(prompt);
    } catch (const std::exception& e) {
      last_error = e.what();
      continue;
    }
    auto support = corpus::SupportDocument::FromText(std::move(paragraph),
                                                     client.source());
    const SupportProblem problem = CheckSupport(support, sentence);
    if (problem != SupportProblem::kNone) {
      last_error = std::string(SupportProblemName(problem));
      continue;
    }
    if (cache != nullptr) cache->Put(key, support, policy.prompt_version);
    outcome.support = std::move(support);
    return outcome;
  }

  if (!policy.fallback) {
    throw AugmentError(AugmentError::Kind::kClientUnavailable,
                       "no valid paragraph for '" + doc.id + "' after " +
                           std::to_string(outcome.client_calls) +
                           " attempts: " + last_error);
  }
  outcome.support =
      corpus::SupportDocument::FromText(sentence, corpus::SupportSource::kMock);
  outcome.fell_back = true;
  // Remembered so that re-runs stay call-free; deleting the entry retries.
  if (cache != nullptr) {
    cache->Put(key, outcome.support, policy.prompt_version, /*fallback=*/true);
  }
  return outcome;
}

AugmentStats AugmentCorpus(std::vector<corpus::Document>& docs,
                           GenerationClient& client,
                           const GenerationPolicy& policy,
                           const SupportCache* cache, int max_in_flight) {
  std::vector<GenerationOutcome> outcomes(docs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        outcomes[i] = GenerateSupport(docs[i], client, policy, cache);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = docs.size();
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(
      std::max(1, max_in_flight), std::max<std::size_t>(1, docs.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  AugmentStats stats;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    GenerationOutcome& o = outcomes[i];
    stats.client_calls += o.client_calls;
    if (o.repaired_cache) ++stats.repaired_cache;
    if (o.fell_back) {
      ++stats.fallback;
    } else if (o.from_cache) {
      ++stats.cached;
    } else if (o.support.source == corpus::SupportSource::kMock) {
      ++stats.mock;
    } else {
      ++stats.generated;
    }
    docs[i].support = std::move(o.support);
  }
  return stats;
}

}  // namespace relgraph::augment
