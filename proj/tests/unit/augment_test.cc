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

#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "relgraph/augment.h"
#include "relgraph/corpus.h"
#include "relgraph/hash.h"

namespace relgraph::augment {
namespace {

namespace fs = std::filesystem;

constexpr const char* kMiller =
    "For many years starting from 1986, Miller directed the development of "
    "WordNet, a large computer-readable electronic reference usable in "
    "applications such as search engines.";

std::string Paragraph(const std::string& sentence, int extra_sentences) {
  std::string out = "WordNet is a lexical database.";
  out += " " + sentence;
  for (int i = 1; i < extra_sentences; ++i) {
    out += " Point number " + std::to_string(i) + " follows here.";
  }
  return out;
}

corpus::Document DocFromText(const std::string& id, const std::vector<std::string>& tokens) {
  corpus::Document doc;
  doc.id = id;
  doc.tokens = tokens;
  return doc;
}

corpus::Document MillerDoc() {
  return DocFromText("miller", {"For", "many", "years", "starting", "from", "1986", ",",
                                "Miller", "directed", "the", "development", "of",
                                "WordNet", ",", "a", "large", "computer-readable",
                                "electronic", "reference", "usable", "in",
                                "applications", "such", "as", "search", "engines", "."});
}

// Replays a fixed list of replies, then repeats the last one.
class ScriptedClient : public GenerationClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string Complete(const std::string&) override {
    std::lock_guard lock(mu_);
    const std::size_t i = std::min(calls_, replies_.size() - 1);
    ++calls_;
    if (replies_[i] == "!throw") throw std::runtime_error("transport failure");
    return replies_[i];
  }
  int calls() const { return static_cast<int>(calls_); }

 private:
  std::mutex mu_;
  std::vector<std::string> replies_;
  std::size_t calls_ = 0;
};

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("relgraph-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(PromptTest, Template) {
  const std::string prompt = BuildPrompt(kMiller);
  EXPECT_EQ(prompt,
            std::string("Generate some context for the given sentence: ") + kMiller +
                " while including the sentence in the paragraph generated. Keep the "
                "paragraph around 4 sentences.");
  EXPECT_EQ(SentenceFromPrompt(prompt), std::string(kMiller));
}

TEST(PromptTest, EmptySentence) {
  try {
    BuildPrompt("   ");
    FAIL();
  } catch (const AugmentError& e) {
    EXPECT_EQ(e.kind(), AugmentError::Kind::kEmptySentence);
  }
}

TEST(PromptTest, BracesAreLiteral) {
  const std::string s = "The set {a, b} uses {0} and {sentence}.";
  const std::string prompt = BuildPrompt(s);
  EXPECT_NE(prompt.find(s), std::string::npos);
  EXPECT_EQ(SentenceFromPrompt(prompt), s);
}

TEST(CheckSupportTest, Problems) {
  using corpus::SupportDocument;
  using corpus::SupportSource;
  const std::string s = "Miller directed WordNet.";
  EXPECT_EQ(CheckSupport(SupportDocument::FromText(Paragraph(s, 4), SupportSource::kMock), s),
            SupportProblem::kNone);
  EXPECT_EQ(CheckSupport(SupportDocument::FromText(Paragraph(s, 1), SupportSource::kMock), s),
            SupportProblem::kTooFewSentences);
  EXPECT_EQ(CheckSupport(SupportDocument::FromText(Paragraph(s, 6), SupportSource::kMock), s),
            SupportProblem::kTooManySentences);
  EXPECT_EQ(CheckSupport(SupportDocument::FromText(Paragraph("Other text.", 4),
                                                   SupportSource::kMock),
                         s),
            SupportProblem::kMissingSentence);
}

TEST(GenerateSupportTest, MockFixture) {
  const auto doc = MillerDoc();
  const std::string sentence = doc.SentenceText();
  EXPECT_EQ(sentence, kMiller);
  MockClient client(std::map<std::string, std::string>{{SentenceKey(sentence), Paragraph(sentence, 4)}});
  const auto outcome = GenerateSupport(doc, client, {}, nullptr);
  EXPECT_EQ(outcome.support.source, corpus::SupportSource::kMock);
  EXPECT_EQ(outcome.support.sentence_count(), 5u);
  EXPECT_EQ(outcome.client_calls, 1);
  EXPECT_EQ(SentenceKey(sentence), Sha256Hex(sentence));
}

TEST(GenerateSupportTest, SynthesizedParagraphIsValid) {
  const auto doc = MillerDoc();
  MockClient client;
  const auto outcome = GenerateSupport(doc, client, {}, nullptr);
  EXPECT_FALSE(outcome.fell_back);
  EXPECT_EQ(CheckSupport(outcome.support, doc.SentenceText()), SupportProblem::kNone);
  EXPECT_NE(outcome.support.text.find("WordNet"), std::string::npos);
}

TEST(GenerateSupportTest, RetriesThenSucceeds) {
  const auto doc = MillerDoc();
  const std::string s = doc.SentenceText();
  ScriptedClient client({"Too short. " + s, "!throw", Paragraph(s, 4)});
  const auto outcome = GenerateSupport(doc, client, {}, nullptr);
  EXPECT_EQ(client.calls(), 3);
  EXPECT_EQ(outcome.client_calls, 3);
  EXPECT_FALSE(outcome.fell_back);
  EXPECT_EQ(outcome.support.source, corpus::SupportSource::kGenerated);
}

TEST(GenerateSupportTest, FallbackAfterBudget) {
  const auto doc = MillerDoc();
  ScriptedClient client({"Nope."});
  GenerationPolicy policy;
  const auto outcome = GenerateSupport(doc, client, policy, nullptr);
  EXPECT_TRUE(outcome.fell_back);
  EXPECT_EQ(outcome.client_calls, policy.retry_budget + 1);
  EXPECT_EQ(outcome.support.text, doc.SentenceText());
}

TEST(GenerateSupportTest, ExhaustionWithoutFallback) {
  ScriptedClient client({"!throw"});
  GenerationPolicy policy;
  policy.fallback = false;
  try {
    GenerateSupport(MillerDoc(), client, policy, nullptr);
    FAIL();
  } catch (const AugmentError& e) {
    EXPECT_EQ(e.kind(), AugmentError::Kind::kClientUnavailable);
  }
}

TEST(SupportCacheTest, KeysDependOnVersion) {
  EXPECT_NE(SupportCache::Key(kMiller, "v1"), SupportCache::Key(kMiller, "v2"));
  EXPECT_EQ(SupportCache::Key(kMiller, "v1"), SupportCache::Key(kMiller, "v1"));
  EXPECT_EQ(SupportCache::Key(kMiller, "v1").size(), 64u);
}

TEST(SupportCacheTest, SecondCallHitsCache) {
  TempDir dir;
  SupportCache cache(dir.path());
  const auto doc = MillerDoc();
  MockClient client;
  const auto first = GenerateSupport(doc, client, {}, &cache);
  const auto second = GenerateSupport(doc, client, {}, &cache);
  EXPECT_EQ(client.calls(), 1);
  EXPECT_EQ(second.client_calls, 0);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(second.support.text, first.support.text);
  EXPECT_EQ(second.support.source, corpus::SupportSource::kCached);
}

TEST(SupportCacheTest, CorruptEntryIsRegenerated) {
  TempDir dir;
  SupportCache cache(dir.path());
  const auto doc = MillerDoc();
  const auto key = SupportCache::Key(doc.SentenceText(), kPromptVersion);
  {
    std::ofstream out(cache.PathFor(key));
    out << "{ this is not json";
  }
  EXPECT_THROW(cache.Get(key, doc.SentenceText()), AugmentError);
  MockClient client;
  const auto outcome = GenerateSupport(doc, client, {}, &cache);
  EXPECT_TRUE(outcome.repaired_cache);
  EXPECT_EQ(client.calls(), 1);
  EXPECT_NO_THROW(cache.Get(key, doc.SentenceText()));

  // A readable entry that fails validation is also corrupt.
  {
    std::ofstream out(cache.PathFor(key));
    out << R"({"prompt_version":"v1","source":"mock","text":"Short."})";
  }
  EXPECT_THROW(cache.Get(key, doc.SentenceText()), AugmentError);
}

TEST(SupportCacheTest, FallbackIsRemembered) {
  TempDir dir;
  SupportCache cache(dir.path());
  ScriptedClient client({"Nope."});
  const auto doc = MillerDoc();
  EXPECT_TRUE(GenerateSupport(doc, client, {}, &cache).fell_back);
  const int calls = client.calls();
  const auto again = GenerateSupport(doc, client, {}, &cache);
  EXPECT_EQ(client.calls(), calls);
  EXPECT_TRUE(again.from_cache);
  EXPECT_EQ(again.support.text, doc.SentenceText());
}

TEST(AugmentCorpusTest, PartialCacheOnlyCallsForMissing) {
  TempDir dir;
  SupportCache cache(dir.path());
  std::vector<corpus::Document> docs;
  for (int i = 0; i < 12; ++i) {
    docs.push_back(DocFromText("d" + std::to_string(i),
                               {"Item", std::to_string(i), "was", "reviewed", "."}));
  }
  std::vector<corpus::Document> head(docs.begin(), docs.begin() + 5);
  MockClient warm;
  AugmentCorpus(head, warm, {}, &cache, 3);
  EXPECT_EQ(warm.calls(), 5);

  MockClient client;
  const auto stats = AugmentCorpus(docs, client, {}, &cache, 4);
  EXPECT_EQ(client.calls(), 7);
  EXPECT_EQ(stats.cached, 5);
  EXPECT_EQ(stats.mock, 7);

  MockClient again;
  const auto rerun = AugmentCorpus(docs, again, {}, &cache, 4);
  EXPECT_EQ(again.calls(), 0);
  EXPECT_EQ(rerun.cached, 12);
}

TEST(AugmentCorpusTest, ResultIndependentOfConcurrency) {
  std::vector<corpus::Document> a;
  for (int i = 0; i < 20; ++i) {
    a.push_back(DocFromText("d" + std::to_string(i), {"Value", std::to_string(i), "."}));
  }
  auto b = a;
  MockClient c1, c2;
  AugmentCorpus(a, c1, {}, nullptr, 1);
  AugmentCorpus(b, c2, {}, nullptr, 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(corpus::SerializeDocument(a[i]), corpus::SerializeDocument(b[i]));
  }
}

TEST(ChatCompletionClientTest, TalksToCompatibleEndpoint) {
  httplib::Server server;
  std::string seen_auth;
  nlohmann::json seen_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    seen_body = nlohmann::json::parse(req.body);
    const std::string prompt = seen_body["messages"].back()["content"];
    const std::string sentence = *SentenceFromPrompt(prompt);
    nlohmann::json reply = {
        {"choices", {{{"message", {{"role", "assistant"}, {"content", Paragraph(sentence, 4)}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("RELGRAPH_TEST_KEY", "secret", 1);
  ClientSettings settings;
  settings.base_url = "http://127.0.0.1:" + std::to_string(port);
  settings.api_key_env = "RELGRAPH_TEST_KEY";
  settings.timeout_seconds = 5;
  ChatCompletionClient client(settings);
  const auto outcome = GenerateSupport(MillerDoc(), client, {}, nullptr);
  server.stop();
  thread.join();

  EXPECT_FALSE(outcome.fell_back);
  EXPECT_EQ(outcome.support.source, corpus::SupportSource::kGenerated);
  EXPECT_EQ(seen_auth, "Bearer secret");
  EXPECT_EQ(seen_body["model"], "gpt-3.5-turbo");
  EXPECT_EQ(seen_body["temperature"], 1.0);
  EXPECT_EQ(seen_body["messages"].size(), 1u);
}

TEST(ChatCompletionClientTest, MissingCredentialFallsBack) {
  ::unsetenv("RELGRAPH_ABSENT_KEY");
  ClientSettings settings;
  settings.api_key_env = "RELGRAPH_ABSENT_KEY";
  ChatCompletionClient client(settings);
  const auto outcome = GenerateSupport(MillerDoc(), client, {}, nullptr);
  EXPECT_TRUE(outcome.fell_back);
}

}  // namespace
}  // namespace relgraph::augment
