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

#ifndef RELGRAPH_CORPUS_H_
#define RELGRAPH_CORPUS_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/labels.h"
#include "relgraph/text.h"

namespace relgraph::corpus {

// Inclusive token span of one entity in the annotated sentence. `id` is the
// entity's ordinal within its document.
struct EntitySpan {
  int start = 0;
  int end = 0;
  std::string type;
  int id = 0;

  int length() const { return end - start + 1; }
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// A directed, possibly multi-labelled relation between two entities.
// Metadata flags mirror the Exp / SA / UN annotation columns.
struct RelationInstance {
  int head = 0;
  int tail = 0;
  LabelSet labels;
  std::optional<std::string> explanation;
  bool syntax_ambiguity = false;
  bool uncertain = false;

  friend bool operator==(const RelationInstance&,
                         const RelationInstance&) = default;
};

enum class SupportSource { kGenerated, kCached, kMock };

std::string_view SupportSourceName(SupportSource source);

// Context paragraph attached to a sentence. `sentence_spans` is derived from
// `text` with text::SegmentSentences.
struct SupportDocument {
  std::string text;
  std::vector<text::CharSpan> sentence_spans;
  SupportSource source = SupportSource::kGenerated;

  static SupportDocument FromText(std::string text, SupportSource source);

  std::size_t sentence_count() const { return sentence_spans.size(); }
  std::string_view sentence(std::size_t i) const {
    return std::string_view(text).substr(sentence_spans[i].begin,
                                         sentence_spans[i].size());
  }
};

struct Document {
  std::string id;
  Domain domain = Domain::kNews;
  Split split = Split::kTrain;
  std::vector<std::string> tokens;
  std::vector<EntitySpan> entities;
  std::vector<RelationInstance> relations;
  std::optional<SupportDocument> support;

  // Surface text of the annotated sentence.
  std::string SentenceText() const { return text::Detokenize(tokens); }
  // Tokens covered by an entity span.
  std::vector<std::string> EntityTokens(const EntitySpan& e) const;
};

class CorpusError : public std::runtime_error {
 public:
  enum class Kind {
    kMalformedRecord,
    kSpanOutOfRange,
    kUnknownLabel,
    kDanglingEntityRef,
    kIo,
  };

  CorpusError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Parses one canonical record:
//   {"id": "...", "domain": "news", "split": "train",
//    "tokens": [...],
//    "entities": [[start, end, "type"], ...],
//    "relations": [[head, tail, ["ROLE", ...], exp|null, sa, un], ...],
//    "support": "paragraph"}
// "id", "split" and "support" are optional; `domain` overrides the record's
// own domain field when given. Flags accept booleans, "X" or "" / "-".
Document ParseDocument(std::string_view record,
                       std::optional<Domain> domain = std::nullopt);

// Inverse of ParseDocument, as a single line without trailing newline.
// The support source is not persisted.
std::string SerializeDocument(const Document& doc);

// Reads a newline-delimited canonical corpus. Blank lines are skipped. Ids
// default to "<domain>-<split>-<line>". Throws CorpusError (kind kIo for
// unreadable files; parse errors carry the line number). With `rejected`
// set, unparseable records are described there and skipped instead.
std::vector<Document> ReadCorpus(const std::filesystem::path& path,
                                 std::vector<std::string>* rejected = nullptr);

// Writes atomically (temp file + rename).
void WriteCorpus(const std::filesystem::path& path,
                 std::span<const Document> docs);

struct DomainStats {
  int train = 0;
  int dev = 0;
  int test = 0;
  // Relation annotations: one per (pair, label).
  int relations = 0;

  int sentences() const { return train + dev + test; }
  friend bool operator==(const DomainStats&, const DomainStats&) = default;
};

std::map<Domain, DomainStats> CorpusStats(std::span<const Document> docs);

// Delimiter-separated table: Domain, Train, Dev, Test, Relations. Only
// domains present in `stats` are listed.
std::string FormatStatsTable(const std::map<Domain, DomainStats>& stats,
                             char delimiter = '\t');

enum class ViolationKind {
  kEmptyTokens,
  kSpanOutOfRange,
  kDanglingEntityRef,
  kEmptyLabels,
  kExclusivity,
  kEntityType,
  kDuplicateEntityId,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  std::size_t doc_index = 0;
  std::string doc_id;
  ViolationKind kind = ViolationKind::kEmptyTokens;
  std::string detail;
};

// Empty iff every document satisfies all data-model invariants.
std::vector<Violation> ValidateCorpus(std::span<const Document> docs);

// Entity types accepted for a domain (folded: lower case, no separators).
const std::vector<std::string>& EntityTypes(Domain domain);
bool IsKnownEntityType(Domain domain, std::string_view type);

// Label annotation counts of one domain, indexed by LabelIndex.
std::array<int, kNumLabels> LabelDistribution(std::span<const Document> docs,
                                              Domain domain);

}  // namespace relgraph::corpus

#endif  // RELGRAPH_CORPUS_H_
