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

#include "relgraph/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "relgraph/fileio.h"
#include "json.hpp"
#include "text_util.h"

namespace relgraph::corpus {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(CorpusError::Kind kind, const std::string& msg) {
  throw CorpusError(kind, msg);
}

bool ParseFlag(const json& v) {
  if (v.is_null()) return false;
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) return v.get<double>() != 0.0;
  if (v.is_string()) {
    std::string s(internal::Trim(v.get<std::string>()));
    return !(s.empty() || s == "-" || internal::AsciiLower(s) == "false" ||
             s == "0");
  }
  Fail(CorpusError::Kind::kMalformedRecord, "metadata flag has invalid type");
}

std::optional<std::string> ParseExplanation(const json& v) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) {
    Fail(CorpusError::Kind::kMalformedRecord, "explanation must be a string");
  }
  std::string s(internal::Trim(v.get<std::string>()));
  if (s.empty() || s == "-") return std::nullopt;
  return s;
}

LabelSet ParseLabels(const json& v) {
  LabelSet out;
  auto add = [&](const json& item) {
    if (!item.is_string()) {
      Fail(CorpusError::Kind::kMalformedRecord, "label must be a string");
    }
    const auto name = item.get<std::string>();
    auto label = ParseLabel(name);
    if (!label) Fail(CorpusError::Kind::kUnknownLabel, "unknown label: " + name);
    out.Insert(*label);
  };
  if (v.is_array()) {
    for (const auto& item : v) add(item);
  } else {
    add(v);
  }
  return out;
}

// Per-domain type inventories: the generic four plus the domain-specific
// types of the CrossNER annotation scheme.
const std::map<Domain, std::vector<std::string>>& TypeTable() {
  static const auto* table = [] {
    const std::vector<std::string> base = {"person", "location", "organization",
                                           "organisation", "misc", "country"};
    auto with = [&](std::initializer_list<const char*> extra) {
      std::vector<std::string> out = base;
      for (const char* e : extra) out.push_back(internal::FoldKey(e));
      return out;
    };
    auto* t = new std::map<Domain, std::vector<std::string>>{
        {Domain::kNews, with({})},
        {Domain::kPolitics,
         with({"politician", "political party", "election", "event"})},
        {Domain::kScience,
         with({"chemical", "enzyme", "protein", "DNA", "RNA", "cell type",
               "cell line", "scientist", "university", "discipline",
               "chemical compound", "chemical element", "event",
               "astronomical object", "academic journal", "award", "theory"})},
        {Domain::kMusic,
         with({"instrument", "genre", "album", "track", "music genre", "song",
               "band", "musical artist", "musical instrument", "award",
               "event"})},
        {Domain::kLiterature,
         with({"character", "award", "book", "writer", "poem", "event",
               "magazine", "literary genre"})},
        {Domain::kAi,
         with({"algorithm", "model", "task", "method", "conference", "paper",
               "field", "product", "researcher", "metrics", "university",
               "programming language", "programlang"})},
    };
    return t;
  }();
  return *table;
}

}  // namespace

std::string_view SupportSourceName(SupportSource source) {
  switch (source) {
    case SupportSource::kGenerated:
      return "generated";
    case SupportSource::kCached:
      return "cached";
    case SupportSource::kMock:
      return "mock";
  }
  return "generated";
}

SupportDocument SupportDocument::FromText(std::string text,
                                          SupportSource source) {
  SupportDocument doc;
  doc.sentence_spans = text::SegmentSentences(text);
  doc.text = std::move(text);
  doc.source = source;
  return doc;
}

std::vector<std::string> Document::EntityTokens(const EntitySpan& e) const {
  return {tokens.begin() + e.start, tokens.begin() + e.end + 1};
}

Document ParseDocument(std::string_view record, std::optional<Domain> domain) {
  json j;
  try {
    j = json::parse(record);
  } catch (const json::parse_error& e) {
    Fail(CorpusError::Kind::kMalformedRecord,
         std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    Fail(CorpusError::Kind::kMalformedRecord, "record is not an object");
  }

  Document doc;
  try {
    if (domain) {
      doc.domain = *domain;
    } else {
      const auto name = j.at("domain").get<std::string>();
      auto d = ParseDomain(name);
      if (!d) Fail(CorpusError::Kind::kMalformedRecord, "unknown domain: " + name);
      doc.domain = *d;
    }
    if (j.contains("split")) {
      const auto name = j["split"].get<std::string>();
      auto s = ParseSplit(name);
      if (!s) Fail(CorpusError::Kind::kMalformedRecord, "unknown split: " + name);
      doc.split = *s;
    }
    if (j.contains("id")) doc.id = j["id"].get<std::string>();
    doc.tokens = j.at("tokens").get<std::vector<std::string>>();
    if (doc.tokens.empty()) {
      Fail(CorpusError::Kind::kMalformedRecord, "record has no tokens");
    }
    const int n = static_cast<int>(doc.tokens.size());

    if (j.contains("entities")) {
      for (const auto& e : j["entities"]) {
        if (!e.is_array() || e.size() < 3) {
          Fail(CorpusError::Kind::kMalformedRecord,
               "entity must be [start, end, type]");
        }
        EntitySpan span{e[0].get<int>(), e[1].get<int>(),
                        e[2].get<std::string>(),
                        static_cast<int>(doc.entities.size())};
        if (span.start < 0 || span.start > span.end || span.end >= n) {
          Fail(CorpusError::Kind::kSpanOutOfRange,
               "entity span [" + std::to_string(span.start) + ", " +
                   std::to_string(span.end) + "] outside " + std::to_string(n) +
                   " tokens");
        }
        doc.entities.push_back(std::move(span));
      }
    }

    if (j.contains("relations")) {
      const int num_entities = static_cast<int>(doc.entities.size());
      for (const auto& r : j["relations"]) {
        if (!r.is_array() || r.size() < 3) {
          Fail(CorpusError::Kind::kMalformedRecord,
               "relation must be [head, tail, labels, exp, sa, un]");
        }
        RelationInstance rel;
        rel.head = r[0].get<int>();
        rel.tail = r[1].get<int>();
        for (int id : {rel.head, rel.tail}) {
          if (id < 0 || id >= num_entities) {
            Fail(CorpusError::Kind::kDanglingEntityRef,
                 "relation references entity " + std::to_string(id) + " of " +
                     std::to_string(num_entities));
          }
        }
        rel.labels = ParseLabels(r[2]);
        if (r.size() > 3) rel.explanation = ParseExplanation(r[3]);
        if (r.size() > 4) rel.syntax_ambiguity = ParseFlag(r[4]);
        if (r.size() > 5) rel.uncertain = ParseFlag(r[5]);
        doc.relations.push_back(std::move(rel));
      }
    }

    if (j.contains("support") && j["support"].is_string()) {
      std::string support = j["support"].get<std::string>();
      if (!internal::Trim(support).empty()) {
        doc.support =
            SupportDocument::FromText(std::move(support), SupportSource::kCached);
      }
    }
  } catch (const json::exception& e) {
    Fail(CorpusError::Kind::kMalformedRecord,
         std::string("malformed record: ") + e.what());
  }
  return doc;
}

std::string SerializeDocument(const Document& doc) {
  json j;
  j["id"] = doc.id;
  j["domain"] = DomainName(doc.domain);
  j["split"] = SplitName(doc.split);
  j["tokens"] = doc.tokens;
  json entities = json::array();
  for (const auto& e : doc.entities) {
    entities.push_back(json::array({e.start, e.end, e.type}));
  }
  j["entities"] = std::move(entities);
  json relations = json::array();
  for (const auto& r : doc.relations) {
    json labels = json::array();
    for (Label l : r.labels.ToVector()) labels.push_back(LabelName(l));
    relations.push_back(json::array(
        {r.head, r.tail, std::move(labels),
         r.explanation ? json(*r.explanation) : json(nullptr),
         r.syntax_ambiguity, r.uncertain}));
  }
  j["relations"] = std::move(relations);
  if (doc.support) j["support"] = doc.support->text;
  return j.dump();
}

std::vector<Document> ReadCorpus(const std::filesystem::path& path,
                                 std::vector<std::string>* rejected) {
  std::ifstream in(path);
  if (!in) Fail(CorpusError::Kind::kIo, "cannot read " + path.string());
  std::vector<Document> docs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    try {
      Document doc = ParseDocument(line);
      if (doc.id.empty()) {
        doc.id = std::string(DomainName(doc.domain)) + "-" +
                 std::string(SplitName(doc.split)) + "-" +
                 std::to_string(line_no);
      }
      docs.push_back(std::move(doc));
    } catch (const CorpusError& e) {
      std::string where = path.string() + ":" + std::to_string(line_no) + ": " + e.what();
      if (rejected == nullptr) throw CorpusError(e.kind(), where);
      rejected->push_back(std::move(where));
    }
  }
  return docs;
}

void WriteCorpus(const std::filesystem::path& path,
                 std::span<const Document> docs) {
  std::string content;
  for (const auto& doc : docs) {
    content += SerializeDocument(doc);
    content.push_back('\n');
  }
  try {
    WriteFileAtomically(path, content);
  } catch (const std::exception& e) {
    Fail(CorpusError::Kind::kIo, e.what());
  }
}

std::map<Domain, DomainStats> CorpusStats(std::span<const Document> docs) {
  std::map<Domain, DomainStats> stats;
  for (const auto& doc : docs) {
    DomainStats& s = stats[doc.domain];
    switch (doc.split) {
      case Split::kTrain:
        ++s.train;
        break;
      case Split::kDev:
        ++s.dev;
        break;
      case Split::kTest:
        ++s.test;
        break;
    }
    for (const auto& r : doc.relations) s.relations += r.labels.Size();
  }
  return stats;
}

std::string FormatStatsTable(const std::map<Domain, DomainStats>& stats,
                             char delimiter) {
  std::ostringstream out;
  out << "Domain" << delimiter << "Train" << delimiter << "Dev" << delimiter
      << "Test" << delimiter << "Relations\n";
  for (const auto& [domain, s] : stats) {
    out << DomainTitle(domain) << delimiter << s.train << delimiter << s.dev
        << delimiter << s.test << delimiter << s.relations << '\n';
  }
  return out.str();
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEmptyTokens:
      return "EmptyTokens";
    case ViolationKind::kSpanOutOfRange:
      return "SpanOutOfRange";
    case ViolationKind::kDanglingEntityRef:
      return "DanglingEntityRef";
    case ViolationKind::kEmptyLabels:
      return "EmptyLabels";
    case ViolationKind::kExclusivity:
      return "ExclusivityViolation";
    case ViolationKind::kEntityType:
      return "EntityTypeViolation";
    case ViolationKind::kDuplicateEntityId:
      return "DuplicateEntityId";
  }
  return "Unknown";
}

std::vector<Violation> ValidateCorpus(std::span<const Document> docs) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document& doc = docs[i];
    auto report = [&](ViolationKind kind, std::string detail) {
      out.push_back({i, doc.id, kind, std::move(detail)});
    };
    const int n = static_cast<int>(doc.tokens.size());
    if (n == 0) report(ViolationKind::kEmptyTokens, "document has no tokens");

    std::vector<int> ids;
    for (const auto& e : doc.entities) {
      if (e.start < 0 || e.start > e.end || e.end >= n) {
        report(ViolationKind::kSpanOutOfRange,
               "entity " + std::to_string(e.id) + " span [" +
                   std::to_string(e.start) + ", " + std::to_string(e.end) +
                   "]");
      }
      if (!IsKnownEntityType(doc.domain, e.type)) {
        report(ViolationKind::kEntityType,
               "entity type '" + e.type + "' not used in domain " +
                   std::string(DomainName(doc.domain)));
      }
      ids.push_back(e.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      report(ViolationKind::kDuplicateEntityId, "entity ids are not unique");
    }

    for (const auto& r : doc.relations) {
      const std::string pair =
          "(" + std::to_string(r.head) + ", " + std::to_string(r.tail) + ")";
      if (!std::binary_search(ids.begin(), ids.end(), r.head) ||
          !std::binary_search(ids.begin(), ids.end(), r.tail)) {
        report(ViolationKind::kDanglingEntityRef,
               "relation " + pair + " references a missing entity");
      }
      if (r.labels.Empty()) {
        report(ViolationKind::kEmptyLabels, "relation " + pair + " has no label");
      } else if (!r.labels.SatisfiesExclusivity()) {
        report(ViolationKind::kExclusivity,
               "relation " + pair + " combines RELATED-TO with other labels");
      }
    }
  }
  return out;
}

const std::vector<std::string>& EntityTypes(Domain domain) {
  return TypeTable().at(domain);
}

bool IsKnownEntityType(Domain domain, std::string_view type) {
  const auto& types = EntityTypes(domain);
  const std::string key = internal::FoldKey(type);
  return std::any_of(types.begin(), types.end(), [&](const std::string& t) {
    return internal::FoldKey(t) == key;
  });
}

std::array<int, kNumLabels> LabelDistribution(std::span<const Document> docs,
                                              Domain domain) {
  std::array<int, kNumLabels> counts{};
  for (const auto& doc : docs) {
    if (doc.domain != domain) continue;
    for (const auto& r : doc.relations) {
      for (Label l : r.labels.ToVector()) ++counts[LabelIndex(l)];
    }
  }
  return counts;
}

}  // namespace relgraph::corpus
