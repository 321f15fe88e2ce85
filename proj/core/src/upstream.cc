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

#include "relgraph/upstream.h"

#include <fstream>
#include <map>

#include "json.hpp"
#include "text_util.h"

namespace relgraph::corpus {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(CorpusError::Kind kind, const std::string& msg) {
  throw CorpusError(kind, msg);
}

const json& FirstOf(const json& j, std::initializer_list<const char*> keys) {
  static const json kEmpty = json::array();
  for (const char* k : keys) {
    if (j.contains(k)) return j[k];
  }
  return kEmpty;
}

bool Flag(const json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) return v.get<double>() != 0.0;
  if (v.is_string()) {
    std::string s(internal::Trim(v.get<std::string>()));
    return !(s.empty() || s == "-" || internal::AsciiLower(s) == "false");
  }
  return false;
}

}  // namespace

Document ParseUpstreamRecord(std::string_view line, Domain domain,
                             Split split) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    Fail(CorpusError::Kind::kMalformedRecord,
         std::string("invalid JSON: ") + e.what());
  }

  Document doc;
  doc.domain = domain;
  doc.split = split;
  try {
    if (j.contains("doc_key")) doc.id = j["doc_key"].get<std::string>();
    doc.tokens = FirstOf(j, {"sentence", "tokens"}).get<std::vector<std::string>>();
    if (doc.tokens.empty()) {
      Fail(CorpusError::Kind::kMalformedRecord, "record has no tokens");
    }
    const int n = static_cast<int>(doc.tokens.size());

    std::map<std::pair<int, int>, int> span_to_id;
    for (const auto& e : FirstOf(j, {"ner", "entities"})) {
      EntitySpan span{e.at(0).get<int>(), e.at(1).get<int>(),
                      e.at(2).get<std::string>(),
                      static_cast<int>(doc.entities.size())};
      if (span.start < 0 || span.start > span.end || span.end >= n) {
        Fail(CorpusError::Kind::kSpanOutOfRange,
             "entity span [" + std::to_string(span.start) + ", " +
                 std::to_string(span.end) + "] outside " + std::to_string(n) +
                 " tokens");
      }
      span_to_id.emplace(std::make_pair(span.start, span.end), span.id);
      doc.entities.push_back(std::move(span));
    }

    std::map<std::pair<int, int>, std::size_t> pair_to_relation;
    for (const auto& r : FirstOf(j, {"relations"})) {
      if (!r.is_array() || r.size() < 5) {
        Fail(CorpusError::Kind::kMalformedRecord,
             "relation must be [hs, he, ts, te, label, ...]");
      }
      auto resolve = [&](int start, int end) {
        auto it = span_to_id.find({start, end});
        if (it == span_to_id.end()) {
          Fail(CorpusError::Kind::kDanglingEntityRef,
               "relation endpoint [" + std::to_string(start) + ", " +
                   std::to_string(end) + "] matches no entity");
        }
        return it->second;
      };
      const int head = resolve(r[0].get<int>(), r[1].get<int>());
      const int tail = resolve(r[2].get<int>(), r[3].get<int>());
      const auto name = r[4].get<std::string>();
      auto label = ParseLabel(name);
      if (!label) Fail(CorpusError::Kind::kUnknownLabel, "unknown label: " + name);

      auto [it, inserted] =
          pair_to_relation.emplace(std::make_pair(head, tail), doc.relations.size());
      if (inserted) {
        RelationInstance fresh;
        fresh.head = head;
        fresh.tail = tail;
        doc.relations.push_back(std::move(fresh));
      }
      RelationInstance& rel = doc.relations[it->second];
      rel.labels.Insert(*label);
      if (r.size() > 5 && r[5].is_string() && !rel.explanation) {
        std::string exp(internal::Trim(r[5].get<std::string>()));
        if (!exp.empty() && exp != "-") rel.explanation = std::move(exp);
      }
      if (r.size() > 6) rel.uncertain = rel.uncertain || Flag(r[6]);
      if (r.size() > 7) rel.syntax_ambiguity = rel.syntax_ambiguity || Flag(r[7]);
    }
  } catch (const json::exception& e) {
    Fail(CorpusError::Kind::kMalformedRecord,
         std::string("malformed record: ") + e.what());
  }
  return doc;
}

std::vector<Document> ReadUpstreamFile(const std::filesystem::path& path,
                                       Domain domain, Split split,
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
      Document doc = ParseUpstreamRecord(line, domain, split);
      if (doc.id.empty()) {
        doc.id = std::string(DomainName(domain)) + "-" +
                 std::string(SplitName(split)) + "-" + std::to_string(line_no);
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

std::vector<Document> ReadUpstreamDirectory(const std::filesystem::path& dir,
                                            std::optional<Domain> only,
                                            std::vector<std::string>* rejected) {
  if (!std::filesystem::is_directory(dir)) {
    Fail(CorpusError::Kind::kIo, "not a directory: " + dir.string());
  }
  std::vector<Document> docs;
  for (Domain domain : AllDomains()) {
    if (only && *only != domain) continue;
    for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
      const auto path = dir / (std::string(DomainName(domain)) + "-" +
                               std::string(SplitName(split)) + ".json");
      if (!std::filesystem::exists(path)) continue;
      auto part = ReadUpstreamFile(path, domain, split, rejected);
      docs.insert(docs.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
    }
  }
  return docs;
}

}  // namespace relgraph::corpus
