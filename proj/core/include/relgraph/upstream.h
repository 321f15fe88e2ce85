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

#ifndef RELGRAPH_UPSTREAM_H_
#define RELGRAPH_UPSTREAM_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/corpus.h"

// Adapter for the released CrossRE json-lines files. Each line looks like
//
//   {"doc_key": "...", "sentence": [tokens],
//    "ner": [[start, end, "type"], ...],
//    "relations": [[h_start, h_end, t_start, t_end, "label",
//                   "explanation", uncertain, syntax_ambiguity], ...]}
//
// Relation endpoints are entity spans; they are resolved to entity ordinals.
// Several entries for the same ordered pair merge into one multi-label
// RelationInstance. "tokens"/"entities" are accepted as aliases.
namespace relgraph::corpus {

Document ParseUpstreamRecord(std::string_view line, Domain domain, Split split);

// `rejected`, when given, collects unparseable records instead of throwing.
std::vector<Document> ReadUpstreamFile(const std::filesystem::path& path,
                                       Domain domain, Split split,
                                       std::vector<std::string>* rejected = nullptr);

// Loads every "<domain>-<split>.json" file in `dir` (optionally restricted to
// one domain), in domain then split order.
std::vector<Document> ReadUpstreamDirectory(
    const std::filesystem::path& dir,
    std::optional<Domain> only = std::nullopt,
    std::vector<std::string>* rejected = nullptr);

}  // namespace relgraph::corpus

#endif  // RELGRAPH_UPSTREAM_H_
