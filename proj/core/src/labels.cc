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

#include "relgraph/labels.h"

#include <bit>

#include "text_util.h"

namespace relgraph {
namespace {

constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "PART-OF",  "PHYSICAL",   "USAGE",        "ROLE",       "SOCIAL",
    "GENERAL-AFFILIATION",    "COMPARE",      "TEMPORAL",   "ARTIFACT",
    "ORIGIN",   "TOPIC",      "OPPOSITE",     "CAUSE-EFFECT",
    "WIN-DEFEAT", "TYPE-OF",  "NAMED",        "RELATED-TO",
};

constexpr std::array<std::string_view, kNumDomains> kDomainNames = {
    "news", "politics", "science", "music", "literature", "ai"};
constexpr std::array<std::string_view, kNumDomains> kDomainTitles = {
    "News", "Politics", "Science", "Music", "Literature", "AI"};

}  // namespace

std::string_view LabelName(Label label) {
  return kLabelNames[static_cast<int>(label)];
}

std::optional<Label> ParseLabel(std::string_view name) {
  const std::string key = internal::FoldKey(name);
  for (int i = 0; i < kNumLabels; ++i) {
    if (internal::FoldKey(kLabelNames[i]) == key) return LabelAt(i);
  }
  return std::nullopt;
}

const std::array<Label, kNumLabels>& AllLabels() {
  static const std::array<Label, kNumLabels> labels = [] {
    std::array<Label, kNumLabels> out{};
    for (int i = 0; i < kNumLabels; ++i) out[i] = LabelAt(i);
    return out;
  }();
  return labels;
}

int LabelSet::Size() const { return std::popcount(bits_); }

std::vector<Label> LabelSet::ToVector() const {
  std::vector<Label> out;
  for (int i = 0; i < kNumLabels; ++i) {
    if (Contains(LabelAt(i))) out.push_back(LabelAt(i));
  }
  return out;
}

const std::array<Domain, kNumDomains>& AllDomains() {
  static const std::array<Domain, kNumDomains> domains = {
      Domain::kNews,  Domain::kPolitics,   Domain::kScience,
      Domain::kMusic, Domain::kLiterature, Domain::kAi};
  return domains;
}

std::string_view DomainName(Domain domain) {
  return kDomainNames[static_cast<int>(domain)];
}

std::string_view DomainTitle(Domain domain) {
  return kDomainTitles[static_cast<int>(domain)];
}

std::optional<Domain> ParseDomain(std::string_view name) {
  const std::string key = internal::FoldKey(name);
  for (int i = 0; i < kNumDomains; ++i) {
    if (key == kDomainNames[i]) return static_cast<Domain>(i);
  }
  if (key == "naturalscience" || key == "naturalsciences")
    return Domain::kScience;
  if (key == "artificialintelligence") return Domain::kAi;
  return std::nullopt;
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "train";
}

std::optional<Split> ParseSplit(std::string_view name) {
  const std::string key = internal::FoldKey(name);
  if (key == "train") return Split::kTrain;
  if (key == "dev" || key == "validation" || key == "valid") return Split::kDev;
  if (key == "test") return Split::kTest;
  return std::nullopt;
}

}  // namespace relgraph
