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

#ifndef RELGRAPH_LABELS_H_
#define RELGRAPH_LABELS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relgraph {

// The 17 CrossRE relation types. RELATED-TO is the exclusive fallback label.
enum class Label : std::uint8_t {
  kPartOf = 0,
  kPhysical,
  kUsage,
  kRole,
  kSocial,
  kGeneralAffiliation,
  kCompare,
  kTemporal,
  kArtifact,
  kOrigin,
  kTopic,
  kOpposite,
  kCauseEffect,
  kWinDefeat,
  kTypeOf,
  kNamed,
  kRelatedTo,
};

inline constexpr int kNumLabels = 17;
inline constexpr int kRelatedToIndex = static_cast<int>(Label::kRelatedTo);

constexpr int LabelIndex(Label label) { return static_cast<int>(label); }
constexpr Label LabelAt(int index) { return static_cast<Label>(index); }

// Canonical upper-case name, e.g. "GENERAL-AFFILIATION".
std::string_view LabelName(Label label);

// Case-insensitive; accepts '-' or '_' as separator ("part-of", "PART_OF").
std::optional<Label> ParseLabel(std::string_view name);

const std::array<Label, kNumLabels>& AllLabels();

// Small value type for a set of labels, stored as a bitmask.
class LabelSet {
 public:
  constexpr LabelSet() = default;
  LabelSet(std::initializer_list<Label> labels) {
    for (Label l : labels) Insert(l);
  }

  constexpr void Insert(Label l) { bits_ |= Bit(l); }
  constexpr void Erase(Label l) { bits_ &= ~Bit(l); }
  constexpr bool Contains(Label l) const { return (bits_ & Bit(l)) != 0; }
  constexpr bool Empty() const { return bits_ == 0; }
  int Size() const;
  constexpr std::uint32_t bits() const { return bits_; }

  // Labels in enum order.
  std::vector<Label> ToVector() const;

  // RELATED-TO may not co-occur with any other label.
  bool SatisfiesExclusivity() const {
    return !Contains(Label::kRelatedTo) || bits_ == Bit(Label::kRelatedTo);
  }

  friend constexpr bool operator==(LabelSet, LabelSet) = default;

 private:
  static constexpr std::uint32_t Bit(Label l) {
    return std::uint32_t{1} << static_cast<int>(l);
  }
  std::uint32_t bits_ = 0;
};

// Domains in the column order used by the results table.
enum class Domain : std::uint8_t {
  kNews = 0,
  kPolitics,
  kScience,
  kMusic,
  kLiterature,
  kAi,
};

inline constexpr int kNumDomains = 6;

const std::array<Domain, kNumDomains>& AllDomains();
// Short file-system name: "news", "politics", "science", "music",
// "literature", "ai".
std::string_view DomainName(Domain domain);
// Column header used in reports ("News", ..., "AI").
std::string_view DomainTitle(Domain domain);
// Accepts the short names plus common long forms ("natural science",
// "artificial intelligence").
std::optional<Domain> ParseDomain(std::string_view name);

enum class Split : std::uint8_t { kTrain = 0, kDev, kTest };

std::string_view SplitName(Split split);
std::optional<Split> ParseSplit(std::string_view name);

}  // namespace relgraph

#endif  // RELGRAPH_LABELS_H_
