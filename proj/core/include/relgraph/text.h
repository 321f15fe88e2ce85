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

#ifndef RELGRAPH_TEXT_H_
#define RELGRAPH_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace relgraph::text {

// Half-open byte range [begin, end) into a string.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

// Splits a paragraph into sentences. A boundary is a run of [.!?] (plus any
// closing quotes or brackets) followed by whitespace and then an upper-case
// letter, digit or opening quote. Boundaries after known abbreviations
// ("Dr.", "e.g.", "U.S.") and single-letter initials are suppressed.
// Returned spans are trimmed of surrounding whitespace and never empty.
std::vector<CharSpan> SegmentSentences(std::string_view paragraph);

// Whitespace split followed by detachment of leading/trailing punctuation.
// Trailing periods stay attached to tokens that already contain a period
// ("U.S."), and a possessive "'s" becomes its own token.
std::vector<std::string> TokenizeWords(std::string_view sentence);

// Joins tokens with single spaces, without a space before closing
// punctuation or after opening brackets.
std::string Detokenize(const std::vector<std::string>& tokens);

// Collapses whitespace runs, maps curly quotes and backtick quotes to their
// ASCII forms, and removes spaces before closing / after opening punctuation.
// Used for "paragraph contains sentence" checks that tolerate reflowing.
std::string NormalizeForMatch(std::string_view s);

// NormalizeForMatch(haystack) contains NormalizeForMatch(needle).
bool ContainsNormalized(std::string_view haystack, std::string_view needle);

// Case-insensitive (ASCII) token equality.
bool TokenEqualsIgnoreCase(std::string_view a, std::string_view b);

}  // namespace relgraph::text

#endif  // RELGRAPH_TEXT_H_
