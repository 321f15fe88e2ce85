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

#include "relgraph/text.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "text_util.h"

namespace relgraph::text {
namespace {

using internal::IsSpace;

constexpr std::array<std::string_view, 34> kAbbreviations = {
    "mr",  "mrs", "ms",   "dr",   "prof", "sr",  "jr",  "st",  "vs",
    "e.g", "i.e", "inc",  "ltd",  "co",   "corp", "no", "fig", "jan",
    "feb", "mar", "apr",  "jun",  "jul",  "aug", "sep", "sept", "oct",
    "nov", "dec", "mt",   "gen",  "gov",  "u.s", "u.k",
};

// Multi-byte quote characters seen in LLM output.
constexpr std::string_view kLeftDouble = "\xE2\x80\x9C";
constexpr std::string_view kRightDouble = "\xE2\x80\x9D";
constexpr std::string_view kLeftSingle = "\xE2\x80\x98";
constexpr std::string_view kRightSingle = "\xE2\x80\x99";

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Length of the closing quote/bracket at `pos`, or 0.
std::size_t ClosingAt(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  const char c = s[pos];
  if (c == ')' || c == ']' || c == '"' || c == '\'') return 1;
  std::string_view rest = s.substr(pos);
  if (rest.starts_with(kRightDouble) || rest.starts_with(kRightSingle)) return 3;
  return 0;
}

bool StartsSentence(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return false;
  const char c = s[pos];
  if (IsUpper(c) || IsDigit(c) || c == '"' || c == '\'' || c == '(') return true;
  std::string_view rest = s.substr(pos);
  return rest.starts_with(kLeftDouble) || rest.starts_with(kLeftSingle);
}

// True when the period at `dot` ends an abbreviation or an initial.
bool IsAbbreviationPeriod(std::string_view s, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !IsSpace(s[begin - 1])) --begin;
  std::string_view word = s.substr(begin, dot - begin);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' ||
                           word.front() == '\'')) {
    word.remove_prefix(1);
  }
  if (word.empty()) return false;
  if (word.size() == 1 && IsUpper(word[0])) return true;
  const std::string lower = internal::AsciiLower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

void PushTrimmed(std::string_view s, std::size_t begin, std::size_t end,
                 std::vector<CharSpan>& out) {
  while (begin < end && IsSpace(s[begin])) ++begin;
  while (end > begin && IsSpace(s[end - 1])) --end;
  if (end > begin) out.push_back({begin, end});
}

bool IsOpeningToken(std::string_view t) {
  return t == "(" || t == "[" || t == "{" || t == "$";
}

bool IsClosingToken(std::string_view t) {
  static constexpr std::array<std::string_view, 14> kClosing = {
      ",", ".", ";", ":", "!", "?", ")", "]", "}", "%", "'s", "'ll", "n't",
      "..."};
  return std::find(kClosing.begin(), kClosing.end(), t) != kClosing.end();
}

bool IsPunctOnly(std::string_view t) {
  return std::all_of(t.begin(), t.end(), [](char c) {
    return !(IsUpper(c) || IsDigit(c) || (c >= 'a' && c <= 'z') ||
             static_cast<unsigned char>(c) >= 0x80);
  });
}

// Prefix strings peeled off as separate tokens.
constexpr std::array<std::string_view, 9> kLeading = {
    "``", "\"", "'", "(", "[", "{", "`", kLeftDouble, kLeftSingle};
// Suffix strings peeled off as separate tokens.
constexpr std::array<std::string_view, 13> kTrailing = {
    "''", ".", ",", ";", ":", "!", "?", ")", "]", "}", "\"", kRightDouble,
    kRightSingle};

}  // namespace

std::vector<CharSpan> SegmentSentences(std::string_view paragraph) {
  std::vector<CharSpan> spans;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    if (!IsTerminator(paragraph[i])) {
      ++i;
      continue;
    }
    const std::size_t first_terminator = i;
    std::size_t j = i;
    while (j < paragraph.size() && IsTerminator(paragraph[j])) ++j;
    while (std::size_t n = ClosingAt(paragraph, j)) j += n;
    const std::size_t sentence_end = j;
    if (j < paragraph.size() && !IsSpace(paragraph[j])) {
      i = j;
      continue;
    }
    while (j < paragraph.size() && IsSpace(paragraph[j])) ++j;
    const bool at_end = j >= paragraph.size();
    const bool single_period =
        paragraph[first_terminator] == '.' &&
        (first_terminator + 1 == paragraph.size() ||
         !IsTerminator(paragraph[first_terminator + 1]));
    if (!at_end &&
        (!StartsSentence(paragraph, j) ||
         (single_period && IsAbbreviationPeriod(paragraph, first_terminator)))) {
      i = j;
      continue;
    }
    PushTrimmed(paragraph, start, sentence_end, spans);
    start = j;
    i = j;
  }
  PushTrimmed(paragraph, start, paragraph.size(), spans);
  return spans;
}

std::vector<std::string> TokenizeWords(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && IsSpace(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !IsSpace(sentence[j])) ++j;
    std::string_view chunk = sentence.substr(i, j - i);
    i = j;
    if (chunk.empty()) continue;
    if (IsPunctOnly(chunk)) {
      tokens.emplace_back(chunk);
      continue;
    }

    bool peeled = true;
    while (peeled && !chunk.empty()) {
      peeled = false;
      for (std::string_view p : kLeading) {
        if (chunk.size() > p.size() && chunk.starts_with(p)) {
          tokens.emplace_back(p);
          chunk.remove_prefix(p.size());
          peeled = true;
          break;
        }
      }
    }

    std::vector<std::string> suffix;
    peeled = true;
    while (peeled && !chunk.empty()) {
      peeled = false;
      for (std::string_view p : kTrailing) {
        if (chunk.size() <= p.size() || !chunk.ends_with(p)) continue;
        std::string_view core = chunk.substr(0, chunk.size() - p.size());
        if (p == "." && core.find('.') != std::string_view::npos) {
          continue;  // "U.S." keeps its final period.
        }
        suffix.emplace_back(p);
        chunk = core;
        peeled = true;
        break;
      }
    }

    std::string possessive;
    for (std::string_view p : {std::string_view("'s"),
                               std::string_view("\xE2\x80\x99s")}) {
      if (chunk.size() > p.size() && chunk.ends_with(p)) {
        possessive = std::string(p);
        chunk.remove_suffix(p.size());
        break;
      }
    }
    if (!chunk.empty()) tokens.emplace_back(chunk);
    if (!possessive.empty()) tokens.push_back(std::move(possessive));
    for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
      tokens.push_back(std::move(*it));
    }
  }
  return tokens;
}

std::string Detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  bool suppress_space = true;
  for (const std::string& t : tokens) {
    if (!suppress_space && !IsClosingToken(t)) out.push_back(' ');
    out += t;
    suppress_space = IsOpeningToken(t);
  }
  return out;
}

std::string NormalizeForMatch(std::string_view s) {
  std::string mapped;
  mapped.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    std::string_view rest = s.substr(i);
    if (rest.starts_with(kLeftDouble) || rest.starts_with(kRightDouble)) {
      mapped.push_back('"');
      i += 3;
    } else if (rest.starts_with(kLeftSingle) || rest.starts_with(kRightSingle)) {
      mapped.push_back('\'');
      i += 3;
    } else if (rest.starts_with("``") || rest.starts_with("''")) {
      mapped.push_back('"');
      i += 2;
    } else {
      mapped.push_back(IsSpace(s[i]) ? ' ' : s[i]);
      ++i;
    }
  }

  std::string out;
  out.reserve(mapped.size());
  auto is_closing = [](char c) {
    return c == ',' || c == '.' || c == ';' || c == ':' || c == '!' ||
           c == '?' || c == ')' || c == ']' || c == '}' || c == '%';
  };
  auto is_opening = [](char c) { return c == '(' || c == '[' || c == '{'; };
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    const char c = mapped[i];
    if (c == ' ') {
      if (out.empty() || out.back() == ' ' || is_opening(out.back())) continue;
      out.push_back(' ');
      continue;
    }
    const bool possessive =
        c == '\'' && i + 1 < mapped.size() && mapped[i + 1] == 's' &&
        (i + 2 == mapped.size() || !std::isalnum(static_cast<unsigned char>(mapped[i + 2])));
    if ((is_closing(c) || possessive) && !out.empty() && out.back() == ' ') {
      out.pop_back();
    }
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool ContainsNormalized(std::string_view haystack, std::string_view needle) {
  const std::string n = NormalizeForMatch(needle);
  if (n.empty()) return true;
  return NormalizeForMatch(haystack).find(n) != std::string::npos;
}

bool TokenEqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (internal::AsciiLower(a[i]) != internal::AsciiLower(b[i])) return false;
  }
  return true;
}

}  // namespace relgraph::text
