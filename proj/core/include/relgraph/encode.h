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

#ifndef RELGRAPH_ENCODE_H_
#define RELGRAPH_ENCODE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/graph.h"
#include "relgraph/optimizer.h"
#include "relgraph/tape.h"

namespace relgraph::encode {

enum class Pooling { kMean, kFirst };

struct EncoderConfig {
  std::string model_name = "bert-base-cased";
  // Sequence budget in subwords, delimiters included.
  int max_length = 256;
  bool finetune = true;
  Pooling pooling = Pooling::kMean;
  int hidden_dim = 64;
  int vocab_buckets = 8192;
  int layers = 1;
};

class EncodeError : public std::runtime_error {
 public:
  enum class Kind {
    kUnsupportedModel,
    kInvalidConfig,
    kTruncationOverflow,
    kMissingAlignment,
  };

  EncodeError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const std::vector<std::string>& SupportedModels();
void ValidateConfig(const EncoderConfig& cfg);

// Deterministic subword segmentation with hashed vocabulary ids. Each model
// name selects a segmentation profile in the style of that model's tokenizer:
// WordPiece continuation marks for BERT, word-initial BPE marks for RoBERTa
// and SentencePiece marks for DeBERTa-v3.
class SubwordTokenizer {
 public:
  static constexpr int kCls = 0;
  static constexpr int kSep = 1;
  static constexpr int kReserved = 2;

  SubwordTokenizer(std::string_view model_name, int vocab_buckets);

  std::vector<std::string> Pieces(std::string_view word) const;
  int Id(std::string_view piece) const;
  int vocab_size() const { return vocab_buckets_ + kReserved; }

 private:
  enum class Style { kWordPiece, kBpe, kSentencePiece };
  Style style_;
  std::size_t piece_chars_;
  int vocab_buckets_;
  std::uint64_t salt_;
};

// [begin, end) positions in the encoded sequence.
struct WordRange {
  int begin = 0;
  int end = 0;
  friend bool operator==(const WordRange&, const WordRange&) = default;
};

// Sequence layout: [CLS] sentence-0 [SEP] support-1 ... support-k [SEP].
struct EncodingPlan {
  std::vector<int> ids;
  std::vector<int> segments;  // 0 = annotated sentence, 1 = support.
  // word_ranges[s][w] for every kept sentence s.
  std::vector<std::vector<WordRange>> word_ranges;
  // The surviving mini-document (support sentences dropped last-first).
  graph::MiniDoc kept;

  int length() const { return static_cast<int>(ids.size()); }
  int dropped_sentences = 0;
};

// Throws EncodeError(kTruncationOverflow) when the annotated sentence alone
// does not fit.
EncodingPlan PlanEncoding(const graph::MiniDoc& minidoc,
                          const SubwordTokenizer& tokenizer, int max_length);

// A small transformer encoder (embeddings, single-head self-attention blocks
// with post-layer-norm) whose parameters live in a ParameterStore under the
// "enc." prefix.
class Encoder {
 public:
  Encoder(EncoderConfig cfg, nn::ParameterStore& store, std::uint64_t seed);

  // length x hidden_dim subword embeddings, delimiters included.
  nn::Var Forward(const EncodingPlan& plan) const;

  const SubwordTokenizer& tokenizer() const { return tokenizer_; }
  const EncoderConfig& config() const { return cfg_; }
  int hidden_dim() const { return cfg_.hidden_dim; }

 private:
  nn::Var Param(const std::string& name) const;

  EncoderConfig cfg_;
  SubwordTokenizer tokenizer_;
  nn::ParameterStore& store_;
};

// node_count x length pooling operator: row i averages (or picks the first
// of) node i's subword positions. Throws EncodeError(kMissingAlignment).
nn::Matrix PoolingMatrix(const EncodingPlan& plan,
                         const graph::DocumentGraph& graph, Pooling pooling);

nn::Var AlignToNodes(const nn::Var& subwords, const EncodingPlan& plan,
                     const graph::DocumentGraph& graph,
                     Pooling pooling = Pooling::kMean);

}  // namespace relgraph::encode

#endif  // RELGRAPH_ENCODE_H_
