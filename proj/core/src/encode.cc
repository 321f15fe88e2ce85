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

#include "relgraph/encode.h"

#include <algorithm>
#include <cmath>

#include "relgraph/hash.h"

namespace relgraph::encode {
namespace {

// Splits UTF-8 text into code points (malformed bytes stand alone).
std::vector<std::string_view> CodePoints(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (c >= 0xF0) {
      len = 4;
    } else if (c >= 0xE0) {
      len = 3;
    } else if (c >= 0xC0) {
      len = 2;
    }
    len = std::min(len, s.size() - i);
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& SupportedModels() {
  static const std::vector<std::string> models = {
      "bert-base-cased", "roberta-base", "deberta-v3-base"};
  return models;
}

void ValidateConfig(const EncoderConfig& cfg) {
  const auto& models = SupportedModels();
  if (std::find(models.begin(), models.end(), cfg.model_name) == models.end()) {
    throw EncodeError(EncodeError::Kind::kUnsupportedModel,
                      "unsupported encoder '" + cfg.model_name + "'");
  }
  if (cfg.max_length <= 2 || cfg.hidden_dim <= 0 || cfg.vocab_buckets <= 0 ||
      cfg.layers < 0) {
    throw EncodeError(EncodeError::Kind::kInvalidConfig,
                      "encoder sizes must be positive (max_length > 2)");
  }
}

SubwordTokenizer::SubwordTokenizer(std::string_view model_name,
                                   int vocab_buckets)
    : vocab_buckets_(vocab_buckets), salt_(Fnv1a64(model_name)) {
  if (model_name == "roberta-base") {
    style_ = Style::kBpe;
    piece_chars_ = 5;
  } else if (model_name == "deberta-v3-base") {
    style_ = Style::kSentencePiece;
    piece_chars_ = 3;
  } else if (model_name == "bert-base-cased") {
    style_ = Style::kWordPiece;
    piece_chars_ = 4;
  } else {
    throw EncodeError(EncodeError::Kind::kUnsupportedModel,
                      "unsupported encoder '" + std::string(model_name) + "'");
  }
}

std::vector<std::string> SubwordTokenizer::Pieces(std::string_view word) const {
  const auto cps = CodePoints(word);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cps.size(); i += piece_chars_) {
    std::string piece;
    const bool first = i == 0;
    if (first && style_ == Style::kBpe) piece = "\xC4\xA0";  // "Ġ"
    if (first && style_ == Style::kSentencePiece) piece = "\xE2\x96\x81";  // "▁"
    if (!first && style_ == Style::kWordPiece) piece = "##";
    for (std::size_t k = i; k < std::min(cps.size(), i + piece_chars_); ++k) {
      piece += cps[k];
    }
    out.push_back(std::move(piece));
  }
  if (out.empty()) out.push_back(style_ == Style::kWordPiece ? "[UNK]" : "<unk>");
  return out;
}

int SubwordTokenizer::Id(std::string_view piece) const {
  return kReserved +
         static_cast<int>(Fnv1a64(piece, salt_) %
                          static_cast<std::uint64_t>(vocab_buckets_));
}

EncodingPlan PlanEncoding(const graph::MiniDoc& minidoc,
                          const SubwordTokenizer& tokenizer, int max_length) {
  std::vector<std::vector<std::vector<int>>> sentence_ids;
  std::vector<int> sentence_len;
  for (const auto& sentence : minidoc) {
    auto& words = sentence_ids.emplace_back();
    int len = 0;
    for (const auto& w : sentence) {
      auto& ids = words.emplace_back();
      for (const auto& p : tokenizer.Pieces(w)) ids.push_back(tokenizer.Id(p));
      len += static_cast<int>(ids.size());
    }
    sentence_len.push_back(len);
  }

  // [CLS] s0 [SEP] always; support adds its subwords plus one closing [SEP].
  int total = minidoc.empty() ? 2 : sentence_len[0] + 2;
  if (total > max_length) {
    throw EncodeError(EncodeError::Kind::kTruncationOverflow,
                      "annotated sentence needs " + std::to_string(total) +
                          " positions, budget is " + std::to_string(max_length));
  }
  std::size_t kept = minidoc.empty() ? 0 : 1;
  int support_len = 0;
  for (std::size_t s = 1; s < minidoc.size(); ++s) support_len += sentence_len[s];
  std::size_t keep_support = minidoc.size() > 1 ? minidoc.size() - 1 : 0;
  while (keep_support > 0 && total + support_len + 1 > max_length) {
    support_len -= sentence_len[keep_support];
    --keep_support;
  }
  kept += keep_support;

  EncodingPlan plan;
  plan.dropped_sentences = static_cast<int>(minidoc.size() - kept);
  plan.ids.push_back(SubwordTokenizer::kCls);
  plan.segments.push_back(0);
  for (std::size_t s = 0; s < kept; ++s) {
    plan.kept.push_back(minidoc[s]);
    auto& ranges = plan.word_ranges.emplace_back();
    const int segment = s == 0 ? 0 : 1;
    for (const auto& ids : sentence_ids[s]) {
      const int begin = plan.length();
      plan.ids.insert(plan.ids.end(), ids.begin(), ids.end());
      plan.segments.insert(plan.segments.end(), ids.size(), segment);
      ranges.push_back({begin, plan.length()});
    }
    if (s == 0 || s + 1 == kept) {
      plan.ids.push_back(SubwordTokenizer::kSep);
      plan.segments.push_back(segment);
    }
  }
  return plan;
}

Encoder::Encoder(EncoderConfig cfg, nn::ParameterStore& store,
                 std::uint64_t seed)
    : cfg_(std::move(cfg)),
      tokenizer_(cfg_.model_name, cfg_.vocab_buckets),
      store_(store) {
  ValidateConfig(cfg_);
  std::mt19937_64 rng(seed ^ Fnv1a64(cfg_.model_name));
  const int d = cfg_.hidden_dim;
  const double w_std = 1.0 / std::sqrt(static_cast<double>(d));
  const auto group = nn::ParamGroup::kEncoder;
  store_.Add("enc.embed", nn::GaussianMatrix(tokenizer_.vocab_size(), d, 1.0, rng),
             group);
  store_.Add("enc.pos", nn::GaussianMatrix(cfg_.max_length, d, 0.1, rng), group);
  store_.Add("enc.segment", nn::GaussianMatrix(2, d, 0.1, rng), group);
  for (int l = 0; l < cfg_.layers; ++l) {
    const std::string p = "enc.l" + std::to_string(l) + ".";
    for (const char* w : {"wq", "wk", "wv", "wo"}) {
      store_.Add(p + w, nn::GaussianMatrix(d, d, w_std, rng), group);
    }
    store_.Add(p + "w1", nn::GaussianMatrix(d, 2 * d, w_std, rng), group);
    store_.Add(p + "b1", nn::Matrix::Zero(1, 2 * d), group);
    store_.Add(p + "w2",
               nn::GaussianMatrix(2 * d, d, 1.0 / std::sqrt(2.0 * d), rng), group);
    store_.Add(p + "b2", nn::Matrix::Zero(1, d), group);
  }
}

nn::Var Encoder::Param(const std::string& name) const {
  nn::Var v = store_.Get(name);
  return cfg_.finetune ? v : nn::Constant(v.value());
}

nn::Var Encoder::Forward(const EncodingPlan& plan) const {
  using namespace nn;
  if (plan.length() > cfg_.max_length) {
    throw EncodeError(EncodeError::Kind::kTruncationOverflow,
                      "plan longer than max_length");
  }
  std::vector<int> positions(plan.ids.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = static_cast<int>(i);

  Var x = Add(Add(Rows(Param("enc.embed"), plan.ids),
                  Rows(Param("enc.pos"), positions)),
              Rows(Param("enc.segment"), plan.segments));
  Var h = LayerNormRows(x);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(cfg_.hidden_dim));
  for (int l = 0; l < cfg_.layers; ++l) {
    const std::string p = "enc.l" + std::to_string(l) + ".";
    Var q = MatMul(h, Param(p + "wq"));
    Var k = MatMul(h, Param(p + "wk"));
    Var v = MatMul(h, Param(p + "wv"));
    Var attention = SoftmaxRows(Scale(MatMul(q, Transpose(k)), inv_sqrt_d));
    h = LayerNormRows(Add(h, MatMul(MatMul(attention, v), Param(p + "wo"))));
    Var ff = AddRow(
        MatMul(Relu(AddRow(MatMul(h, Param(p + "w1")), Param(p + "b1"))),
               Param(p + "w2")),
        Param(p + "b2"));
    h = LayerNormRows(Add(h, ff));
  }
  return h;
}

nn::Matrix PoolingMatrix(const EncodingPlan& plan,
                         const graph::DocumentGraph& graph, Pooling pooling) {
  nn::Matrix pool = nn::Matrix::Zero(graph.node_count(), plan.length());
  for (const auto& node : graph.nodes) {
    const auto s = static_cast<std::size_t>(node.sentence_index);
    const auto w = static_cast<std::size_t>(node.word_index);
    if (s >= plan.word_ranges.size() || w >= plan.word_ranges[s].size() ||
        plan.word_ranges[s][w].end <= plan.word_ranges[s][w].begin) {
      throw EncodeError(EncodeError::Kind::kMissingAlignment,
                        "node " + std::to_string(node.node_index) + " ('" +
                            node.word + "') has no subword range");
    }
    const WordRange r = plan.word_ranges[s][w];
    if (pooling == Pooling::kFirst) {
      pool(node.node_index, r.begin) = 1.0;
    } else {
      const double weight = 1.0 / static_cast<double>(r.end - r.begin);
      for (int p = r.begin; p < r.end; ++p) pool(node.node_index, p) = weight;
    }
  }
  return pool;
}

nn::Var AlignToNodes(const nn::Var& subwords, const EncodingPlan& plan,
                     const graph::DocumentGraph& graph, Pooling pooling) {
  return nn::LeftMul(PoolingMatrix(plan, graph, pooling), subwords);
}

}  // namespace relgraph::encode
