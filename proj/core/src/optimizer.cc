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

#include "relgraph/optimizer.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace relgraph::nn {
namespace {

constexpr char kMagic[8] = {'R', 'G', 'P', 'A', 'R', 'M', '0', '1'};

template <typename T>
void Put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T Take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) {
    throw std::runtime_error("parameter blob truncated");
  }
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

Var ParameterStore::Add(const std::string& name, Matrix init, ParamGroup group) {
  if (index_.contains(name)) {
    throw std::invalid_argument("duplicate parameter " + name);
  }
  Var v = Parameter(std::move(init));
  index_.emplace(name, entries_.size());
  entries_.push_back({name, v, group});
  return v;
}

Var ParameterStore::Get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("no parameter " + name);
  return entries_[it->second].var;
}

bool ParameterStore::Contains(const std::string& name) const {
  return index_.contains(name);
}

std::size_t ParameterStore::ScalarCount() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += static_cast<std::size_t>(e.var.value().size());
  return n;
}

void ParameterStore::ZeroGrad() {
  for (auto& e : entries_) e.var.ZeroGrad();
}

double ParameterStore::GradNorm() const {
  double sq = 0.0;
  for (const auto& e : entries_) {
    if (e.var.node()->grad.size() != 0) sq += e.var.node()->grad.squaredNorm();
  }
  return std::sqrt(sq);
}

bool ParameterStore::AllFinite() const {
  for (const auto& e : entries_) {
    if (!e.var.value().allFinite()) return false;
  }
  return true;
}

std::vector<Matrix> ParameterStore::Snapshot() const {
  std::vector<Matrix> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.var.value());
  return out;
}

void ParameterStore::Restore(const std::vector<Matrix>& values) {
  if (values.size() != entries_.size()) {
    throw std::invalid_argument("snapshot size mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i].var.mutable_value() = values[i];
  }
}

std::string ParameterStore::Serialize() const {
  std::string out(kMagic, sizeof(kMagic));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(entries_.size()));
  for (const auto& e : entries_) {
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(e.name.size()));
    out += e.name;
    const Matrix& m = e.var.value();
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.size(); ++i) Put<double>(out, m(i));
  }
  return out;
}

void ParameterStore::Deserialize(const std::string& blob) {
  if (blob.size() < sizeof(kMagic) ||
      std::memcmp(blob.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a parameter blob");
  }
  std::size_t pos = sizeof(kMagic);
  const auto count = Take<std::uint32_t>(blob, pos);
  for (std::uint32_t k = 0; k < count; ++k) {
    const auto len = Take<std::uint32_t>(blob, pos);
    if (pos + len > blob.size()) throw std::runtime_error("parameter blob truncated");
    std::string name = blob.substr(pos, len);
    pos += len;
    const auto rows = Take<std::uint32_t>(blob, pos);
    const auto cols = Take<std::uint32_t>(blob, pos);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Take<double>(blob, pos);
    Var v = Get(name);
    if (v.rows() != m.rows() || v.cols() != m.cols()) {
      throw std::runtime_error("shape mismatch for parameter " + name);
    }
    v.mutable_value() = std::move(m);
  }
}

Adam::Adam(ParameterStore& store, double encoder_lr, double head_lr,
           AdamOptions options)
    : store_(store), lr_{encoder_lr, head_lr}, options_(options) {
  for (const auto& e : store_.entries()) {
    m_.push_back(Matrix::Zero(e.var.rows(), e.var.cols()));
    v_.push_back(Matrix::Zero(e.var.rows(), e.var.cols()));
  }
}

void Adam::Step() {
  ++step_;
  double scale = 1.0;
  if (options_.clip_norm > 0.0) {
    const double norm = store_.GradNorm();
    if (norm > options_.clip_norm) scale = options_.clip_norm / norm;
  }
  const double bc1 = 1.0 - std::pow(options_.beta1, step_);
  const double bc2 = 1.0 - std::pow(options_.beta2, step_);
  const auto& entries = store_.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Var var = entries[i].var;
    Node* node = var.node();
    if (node->grad.size() == 0) continue;
    const double lr = lr_[static_cast<int>(entries[i].group)];
    if (lr == 0.0) continue;
    Matrix g = node->grad * scale;
    if (options_.weight_decay != 0.0) g += options_.weight_decay * node->value;
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * g;
    v_[i] = options_.beta2 * v_[i] +
            (1.0 - options_.beta2) * g.cwiseProduct(g);
    node->value.array() -= lr * (m_[i].array() / bc1) /
                           ((v_[i].array() / bc2).sqrt() + options_.eps);
  }
  store_.ZeroGrad();
}

}  // namespace relgraph::nn
