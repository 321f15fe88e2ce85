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

#ifndef RELGRAPH_GNN_H_
#define RELGRAPH_GNN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relgraph/corpus.h"
#include "relgraph/graph.h"
#include "relgraph/optimizer.h"
#include "relgraph/tape.h"

namespace relgraph::gnn {

using nn::Matrix;
using nn::RowVector;

enum class Activation { kIdentity, kRelu, kTanh };

std::string_view ActivationName(Activation a);
std::optional<Activation> ParseActivation(std::string_view name);

// How an entity's encoder embedding and its graph embedding are combined.
enum class FusionMethod { kNone, kMean, kMax, kTanh, kTimes };

inline constexpr std::array<FusionMethod, 5> kAllFusions = {
    FusionMethod::kNone, FusionMethod::kMean, FusionMethod::kMax,
    FusionMethod::kTanh, FusionMethod::kTimes};

std::string_view FusionName(FusionMethod f);
std::optional<FusionMethod> ParseFusion(std::string_view name);

class GnnError : public std::invalid_argument {
 public:
  enum class Kind { kDimensionMismatch, kEmptyMentionSet };
  GnnError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Neighbour lists with symmetric normalisation coefficients
// 1 / sqrt(deg(v) * deg(u)), degrees counted with self-loops. Self-loops are
// added when the adjacency lacks them.
class Propagator {
 public:
  struct Edge {
    int neighbour;
    double coeff;
  };

  explicit Propagator(const Eigen::MatrixXd& adjacency);

  // out.row(v) = sum over neighbours u of coeff(v, u) * x.row(u).
  Matrix Apply(const Matrix& x) const;

  int node_count() const { return static_cast<int>(neighbours_.size()); }
  const std::vector<std::vector<Edge>>& neighbours() const { return neighbours_; }

 private:
  std::vector<std::vector<Edge>> neighbours_;
};

// Differentiable Propagator::Apply. The operator is symmetric, so the
// backward pass reuses it.
nn::Var Propagate(const nn::Var& x, const Propagator& propagator);

Matrix ApplyActivation(const Matrix& x, Activation a);
nn::Var ApplyActivation(const nn::Var& x, Activation a);

struct GcnLayerParams {
  Matrix weight;  // d_in x d_out
  Activation activation = Activation::kRelu;
};

// h'_v = act( sum_{u in N(v)} (1 / c_vu) * h_u W ), N(v) including v.
Matrix GcnLayer(const Matrix& h, const graph::DocumentGraph& graph,
                const GcnLayerParams& params);
nn::Var GcnLayer(const nn::Var& h, const Propagator& propagator,
                 const nn::Var& weight, Activation activation);

// Additive attention of one anchor over a set of mention rows:
//   score_j = a . LeakyReLU(anchor Wq + m_j Wk)
//   alpha   = softmax(score)
//   out     = sum_j alpha_j (m_j Wv)
struct GatParams {
  Matrix query;  // d x d
  Matrix key;    // d x d
  Matrix value;  // d x d
  Matrix score;  // d x 1
  double slope = 0.2;
};

struct GatResult {
  RowVector output;
  Eigen::VectorXd weights;
};

GatResult GatAggregate(const Matrix& mentions, const RowVector& anchor,
                       const GatParams& params);

struct GatVars {
  nn::Var query, key, value, score;
  double slope = 0.2;
};

// Differentiable single head; `weights` receives the attention weights.
nn::Var GatAggregate(const nn::Var& mentions, const nn::Var& anchor,
                     const GatVars& params, Eigen::VectorXd* weights = nullptr);

RowVector Fuse(const RowVector& base, const RowVector& graph_vec,
               FusionMethod method);
nn::Var Fuse(const nn::Var& base, const nn::Var& graph_vec, FusionMethod method);

struct GnnConfig {
  int gcn_layers = 2;
  Activation gcn_activation = Activation::kRelu;
  int gat_heads = 1;
  bool use_gcn = true;
  bool use_gat = true;
  FusionMethod fusion = FusionMethod::kNone;
};

// Per-entity vectors, indexed by entity ordinal. `graph` is empty (invalid
// Vars) when fusion is kNone: the graph stage is bypassed.
struct EntityEmbeddingSet {
  std::vector<nn::Var> base;
  std::vector<nn::Var> graph;
  std::vector<nn::Var> fused;
};

// GCN stack over the word graph, then attention pooling over each entity's
// mention nodes, then fusion with the entity's mean-pooled encoder span.
// Parameters live under the "gnn." prefix.
class EntityGraphEncoder {
 public:
  EntityGraphEncoder(GnnConfig cfg, int dim, nn::ParameterStore& store,
                     std::uint64_t seed);

  EntityEmbeddingSet Forward(const nn::Var& node_embeddings,
                             const graph::DocumentGraph& graph,
                             const corpus::Document& doc) const;

  const GnnConfig& config() const { return cfg_; }

 private:
  GnnConfig cfg_;
  int dim_;
  nn::ParameterStore& store_;
};

}  // namespace relgraph::gnn

#endif  // RELGRAPH_GNN_H_
