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

#include "relgraph/gnn.h"

#include <cmath>

#include "text_util.h"

namespace relgraph::gnn {
namespace {

void RequireDims(bool ok, const std::string& what) {
  if (!ok) throw GnnError(GnnError::Kind::kDimensionMismatch, what);
}

// Number of nonzero entries in row v, counting v itself once even if the
// diagonal is absent.
int DegreeWithSelfLoop(const Eigen::MatrixXd& adjacency, int v) {
  int deg = adjacency(v, v) != 0.0 ? 0 : 1;
  for (Eigen::Index u = 0; u < adjacency.cols(); ++u) {
    if (adjacency(v, u) != 0.0) ++deg;
  }
  return deg;
}

}  // namespace

std::string_view ActivationName(Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
  }
  return "identity";
}

std::optional<Activation> ParseActivation(std::string_view name) {
  const std::string key = internal::AsciiLower(name);
  if (key == "identity" || key == "none" || key == "linear")
    return Activation::kIdentity;
  if (key == "relu") return Activation::kRelu;
  if (key == "tanh") return Activation::kTanh;
  return std::nullopt;
}

std::string_view FusionName(FusionMethod f) {
  switch (f) {
    case FusionMethod::kNone:
      return "none";
    case FusionMethod::kMean:
      return "mean";
    case FusionMethod::kMax:
      return "max";
    case FusionMethod::kTanh:
      return "tanh";
    case FusionMethod::kTimes:
      return "times";
  }
  return "none";
}

std::optional<FusionMethod> ParseFusion(std::string_view name) {
  const std::string key = internal::AsciiLower(name);
  for (FusionMethod f : kAllFusions) {
    if (FusionName(f) == key) return f;
  }
  return std::nullopt;
}

Propagator::Propagator(const Eigen::MatrixXd& adjacency) {
  RequireDims(adjacency.rows() == adjacency.cols(), "adjacency must be square");
  const int n = static_cast<int>(adjacency.rows());
  std::vector<double> inv_sqrt_deg(n);
  for (int v = 0; v < n; ++v) {
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(DegreeWithSelfLoop(adjacency, v)));
  }
  neighbours_.resize(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (adjacency(v, u) != 0.0 || u == v) {
        neighbours_[v].push_back({u, inv_sqrt_deg[v] * inv_sqrt_deg[u]});
      }
    }
  }
}

Matrix Propagator::Apply(const Matrix& x) const {
  RequireDims(x.rows() == node_count(), "feature rows must equal node count");
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int v = 0; v < node_count(); ++v) {
    for (const Edge& e : neighbours_[v]) out.row(v) += e.coeff * x.row(e.neighbour);
  }
  return out;
}

nn::Var Propagate(const nn::Var& x, const Propagator& propagator) {
  // Route through a constant-operator node so the tape owns a copy of the
  // neighbour lists.
  auto op = std::make_shared<Propagator>(propagator);
  nn::Var out = nn::Constant(op->Apply(x.value()));
  if (!x.requires_grad()) return out;
  nn::Node* node = out.node();
  node->requires_grad = true;
  node->parents = {x.shared()};
  node->backward = [op](nn::Node& n) { n.parents[0]->Accumulate(op->Apply(n.grad)); };
  return out;
}

Matrix ApplyActivation(const Matrix& x, Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return x;
    case Activation::kRelu:
      return x.cwiseMax(0.0);
    case Activation::kTanh:
      return x.array().tanh().matrix();
  }
  return x;
}

nn::Var ApplyActivation(const nn::Var& x, Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return x;
    case Activation::kRelu:
      return nn::Relu(x);
    case Activation::kTanh:
      return nn::Tanh(x);
  }
  return x;
}

Matrix GcnLayer(const Matrix& h, const graph::DocumentGraph& graph,
                const GcnLayerParams& params) {
  const int n = graph.node_count();
  RequireDims(h.rows() == n, "feature rows " + std::to_string(h.rows()) +
                                 " != node count " + std::to_string(n));
  RequireDims(h.cols() == params.weight.rows(),
              "feature dim " + std::to_string(h.cols()) + " != weight rows " +
                  std::to_string(params.weight.rows()));
  const Eigen::MatrixXd& a = graph.adjacency;
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = DegreeWithSelfLoop(a, v);

  const Matrix transformed = h * params.weight;
  Matrix out = Matrix::Zero(n, params.weight.cols());
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (a(v, u) == 0.0 && u != v) continue;
      const double c_vu = std::sqrt(static_cast<double>(deg[v]) * deg[u]);
      out.row(v) += transformed.row(u) / c_vu;
    }
  }
  return ApplyActivation(out, params.activation);
}

nn::Var GcnLayer(const nn::Var& h, const Propagator& propagator,
                 const nn::Var& weight, Activation activation) {
  RequireDims(h.rows() == propagator.node_count(),
              "feature rows must equal node count");
  RequireDims(h.cols() == weight.rows(), "feature dim must equal weight rows");
  return ApplyActivation(Propagate(nn::MatMul(h, weight), propagator), activation);
}

GatResult GatAggregate(const Matrix& mentions, const RowVector& anchor,
                       const GatParams& params) {
  if (mentions.rows() == 0) {
    throw GnnError(GnnError::Kind::kEmptyMentionSet, "entity has no mentions");
  }
  const Eigen::Index d = mentions.cols();
  RequireDims(anchor.size() == d && params.query.rows() == d &&
                  params.key.rows() == d && params.value.rows() == d &&
                  params.score.rows() == params.key.cols() &&
                  params.query.cols() == params.key.cols(),
              "attention parameter shapes do not match mention dim");
  const RowVector q = anchor * params.query;
  Matrix hidden = (mentions * params.key).rowwise() + q;
  hidden = (hidden.array() > 0.0).select(hidden.array(), params.slope * hidden.array()).matrix();
  Eigen::VectorXd scores = hidden * params.score;
  const double m = scores.maxCoeff();
  Eigen::VectorXd weights = (scores.array() - m).exp().matrix();
  weights /= weights.sum();
  GatResult result;
  result.weights = weights;
  result.output = weights.transpose() * (mentions * params.value);
  return result;
}

nn::Var GatAggregate(const nn::Var& mentions, const nn::Var& anchor,
                     const GatVars& params, Eigen::VectorXd* weights) {
  using namespace nn;
  if (mentions.rows() == 0) {
    throw GnnError(GnnError::Kind::kEmptyMentionSet, "entity has no mentions");
  }
  RequireDims(anchor.rows() == 1 && anchor.cols() == mentions.cols(),
              "anchor must be 1 x mention dim");
  Var hidden = LeakyRelu(AddRow(MatMul(mentions, params.key),
                                MatMul(anchor, params.query)),
                         params.slope);
  Var alpha = SoftmaxRows(Transpose(MatMul(hidden, params.score)));
  if (weights != nullptr) *weights = alpha.value().row(0).transpose();
  return MatMul(alpha, MatMul(mentions, params.value));
}

RowVector Fuse(const RowVector& base, const RowVector& graph_vec,
               FusionMethod method) {
  RequireDims(base.size() == graph_vec.size(), "fusion inputs differ in size");
  switch (method) {
    case FusionMethod::kNone:
      return base;
    case FusionMethod::kMean:
      return (base + graph_vec) / 2.0;
    case FusionMethod::kMax:
      return base.cwiseMax(graph_vec);
    case FusionMethod::kTanh:
      return (base + graph_vec).array().tanh().matrix();
    case FusionMethod::kTimes:
      return base.cwiseProduct(graph_vec);
  }
  return base;
}

nn::Var Fuse(const nn::Var& base, const nn::Var& graph_vec, FusionMethod method) {
  if (method == FusionMethod::kNone) return base;
  RequireDims(base.rows() == graph_vec.rows() && base.cols() == graph_vec.cols(),
              "fusion inputs differ in size");
  switch (method) {
    case FusionMethod::kMean:
      return nn::Scale(nn::Add(base, graph_vec), 0.5);
    case FusionMethod::kMax:
      return nn::Maximum(base, graph_vec);
    case FusionMethod::kTanh:
      return nn::Tanh(nn::Add(base, graph_vec));
    case FusionMethod::kTimes:
      return nn::Mul(base, graph_vec);
    case FusionMethod::kNone:
      break;
  }
  return base;
}

EntityGraphEncoder::EntityGraphEncoder(GnnConfig cfg, int dim,
                                       nn::ParameterStore& store,
                                       std::uint64_t seed)
    : cfg_(cfg), dim_(dim), store_(store) {
  if (cfg_.gcn_layers < 0 || cfg_.gat_heads < 1) {
    throw std::invalid_argument("gcn_layers must be >= 0 and gat_heads >= 1");
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const double w_std = 1.0 / std::sqrt(static_cast<double>(dim));
  const auto group = nn::ParamGroup::kHead;
  for (int l = 0; l < cfg_.gcn_layers; ++l) {
    store_.Add("gnn.gcn" + std::to_string(l),
               Matrix::Identity(dim, dim) + nn::GaussianMatrix(dim, dim, 0.02, rng),
               group);
  }
  for (int h = 0; h < cfg_.gat_heads; ++h) {
    const std::string p = "gnn.gat" + std::to_string(h) + ".";
    store_.Add(p + "query", nn::GaussianMatrix(dim, dim, w_std, rng), group);
    store_.Add(p + "key", nn::GaussianMatrix(dim, dim, w_std, rng), group);
    store_.Add(p + "value",
               Matrix::Identity(dim, dim) + nn::GaussianMatrix(dim, dim, 0.02, rng),
               group);
    store_.Add(p + "score", nn::GaussianMatrix(dim, 1, w_std, rng), group);
  }
}

EntityEmbeddingSet EntityGraphEncoder::Forward(const nn::Var& node_embeddings,
                                               const graph::DocumentGraph& graph,
                                               const corpus::Document& doc) const {
  RequireDims(node_embeddings.rows() == graph.node_count() &&
                  node_embeddings.cols() == dim_,
              "node embeddings must be node_count x dim");
  EntityEmbeddingSet out;
  for (const auto& entity : doc.entities) {
    const auto span = graph.OriginalSpanNodes(entity);
    out.base.push_back(nn::MeanRows(node_embeddings, span));
  }
  if (cfg_.fusion == FusionMethod::kNone) {
    out.fused = out.base;
    return out;
  }

  nn::Var refined = node_embeddings;
  if (cfg_.use_gcn && cfg_.gcn_layers > 0) {
    const Propagator propagator(graph.adjacency);
    for (int l = 0; l < cfg_.gcn_layers; ++l) {
      refined = GcnLayer(refined, propagator, store_.Get("gnn.gcn" + std::to_string(l)),
                         cfg_.gcn_activation);
    }
  }

  for (std::size_t i = 0; i < doc.entities.size(); ++i) {
    const auto& entity = doc.entities[i];
    const auto& component = graph.entity_components.at(entity.id);
    nn::Var mentions = nn::Rows(refined, component);
    nn::Var graph_vec;
    if (cfg_.use_gat) {
      std::vector<nn::Var> heads;
      for (int h = 0; h < cfg_.gat_heads; ++h) {
        const std::string p = "gnn.gat" + std::to_string(h) + ".";
        GatVars vars{store_.Get(p + "query"), store_.Get(p + "key"),
                     store_.Get(p + "value"), store_.Get(p + "score")};
        heads.push_back(GatAggregate(mentions, out.base[i], vars));
      }
      graph_vec = heads.front();
      for (std::size_t h = 1; h < heads.size(); ++h) {
        graph_vec = nn::Add(graph_vec, heads[h]);
      }
      if (heads.size() > 1) {
        graph_vec = nn::Scale(graph_vec, 1.0 / static_cast<double>(heads.size()));
      }
    } else {
      std::vector<int> all(static_cast<std::size_t>(mentions.rows()));
      for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
      graph_vec = nn::MeanRows(mentions, all);
    }
    out.graph.push_back(graph_vec);
    out.fused.push_back(Fuse(out.base[i], graph_vec, cfg_.fusion));
  }
  return out;
}

}  // namespace relgraph::gnn
