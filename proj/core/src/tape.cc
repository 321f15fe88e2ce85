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

#include "relgraph/tape.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace relgraph::nn {
namespace {

using NodePtr = std::shared_ptr<Node>;

Var Make(Matrix value, std::vector<NodePtr> parents,
         std::function<void(Node&)> backward) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  for (const auto& p : parents) {
    if (p->requires_grad) node->requires_grad = true;
  }
  if (node->requires_grad) {
    node->parents = std::move(parents);
    node->backward = std::move(backward);
  }
  return Var(std::move(node));
}

void RequireSameShape(const Var& a, const Var& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace

void Node::Accumulate(const Matrix& g) {
  if (grad.size() == 0) {
    grad = g;
  } else {
    grad += g;
  }
}

Matrix Var::grad() const {
  if (node_->grad.size() == 0) {
    return Matrix::Zero(node_->value.rows(), node_->value.cols());
  }
  return node_->grad;
}

Var Parameter(Matrix value) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->requires_grad = true;
  return Var(std::move(node));
}

Var Constant(Matrix value) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  return Var(std::move(node));
}

Matrix GaussianMatrix(Eigen::Index rows, Eigen::Index cols, double stddev,
                      std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  }
  return m;
}

void Backward(const Var& output) {
  if (output.rows() != 1 || output.cols() != 1) {
    throw std::invalid_argument("Backward: output must be 1x1");
  }
  if (!output.requires_grad()) return;

  // Iterative post-order DFS gives a topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack;
  stack.emplace_back(output.node(), 0);
  visited.insert(output.node());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) {
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  output.node()->Accumulate(Matrix::Ones(1, 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (node->backward && node->grad.size() != 0) node->backward(*node);
  }
}

Var MatMul(const Var& a, const Var& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("MatMul: inner dimensions " +
                                std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()));
  }
  return Make(a.value() * b.value(), {a.shared(), b.shared()}, [](Node& n) {
    Node& pa = *n.parents[0];
    Node& pb = *n.parents[1];
    if (pa.requires_grad) pa.Accumulate(n.grad * pb.value.transpose());
    if (pb.requires_grad) pb.Accumulate(pa.value.transpose() * n.grad);
  });
}

Var LeftMul(const Matrix& a, const Var& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("LeftMul: inner dimensions mismatch");
  }
  auto at = std::make_shared<Matrix>(a.transpose());
  return Make(a * b.value(), {b.shared()},
              [at](Node& n) { n.parents[0]->Accumulate(*at * n.grad); });
}

Var Add(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Add");
  return Make(a.value() + b.value(), {a.shared(), b.shared()}, [](Node& n) {
    for (auto& p : n.parents) {
      if (p->requires_grad) p->Accumulate(n.grad);
    }
  });
}

Var Sub(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Sub");
  return Make(a.value() - b.value(), {a.shared(), b.shared()}, [](Node& n) {
    if (n.parents[0]->requires_grad) n.parents[0]->Accumulate(n.grad);
    if (n.parents[1]->requires_grad) n.parents[1]->Accumulate(-n.grad);
  });
}

Var AddRow(const Var& a, const Var& row) {
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw std::invalid_argument("AddRow: row must be 1 x cols(a)");
  }
  Matrix out = a.value().rowwise() + row.value().row(0);
  return Make(std::move(out), {a.shared(), row.shared()}, [](Node& n) {
    if (n.parents[0]->requires_grad) n.parents[0]->Accumulate(n.grad);
    if (n.parents[1]->requires_grad)
      n.parents[1]->Accumulate(n.grad.colwise().sum());
  });
}

Var Scale(const Var& a, double s) {
  return Make(a.value() * s, {a.shared()},
              [s](Node& n) { n.parents[0]->Accumulate(n.grad * s); });
}

Var Mul(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Mul");
  return Make(a.value().cwiseProduct(b.value()), {a.shared(), b.shared()},
              [](Node& n) {
                Node& pa = *n.parents[0];
                Node& pb = *n.parents[1];
                if (pa.requires_grad) pa.Accumulate(n.grad.cwiseProduct(pb.value));
                if (pb.requires_grad) pb.Accumulate(n.grad.cwiseProduct(pa.value));
              });
}

Var Maximum(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Maximum");
  return Make(a.value().cwiseMax(b.value()), {a.shared(), b.shared()},
              [](Node& n) {
                Node& pa = *n.parents[0];
                Node& pb = *n.parents[1];
                const auto take_a = (pa.value.array() >= pb.value.array());
                if (pa.requires_grad)
                  pa.Accumulate(take_a.select(n.grad.array(), 0.0).matrix());
                if (pb.requires_grad)
                  pb.Accumulate(take_a.select(0.0, n.grad.array()).matrix());
              });
}

Var Tanh(const Var& a) {
  Matrix out = a.value().array().tanh().matrix();
  return Make(out, {a.shared()}, [](Node& n) {
    n.parents[0]->Accumulate(
        (n.grad.array() * (1.0 - n.value.array().square())).matrix());
  });
}

Var Relu(const Var& a) {
  return Make(a.value().cwiseMax(0.0), {a.shared()}, [](Node& n) {
    const auto& x = n.parents[0]->value;
    n.parents[0]->Accumulate((x.array() > 0.0).select(n.grad.array(), 0.0).matrix());
  });
}

Var LeakyRelu(const Var& a, double slope) {
  Matrix out = (a.value().array() > 0.0)
                   .select(a.value().array(), slope * a.value().array())
                   .matrix();
  return Make(std::move(out), {a.shared()}, [slope](Node& n) {
    const auto& x = n.parents[0]->value;
    n.parents[0]->Accumulate(
        (x.array() > 0.0).select(n.grad.array(), slope * n.grad.array()).matrix());
  });
}

Var Sigmoid(const Var& a) {
  Matrix out = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  return Make(out, {a.shared()}, [](Node& n) {
    n.parents[0]->Accumulate(
        (n.grad.array() * n.value.array() * (1.0 - n.value.array())).matrix());
  });
}

Var Transpose(const Var& a) {
  return Make(a.value().transpose(), {a.shared()},
              [](Node& n) { n.parents[0]->Accumulate(n.grad.transpose()); });
}

Var SoftmaxRows(const Var& a) {
  Matrix out = a.value();
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const double m = out.row(r).maxCoeff();
    out.row(r) = (out.row(r).array() - m).exp().matrix();
    out.row(r) /= out.row(r).sum();
  }
  return Make(std::move(out), {a.shared()}, [](Node& n) {
    Matrix g(n.value.rows(), n.value.cols());
    for (Eigen::Index r = 0; r < n.value.rows(); ++r) {
      const double dot = n.grad.row(r).dot(n.value.row(r));
      g.row(r) = (n.value.row(r).array() * (n.grad.row(r).array() - dot)).matrix();
    }
    n.parents[0]->Accumulate(g);
  });
}

Var Rows(const Var& a, std::span<const int> indices) {
  std::vector<int> idx(indices.begin(), indices.end());
  Matrix out(static_cast<Eigen::Index>(idx.size()), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= a.rows()) {
      throw std::invalid_argument("Rows: index out of range");
    }
    out.row(static_cast<Eigen::Index>(i)) = a.value().row(idx[i]);
  }
  return Make(std::move(out), {a.shared()}, [idx = std::move(idx)](Node& n) {
    Node& p = *n.parents[0];
    Matrix g = Matrix::Zero(p.value.rows(), p.value.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      g.row(idx[i]) += n.grad.row(static_cast<Eigen::Index>(i));
    }
    p.Accumulate(g);
  });
}

Var MeanRows(const Var& a, std::span<const int> indices) {
  if (indices.empty()) throw std::invalid_argument("MeanRows: no rows");
  std::vector<int> idx(indices.begin(), indices.end());
  Matrix out = Matrix::Zero(1, a.cols());
  for (int i : idx) {
    if (i < 0 || i >= a.rows()) {
      throw std::invalid_argument("MeanRows: index out of range");
    }
    out.row(0) += a.value().row(i);
  }
  const double inv = 1.0 / static_cast<double>(idx.size());
  out *= inv;
  return Make(std::move(out), {a.shared()}, [idx = std::move(idx), inv](Node& n) {
    Node& p = *n.parents[0];
    Matrix g = Matrix::Zero(p.value.rows(), p.value.cols());
    for (int i : idx) g.row(i) += inv * n.grad.row(0);
    p.Accumulate(g);
  });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("ConcatCols: no parts");
  const Eigen::Index rows = parts[0].rows();
  Eigen::Index cols = 0;
  std::vector<NodePtr> parents;
  std::vector<Eigen::Index> widths;
  for (const Var& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("ConcatCols: row mismatch");
    cols += p.cols();
    widths.push_back(p.cols());
    parents.push_back(p.shared());
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& p : parts) {
    out.middleCols(at, p.cols()) = p.value();
    at += p.cols();
  }
  return Make(std::move(out), std::move(parents), [widths](Node& n) {
    Eigen::Index at = 0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      if (n.parents[i]->requires_grad)
        n.parents[i]->Accumulate(n.grad.middleCols(at, widths[i]));
      at += widths[i];
    }
  });
}

Var ConcatRows(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("ConcatRows: no parts");
  const Eigen::Index cols = parts[0].cols();
  Eigen::Index rows = 0;
  std::vector<NodePtr> parents;
  std::vector<Eigen::Index> heights;
  for (const Var& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("ConcatRows: col mismatch");
    rows += p.rows();
    heights.push_back(p.rows());
    parents.push_back(p.shared());
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& p : parts) {
    out.middleRows(at, p.rows()) = p.value();
    at += p.rows();
  }
  return Make(std::move(out), std::move(parents), [heights](Node& n) {
    Eigen::Index at = 0;
    for (std::size_t i = 0; i < heights.size(); ++i) {
      if (n.parents[i]->requires_grad)
        n.parents[i]->Accumulate(n.grad.middleRows(at, heights[i]));
      at += heights[i];
    }
  });
}

Var Sum(const Var& a) {
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return Make(std::move(out), {a.shared()}, [](Node& n) {
    const Node& p = *n.parents[0];
    n.parents[0]->Accumulate(Matrix::Constant(p.value.rows(), p.value.cols(),
                                              n.grad(0, 0)));
  });
}

Var LayerNormRows(const Var& a, double eps) {
  const Matrix& x = a.value();
  Matrix y(x.rows(), x.cols());
  auto inv_std = std::make_shared<Eigen::VectorXd>(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var = (x.row(r).array() - mean).square().mean();
    (*inv_std)(r) = 1.0 / std::sqrt(var + eps);
    y.row(r) = ((x.row(r).array() - mean) * (*inv_std)(r)).matrix();
  }
  return Make(std::move(y), {a.shared()}, [inv_std](Node& n) {
    Matrix g(n.value.rows(), n.value.cols());
    for (Eigen::Index r = 0; r < n.value.rows(); ++r) {
      const auto dy = n.grad.row(r).array();
      const auto yr = n.value.row(r).array();
      g.row(r) = ((*inv_std)(r) * (dy - dy.mean() - yr * (dy * yr).mean())).matrix();
    }
    n.parents[0]->Accumulate(g);
  });
}

Var BceWithLogitsSum(const Var& logits, const Matrix& targets) {
  if (targets.rows() != logits.rows() || targets.cols() != logits.cols()) {
    throw std::invalid_argument("BceWithLogitsSum: target shape mismatch");
  }
  double loss = 0.0;
  const Matrix& z = logits.value();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    loss += Softplus(z(i)) - targets(i) * z(i);
  }
  Matrix out(1, 1);
  out(0, 0) = loss;
  return Make(std::move(out), {logits.shared()}, [targets](Node& n) {
    const Matrix& z = n.parents[0]->value;
    Matrix g = (1.0 / (1.0 + (-z.array()).exp())).matrix() - targets;
    n.parents[0]->Accumulate(g * n.grad(0, 0));
  });
}

Var SoftmaxCrossEntropy(const Var& logits, int target) {
  if (logits.rows() != 1 || target < 0 || target >= logits.cols()) {
    throw std::invalid_argument("SoftmaxCrossEntropy: bad target or shape");
  }
  const RowVector z = logits.value().row(0);
  const double m = z.maxCoeff();
  const double lse = m + std::log((z.array() - m).exp().sum());
  Matrix out(1, 1);
  out(0, 0) = lse - z(target);
  return Make(std::move(out), {logits.shared()}, [target, lse](Node& n) {
    const Matrix& z = n.parents[0]->value;
    Matrix g = (z.array() - lse).exp().matrix();
    g(0, target) -= 1.0;
    n.parents[0]->Accumulate(g * n.grad(0, 0));
  });
}

}  // namespace relgraph::nn
