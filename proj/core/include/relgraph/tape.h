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

#ifndef RELGRAPH_TAPE_H_
#define RELGRAPH_TAPE_H_

#include <functional>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

// Minimal reverse-mode automatic differentiation over dense double matrices.
// A Var is a handle to a node in a dynamically built expression graph; each
// forward pass builds a fresh graph whose leaves are long-lived parameters.
namespace relgraph::nn {

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

struct Node {
  Matrix value;
  Matrix grad;  // Empty until a gradient flows in.
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  // Adds `g` into grad, allocating zeros on first use.
  void Accumulate(const Matrix& g);
};

class Var {
 public:
  Var() = default;
  explicit Var(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  const Matrix& value() const { return node_->value; }
  Matrix& mutable_value() { return node_->value; }
  // Gradient, or a zero matrix of the value's shape if none has flowed.
  Matrix grad() const;
  bool requires_grad() const { return node_ && node_->requires_grad; }
  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  double scalar() const { return node_->value(0, 0); }
  void ZeroGrad() { node_->grad.resize(0, 0); }
  bool valid() const { return node_ != nullptr; }

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& shared() const { return node_; }

 private:
  std::shared_ptr<Node> node_;
};

// Leaf that receives gradients.
Var Parameter(Matrix value);
// Leaf that does not.
Var Constant(Matrix value);

// Entries drawn from N(0, stddev^2).
Matrix GaussianMatrix(Eigen::Index rows, Eigen::Index cols, double stddev,
                      std::mt19937_64& rng);

// Runs backpropagation from a 1x1 output.
void Backward(const Var& output);

// --- Ops. Shapes are checked with std::invalid_argument. ---
Var MatMul(const Var& a, const Var& b);
// Constant left factor; avoids materialising a node for fixed operators.
Var LeftMul(const Matrix& a, const Var& b);
Var Add(const Var& a, const Var& b);
Var Sub(const Var& a, const Var& b);
// a (n x d) + row (1 x d) broadcast over rows.
Var AddRow(const Var& a, const Var& row);
Var Scale(const Var& a, double s);
Var Mul(const Var& a, const Var& b);      // Elementwise.
Var Maximum(const Var& a, const Var& b);  // Elementwise; ties route to `a`.
Var Tanh(const Var& a);
Var Relu(const Var& a);
Var LeakyRelu(const Var& a, double slope = 0.2);
Var Sigmoid(const Var& a);
Var Transpose(const Var& a);
Var SoftmaxRows(const Var& a);
// Rows of `a` at `indices` (repeats allowed).
Var Rows(const Var& a, std::span<const int> indices);
// Mean of the rows at `indices`, as 1 x d.
Var MeanRows(const Var& a, std::span<const int> indices);
Var ConcatCols(std::span<const Var> parts);
Var ConcatRows(std::span<const Var> parts);
Var Sum(const Var& a);
// Per-row layer normalisation without affine terms.
Var LayerNormRows(const Var& a, double eps = 1e-5);
// Sum over entries of binary cross-entropy between sigmoid(logits) and
// `targets` in {0, 1}; computed from logits for stability. 1x1 output.
Var BceWithLogitsSum(const Var& logits, const Matrix& targets);
// -log softmax(logits)[target] for a 1 x k row.
Var SoftmaxCrossEntropy(const Var& logits, int target);

}  // namespace relgraph::nn

#endif  // RELGRAPH_TAPE_H_
