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

#ifndef RELGRAPH_OPTIMIZER_H_
#define RELGRAPH_OPTIMIZER_H_

#include <map>
#include <string>
#include <vector>

#include "relgraph/tape.h"

namespace relgraph::nn {

// Parameter groups share a learning rate.
enum class ParamGroup { kEncoder = 0, kHead = 1 };

// Named, ordered collection of trainable leaves.
class ParameterStore {
 public:
  struct Entry {
    std::string name;
    Var var;
    ParamGroup group;
  };

  // Throws std::invalid_argument on duplicate names.
  Var Add(const std::string& name, Matrix init, ParamGroup group);
  Var Get(const std::string& name) const;
  bool Contains(const std::string& name) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t ScalarCount() const;
  void ZeroGrad();
  // Global L2 norm of all gradients.
  double GradNorm() const;
  bool AllFinite() const;

  std::vector<Matrix> Snapshot() const;
  void Restore(const std::vector<Matrix>& values);

  // Little-endian binary blob; each entry stores its name, shape and values.
  std::string Serialize() const;
  // Values are matched by name; shapes must agree.
  void Deserialize(const std::string& blob);

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
  // Rescale gradients whose global norm exceeds this; <= 0 disables.
  double clip_norm = 1.0;
};

class Adam {
 public:
  Adam(ParameterStore& store, double encoder_lr, double head_lr,
       AdamOptions options = {});
  // Applies one update from the accumulated gradients, then zeroes them.
  void Step();
  int steps() const { return step_; }

 private:
  ParameterStore& store_;
  double lr_[2];
  AdamOptions options_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  int step_ = 0;
};

}  // namespace relgraph::nn

#endif  // RELGRAPH_OPTIMIZER_H_
