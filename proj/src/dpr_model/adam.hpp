//
// Copyright 2026 The PrivDPR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVDPR_DPR_MODEL_ADAM_HPP_
#define PRIVDPR_DPR_MODEL_ADAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dpr_model/theta.hpp"

namespace privdpr {

struct AdamHyperparameters {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moment accumulators for one group of parameter tensors. Shapes are fixed
// by the first step (or by the constructor) and checked afterwards.
class AdamState {
 public:
  AdamState() = default;
  explicit AdamState(AdamHyperparameters hp) : hp_(hp) {}

  const AdamHyperparameters& hyperparameters() const { return hp_; }
  std::uint64_t step() const { return step_; }
  const std::vector<Matrix>& first_moments() const { return m_; }
  const std::vector<Matrix>& second_moments() const { return v_; }

  // One bias-corrected Adam update of params in place.
  void Step(std::span<Matrix* const> params, std::span<const Matrix> grads,
            double learning_rate);

  void Write(std::ostream& out) const;
  static AdamState Read(std::istream& in);

  friend bool operator==(const AdamState& a, const AdamState& b);

 private:
  AdamHyperparameters hp_;
  std::uint64_t step_ = 0;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

}  // namespace privdpr

#endif  // PRIVDPR_DPR_MODEL_ADAM_HPP_
