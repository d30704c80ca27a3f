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

#include "dpr_model/adam.hpp"

#include <cmath>

#include "common/binary_io.hpp"
#include "common/errors.hpp"

namespace privdpr {

void AdamState::Step(std::span<Matrix* const> params,
                     std::span<const Matrix> grads, double learning_rate) {
  if (params.size() != grads.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "parameter and gradient counts differ");
  }
  if (m_.empty()) {
    for (const Matrix* p : params) {
      m_.push_back(Matrix::Zero(p->rows(), p->cols()));
      v_.push_back(Matrix::Zero(p->rows(), p->cols()));
    }
  }
  if (m_.size() != params.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "parameter count changed between steps");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    const Matrix& p = *params[k];
    if (p.rows() != grads[k].rows() || p.cols() != grads[k].cols() ||
        p.rows() != m_[k].rows() || p.cols() != m_[k].cols()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "shape mismatch in tensor " + std::to_string(k));
    }
  }

  ++step_;
  const double t = static_cast<double>(step_);
  const double correction1 = 1.0 - std::pow(hp_.beta1, t);
  const double correction2 = 1.0 - std::pow(hp_.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    m_[k] = hp_.beta1 * m_[k] + (1.0 - hp_.beta1) * grads[k];
    v_[k] = hp_.beta2 * v_[k] +
            (1.0 - hp_.beta2) * grads[k].cwiseProduct(grads[k]);
    params[k]->array() -=
        learning_rate * (m_[k].array() / correction1) /
        ((v_[k].array() / correction2).sqrt() + hp_.epsilon);
  }
}

void AdamState::Write(std::ostream& out) const {
  BinaryWriter w(out);
  w.Put(hp_.beta1);
  w.Put(hp_.beta2);
  w.Put(hp_.epsilon);
  w.Put(step_);
  w.Put<std::uint64_t>(m_.size());
  for (std::size_t k = 0; k < m_.size(); ++k) {
    w.PutMatrix(m_[k]);
    w.PutMatrix(v_[k]);
  }
  w.Check();
}

AdamState AdamState::Read(std::istream& in) {
  BinaryReader r(in);
  AdamState s;
  s.hp_.beta1 = r.Get<double>();
  s.hp_.beta2 = r.Get<double>();
  s.hp_.epsilon = r.Get<double>();
  s.step_ = r.Get<std::uint64_t>();
  const auto count = r.Get<std::uint64_t>();
  if (count > 4096) throw Error(ErrorCode::kParse, "bad tensor count");
  for (std::uint64_t k = 0; k < count; ++k) {
    s.m_.push_back(r.GetMatrix<Matrix>());
    s.v_.push_back(r.GetMatrix<Matrix>());
  }
  return s;
}

bool operator==(const AdamState& a, const AdamState& b) {
  if (a.step_ != b.step_ || a.m_.size() != b.m_.size() ||
      a.hp_.beta1 != b.hp_.beta1 || a.hp_.beta2 != b.hp_.beta2 ||
      a.hp_.epsilon != b.hp_.epsilon) {
    return false;
  }
  for (std::size_t k = 0; k < a.m_.size(); ++k) {
    if (!SameMatrix(a.m_[k], b.m_[k]) || !SameMatrix(a.v_[k], b.v_[k])) {
      return false;
    }
  }
  return true;
}

}  // namespace privdpr
