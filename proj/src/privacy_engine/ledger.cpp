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

#include "privacy_engine/ledger.hpp"

#include <cmath>
#include <string>

#include "common/errors.hpp"

namespace privdpr {
namespace {

constexpr double kRelativeSlack = 1e-12;

void CompensatedAdd(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

}  // namespace

PrivacyLedger::PrivacyLedger(double epsilon, double delta,
                             std::size_t iterations)
    : epsilon_(epsilon), delta_(delta), iterations_(iterations) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) || iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid ledger budget");
  }
  entries_.reserve(iterations);
}

void PrivacyLedger::Record(double epsilon, double delta) {
  if (entries_.size() >= iterations_) {
    throw Error(ErrorCode::kPrivacyOverdraft,
                "iteration " + std::to_string(entries_.size() + 1) +
                    " exceeds the fixed iteration count " +
                    std::to_string(iterations_));
  }
  if (!(epsilon >= 0.0) || !(delta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "negative privacy spend");
  }
  double eps_sum = spent_epsilon_, eps_comp = comp_epsilon_;
  double del_sum = spent_delta_, del_comp = comp_delta_;
  CompensatedAdd(eps_sum, eps_comp, epsilon);
  CompensatedAdd(del_sum, del_comp, delta);
  if (eps_sum + eps_comp > epsilon_ * (1.0 + kRelativeSlack) ||
      del_sum + del_comp > delta_ * (1.0 + kRelativeSlack)) {
    throw Error(ErrorCode::kPrivacyOverdraft,
                "recording (" + std::to_string(epsilon) + ", " +
                    std::to_string(delta) + ") exceeds the total budget");
  }
  spent_epsilon_ = eps_sum;
  comp_epsilon_ = eps_comp;
  spent_delta_ = del_sum;
  comp_delta_ = del_comp;
  entries_.push_back({epsilon, delta});
}

void PrivacyLedger::RecordIteration() {
  const double t = static_cast<double>(iterations_);
  Record(epsilon_ / t, delta_ / t);
}

void PrivacyLedger::Verify() const {
  if (entries_.size() != iterations_) {
    throw Error(ErrorCode::kValidation,
                "ledger holds " + std::to_string(entries_.size()) +
                    " entries, expected " + std::to_string(iterations_));
  }
  const double eps = spent_epsilon_ + comp_epsilon_;
  const double del = spent_delta_ + comp_delta_;
  if (std::abs(eps - epsilon_) > kRelativeSlack * epsilon_ ||
      std::abs(del - delta_) > kRelativeSlack * delta_) {
    throw Error(ErrorCode::kValidation,
                "ledger totals do not match the declared budget");
  }
}

}  // namespace privdpr
