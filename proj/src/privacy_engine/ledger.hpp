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

#ifndef PRIVDPR_PRIVACY_ENGINE_LEDGER_HPP_
#define PRIVDPR_PRIVACY_ENGINE_LEDGER_HPP_

#include <cstddef>
#include <vector>

namespace privdpr {

struct LedgerEntry {
  double epsilon = 0.0;
  double delta = 0.0;

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

// Sequential-composition record of the per-iteration budgets spent by one
// run. Recording beyond the declared iteration count or beyond the total
// budget throws a privacy overdraft error. Single writer.
class PrivacyLedger {
 public:
  PrivacyLedger() = default;
  PrivacyLedger(double epsilon, double delta, std::size_t iterations);

  void Record(double epsilon, double delta);
  // Records one evenly split share (epsilon / T, delta / T).
  void RecordIteration();

  // Checks that all T iterations were recorded and that the totals equal
  // (epsilon, delta) within 1e-12 relative. Throws on failure.
  void Verify() const;

  double budget_epsilon() const { return epsilon_; }
  double budget_delta() const { return delta_; }
  std::size_t iterations() const { return iterations_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  double spent_epsilon() const { return spent_epsilon_ + comp_epsilon_; }
  double spent_delta() const { return spent_delta_ + comp_delta_; }

  friend bool operator==(const PrivacyLedger&, const PrivacyLedger&) = default;

 private:
  double epsilon_ = 0.0;
  double delta_ = 0.0;
  std::size_t iterations_ = 0;
  std::vector<LedgerEntry> entries_;
  // Neumaier-compensated running totals.
  double spent_epsilon_ = 0.0;
  double comp_epsilon_ = 0.0;
  double spent_delta_ = 0.0;
  double comp_delta_ = 0.0;
};

}  // namespace privdpr

#endif  // PRIVDPR_PRIVACY_ENGINE_LEDGER_HPP_
