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

#include "common/errors.hpp"

namespace privdpr {
namespace {

std::string JoinProblems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration";
  for (const auto& p : problems) {
    out += "\n  - ";
    out += p;
  }
  return out;
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kIndex:
      return "index";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kValidation:
      return "validation";
    case ErrorCode::kContractViolation:
      return "contract_violation";
    case ErrorCode::kDegenerate:
      return "degenerate";
    case ErrorCode::kNonConvergence:
      return "non_convergence";
    case ErrorCode::kNonFinite:
      return "non_finite";
    case ErrorCode::kPrivacyOverdraft:
      return "privacy_overdraft";
    case ErrorCode::kUndefinedMetric:
      return "undefined_metric";
  }
  return "unknown";
}

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(ErrorCode::kValidation, JoinProblems(problems)),
      problems_(std::move(problems)) {}

}  // namespace privdpr
