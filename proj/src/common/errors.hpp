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

#ifndef PRIVDPR_COMMON_ERRORS_HPP_
#define PRIVDPR_COMMON_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace privdpr {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kIndex,
  kIo,
  kValidation,
  kContractViolation,
  kDegenerate,
  kNonConvergence,
  kNonFinite,
  kPrivacyOverdraft,
  kUndefinedMetric,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, double residual)
      : Error(ErrorCode::kNonConvergence,
              message + " (last residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

// Collects every problem found while validating a configuration so they can
// be reported together before any work starts.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace privdpr

#endif  // PRIVDPR_COMMON_ERRORS_HPP_
