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

#ifndef PRIVDPR_COMMON_BINARY_IO_HPP_
#define PRIVDPR_COMMON_BINARY_IO_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "common/errors.hpp"

namespace privdpr {

// Raw host-order (little-endian on every supported target) binary helpers
// for checkpoints. Doubles are written bit-for-bit so round trips are exact.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  void Put(T value) {
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  void PutString(const std::string& s) {
    Put<std::uint64_t>(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

  template <typename Derived>
  void PutMatrix(const Eigen::DenseBase<Derived>& m) {
    Put<std::uint64_t>(static_cast<std::uint64_t>(m.rows()));
    Put<std::uint64_t>(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) Put<double>(m(r, c));
    }
  }

  void Check() const {
    if (!out_) throw Error(ErrorCode::kIo, "binary write failed");
  }

 private:
  std::ostream& out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  T Get() {
    T value{};
    in_.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in_) throw Error(ErrorCode::kParse, "truncated binary stream");
    return value;
  }

  std::string GetString() {
    const auto n = Get<std::uint64_t>();
    if (n > (1ULL << 32)) throw Error(ErrorCode::kParse, "corrupt string");
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (!in_) throw Error(ErrorCode::kParse, "truncated binary stream");
    return s;
  }

  template <typename MatrixT>
  MatrixT GetMatrix() {
    const auto rows = Get<std::uint64_t>();
    const auto cols = Get<std::uint64_t>();
    if (rows > (1ULL << 32) || cols > (1ULL << 32)) {
      throw Error(ErrorCode::kParse, "corrupt matrix shape");
    }
    MatrixT m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Get<double>();
    }
    return m;
  }

 private:
  std::istream& in_;
};

}  // namespace privdpr

#endif  // PRIVDPR_COMMON_BINARY_IO_HPP_
