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

#include "trainer/score_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "common/binary_io.hpp"
#include "common/errors.hpp"

namespace privdpr {
namespace {

constexpr std::uint32_t kScoreMagic = 0x52435350;  // "PSCR"

}  // namespace

ScoreMatrix ScoreMatrix::FromDense(const Matrix& dense) {
  if (dense.rows() != dense.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "score matrix must be square");
  }
  ScoreMatrix s(static_cast<std::size_t>(dense.rows()));
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      const double v = dense(i, j);
      if (i == j) {
        if (v != 0.0) {
          throw Error(ErrorCode::kInvalidArgument,
                      "score matrix diagonal must be zero");
        }
        continue;
      }
      if (v != 0.0) s.Add(static_cast<NodeId>(i), static_cast<NodeId>(j), v);
    }
  }
  return s;
}

void ScoreMatrix::Add(NodeId from, NodeId to, double amount) {
  if (from >= rows_.size() || to >= rows_.size()) {
    throw Error(ErrorCode::kIndex, "score index out of range");
  }
  if (from == to) {
    throw Error(ErrorCode::kInvalidArgument, "score diagonal is fixed at zero");
  }
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw Error(ErrorCode::kInvalidArgument,
                "scores must be finite and nonnegative");
  }
  if (amount == 0.0) return;
  rows_[from][to] += amount;
}

double ScoreMatrix::at(NodeId from, NodeId to) const {
  const Row& r = rows_.at(from);
  const auto it = r.find(to);
  return it == r.end() ? 0.0 : it->second;
}

double ScoreMatrix::Total() const {
  double total = 0.0;
  for (const Row& r : rows_) {
    for (const auto& [to, v] : r) total += v;
  }
  return total;
}

std::size_t ScoreMatrix::NonZeros() const {
  std::size_t n = 0;
  for (const Row& r : rows_) n += r.size();
  return n;
}

Matrix ScoreMatrix::ToDense() const {
  const auto n = static_cast<Eigen::Index>(rows_.size());
  Matrix dense = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (const auto& [j, v] : rows_[i]) {
      dense(static_cast<Eigen::Index>(i), j) = v;
    }
  }
  return dense;
}

void ScoreMatrix::Write(std::ostream& out) const {
  BinaryWriter w(out);
  w.Put(kScoreMagic);
  w.Put<std::uint64_t>(rows_.size());
  w.Put<std::uint64_t>(NonZeros());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (const auto& [j, v] : rows_[i]) {
      w.Put<std::uint32_t>(static_cast<std::uint32_t>(i));
      w.Put<std::uint32_t>(j);
      w.Put<double>(v);
    }
  }
  w.Check();
}

ScoreMatrix ScoreMatrix::Read(std::istream& in) {
  BinaryReader r(in);
  if (r.Get<std::uint32_t>() != kScoreMagic) {
    throw Error(ErrorCode::kParse, "not a score matrix block");
  }
  const auto n = r.Get<std::uint64_t>();
  const auto nnz = r.Get<std::uint64_t>();
  if (n > (1ULL << 32)) throw Error(ErrorCode::kParse, "corrupt score matrix");
  ScoreMatrix s(static_cast<std::size_t>(n));
  for (std::uint64_t k = 0; k < nnz; ++k) {
    const auto i = r.Get<std::uint32_t>();
    const auto j = r.Get<std::uint32_t>();
    s.Add(i, j, r.Get<double>());
  }
  return s;
}

void AccumulateScores(const Matrix& embeddings, std::span<const NodeId> starts,
                      std::size_t walk_length, double temperature,
                      ScoreMatrix& scores, Rng& rng) {
  const auto n = embeddings.rows();
  if (static_cast<std::size_t>(n) != scores.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding rows and score matrix size differ");
  }
  if (!(temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be > 0");
  }
  if (n < 2) return;
  Vector logits(n);
  std::vector<double> cumulative(static_cast<std::size_t>(n));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (NodeId start : starts) {
    if (start >= n) throw Error(ErrorCode::kIndex, "start node out of range");
    NodeId current = start;
    for (std::size_t step = 1; step < walk_length; ++step) {
      logits.noalias() = embeddings * embeddings.row(current).transpose();
      logits /= temperature;
      logits[current] = -std::numeric_limits<double>::infinity();
      const double peak = logits.maxCoeff();
      double total = 0.0;
      for (Eigen::Index w = 0; w < n; ++w) {
        total += w == current ? 0.0 : std::exp(logits[w] - peak);
        cumulative[static_cast<std::size_t>(w)] = total;
      }
      const double target = unit(rng) * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
      auto next = static_cast<NodeId>(
          std::min<std::ptrdiff_t>(it - cumulative.begin(), n - 1));
      // Landing on the masked diagonal is only possible through rounding at
      // the boundary; step to the nearest admissible neighbour.
      if (next == current) next = current == 0 ? 1 : current - 1;
      scores.Add(current, next);
      current = next;
    }
  }
}

}  // namespace privdpr
