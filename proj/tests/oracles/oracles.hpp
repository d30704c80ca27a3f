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

// Slow, direct reference implementations used to check the library.
// Nothing here calls the code under test except for plain data types.

#ifndef PRIVDPR_TESTS_ORACLES_ORACLES_HPP_
#define PRIVDPR_TESTS_ORACLES_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "dpr_model/theta.hpp"
#include "graph_core/graph.hpp"

namespace privdpr::oracle {

// Largest singular value by one-sided Jacobi rotations: columns are
// orthogonalized pairwise until converged; their norms are then the
// singular values.
inline double JacobiLargestSingularValue(const Matrix& a) {
  Eigen::MatrixXd u = a;
  if (u.cols() > u.rows()) u.transposeInPlace();
  const Eigen::Index n = u.cols();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = u.col(p).squaredNorm();
        const double beta = u.col(q).squaredNorm();
        const double gamma = u.col(p).dot(u.col(q));
        if (gamma == 0.0) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
          const double up = u(i, p), uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
      }
    }
    if (off < 1e-15) break;
  }
  double best = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) best = std::max(best, u.col(j).norm());
  return best;
}

// Fixed number of power-iteration steps with dangling mass spread evenly.
inline std::vector<double> PowerIterationPageRank(const Graph& g, double gamma,
                                                  int steps = 100) {
  const std::size_t n = g.num_nodes();
  std::vector<double> x(n, 1.0 / n);
  for (int k = 0; k < steps; ++k) {
    std::vector<double> next(n, (1.0 - gamma) / n);
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      const auto out = g.successors(u);
      if (out.empty()) {
        dangling += x[u];
        continue;
      }
      for (NodeId v : out) next[v] += gamma * x[u] / out.size();
    }
    for (double& v : next) v += gamma * dangling / n;
    x = next;
  }
  return x;
}

inline double Activate(Activation a, double z) {
  switch (a) {
    case Activation::kSigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::kRelu:
      return z > 0 ? z : 0.0;
    case Activation::kLeakyRelu:
      return z > 0 ? z : 0.01 * z;
  }
  return z;
}

// Scalar loops over one embedding row.
inline double ScalarChainForward(const Theta& theta, NodeId node) {
  std::vector<double> h(theta.embeddings.cols());
  for (Eigen::Index k = 0; k < theta.embeddings.cols(); ++k) {
    h[k] = theta.embeddings(node, k);
  }
  for (const Matrix& w : theta.weights) {
    std::vector<double> next(w.cols(), 0.0);
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      double z = 0.0;
      for (Eigen::Index i = 0; i < w.rows(); ++i) z += h[i] * w(i, j);
      next[j] = Activate(theta.activation, z);
    }
    h = next;
  }
  return h[0];
}

// Per-edge loss written as a single square:
//   d_in * (gamma * f_i / d_out - f_j / d_in + (1 - gamma) / (d_in * N))^2.
inline double EdgeLossSquareForm(double f_i, double f_j, double d_out,
                                 double d_in, double gamma, double n) {
  const double r = gamma * f_i / d_out - f_j / d_in + (1.0 - gamma) / (d_in * n);
  return d_in * r * r;
}

struct BruteStats {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  std::uint64_t claws = 0;
  std::optional<double> rede;
  std::optional<double> cpl;
  std::optional<std::uint64_t> diameter;
  std::size_t lcc = 0;
  std::vector<std::size_t> degrees;
};

// Adjacency-matrix enumeration of triples, Floyd-Warshall distances and
// union-find components.
inline BruteStats BruteForceStats(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (const Edge& e : g.edges()) {
    if (e.src != e.dst) a[e.src][e.dst] = a[e.dst][e.src] = 1;
  }
  BruteStats out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (a[i][j] && a[j][k] && a[i][k]) ++out.triangles;
      }
    }
  }
  // Wedges: center c with an unordered pair of neighbours. Claws: center c
  // with an unordered triple of neighbours.
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        if (!a[c][x] || !a[c][y]) continue;
        ++out.wedges;
        for (std::size_t z = y + 1; z < n; ++z) {
          if (a[c][z]) ++out.claws;
        }
      }
    }
  }
  std::size_t degree_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n; ++j) d += a[i][j];
    out.degrees.push_back(d);
    degree_total += d;
  }
  std::sort(out.degrees.begin(), out.degrees.end());
  if (degree_total > 0 && n > 1) {
    double h = 0.0;
    for (std::size_t d : out.degrees) {
      if (d == 0) continue;
      const double p = static_cast<double>(d) / degree_total;
      h -= p * std::log(p);
    }
    out.rede = h / std::log(static_cast<double>(n));
  }

  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) parent[find(i)] = find(j);
    }
  }
  // Largest component; ties go to the one containing the smallest node.
  std::vector<std::size_t> size(n, 0), smallest(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ++size[find(i)];
    smallest[find(i)] = std::min(smallest[find(i)], i);
  }
  std::size_t root = n;
  for (std::size_t r = 0; r < n; ++r) {
    if (size[r] == 0) continue;
    if (root == n || size[r] > size[root] ||
        (size[r] == size[root] && smallest[r] < smallest[root])) {
      root = r;
    }
  }
  out.lcc = root == n ? 0 : size[root];
  if (out.lcc >= 2) {
    const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max() / 4;
    std::vector<std::vector<std::uint64_t>> d(
        n, std::vector<std::uint64_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) {
      d[i][i] = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (a[i][j]) d[i][j] = 1;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
      }
    }
    std::uint64_t total = 0, diameter = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || find(i) != root || find(j) != root) continue;
        total += d[i][j];
        diameter = std::max(diameter, d[i][j]);
      }
    }
    out.cpl = static_cast<double>(total) /
              (static_cast<double>(out.lcc) * (out.lcc - 1));
    out.diameter = diameter;
  }
  return out;
}

// Tabulates both empirical CDFs at every integer from 0 to the largest
// value and returns the largest gap.
inline double HandCdfKs(const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b) {
  std::size_t top = 0;
  for (std::size_t x : a) top = std::max(top, x);
  for (std::size_t x : b) top = std::max(top, x);
  double best = 0.0;
  for (std::size_t t = 0; t <= top; ++t) {
    double fa = 0, fb = 0;
    for (std::size_t x : a) fa += x <= t;
    for (std::size_t x : b) fb += x <= t;
    best = std::max(best, std::abs(fa / a.size() - fb / b.size()));
  }
  return best;
}

inline Graph RandomGraph(std::size_t n, double p, std::mt19937_64& rng,
                         bool directed) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = directed ? 0 : i + 1; j < n; ++j) {
      if (i != j && coin(rng)) edges.push_back({i, j});
    }
  }
  return directed ? Graph::FromEdges(n, edges)
                  : Graph::FromUndirectedEdges(n, edges);
}

}  // namespace privdpr::oracle

#endif  // PRIVDPR_TESTS_ORACLES_ORACLES_HPP_
