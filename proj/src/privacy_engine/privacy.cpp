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

#include "privacy_engine/privacy.hpp"

#include <cmath>
#include <random>

#include "common/errors.hpp"

namespace privdpr {
namespace {

bool SatisfiesBound(double s_nabla, double bmt, double s, std::size_t layers) {
  return bmt * std::pow(1.0 / s, static_cast<double>(layers + 1)) <= s_nabla;
}

}  // namespace

double ComputeM(std::size_t num_nodes, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  }
  if (num_nodes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "M needs at least two nodes");
  }
  const double n = static_cast<double>(num_nodes);
  return (2.0 * (n - 1.0) * gamma * gamma + 2.0 * gamma +
          2.0 * gamma * (1.0 - gamma) / n) *
         (1.0 + 1.0 / gamma);
}

std::size_t MinLayers(double s_nabla, double batch_pairs, double m, double s,
                      std::size_t iterations) {
  if (!(s_nabla > 0.0 && batch_pairs > 0.0 && m > 0.0 && iterations >= 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "min_layers inputs must be positive");
  }
  if (!(s > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "s must be > 1");
  }
  const double bmt = batch_pairs * m * static_cast<double>(iterations);
  const double ratio = s_nabla / bmt;
  if (ratio >= 1.0) return 1;
  // log_{1/s}(ratio) - 1, then repaired against the inequality itself so
  // rounding in the logarithm cannot cost or gain a layer.
  const double estimate = std::log(ratio) / std::log(1.0 / s) - 1.0;
  auto layers = static_cast<std::size_t>(std::max(1.0, std::ceil(estimate)));
  while (!SatisfiesBound(s_nabla, bmt, s, layers)) ++layers;
  while (layers > 1 && SatisfiesBound(s_nabla, bmt, s, layers - 1)) --layers;
  return layers;
}

double NoiseSigma(double epsilon, double delta, std::size_t iterations) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) || iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "need epsilon > 0, 0 < delta < 1, T >= 1");
  }
  const double t = static_cast<double>(iterations);
  return std::sqrt(2.0 * std::log(1.25 / (delta / t))) / (epsilon / t);
}

Matrix PerturbGradient(const Matrix& sum_grad, double s_nabla, double sigma,
                       double batch_size, Rng& rng) {
  if (!(sigma >= 0.0) || !(batch_size > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sigma must be >= 0 and batch size > 0");
  }
  Matrix out = sum_grad;
  const double stddev = s_nabla * sigma;
  if (stddev > 0.0) {
    std::normal_distribution<double> noise(0.0, stddev);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) += noise(rng);
    }
  }
  out /= batch_size;
  return out;
}

PrivacySpec PrivacySpec::Derive(const PrivacyInputs& in) {
  PrivacySpec p;
  p.epsilon = in.epsilon;
  p.delta = in.delta;
  p.s = in.s;
  p.s_nabla = in.s_nabla;
  p.iterations = in.iterations;
  p.batch_pairs = in.batch_pairs;
  p.num_nodes = in.num_nodes;
  p.gamma = in.gamma;
  if (!(in.s_nabla > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "S_nabla must be > 0");
  }
  p.sigma = NoiseSigma(in.epsilon, in.delta, in.iterations);
  p.m = ComputeM(in.num_nodes, in.gamma);
  p.min_layers = MinLayers(in.s_nabla, static_cast<double>(in.batch_pairs),
                           p.m, in.s, in.iterations);
  const double t = static_cast<double>(in.iterations);
  p.epsilon_per_iteration = in.epsilon / t;
  p.delta_per_iteration = in.delta / t;
  if (p.epsilon_per_iteration >= 1.0) {
    p.warnings.push_back(
        "per-iteration epsilon " + std::to_string(p.epsilon_per_iteration) +
        " >= 1: outside the classical Gaussian mechanism regime");
  }
  return p;
}

double PrivacySpec::BatchSensitivityAt(std::size_t layers) const {
  return static_cast<double>(batch_pairs) * m *
         std::pow(1.0 / s, static_cast<double>(layers + 1));
}

}  // namespace privdpr
