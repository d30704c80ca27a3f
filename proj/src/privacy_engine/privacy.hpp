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

#ifndef PRIVDPR_PRIVACY_ENGINE_PRIVACY_HPP_
#define PRIVDPR_PRIVACY_ENGINE_PRIVACY_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "common/rng.hpp"
#include "dpr_model/theta.hpp"

namespace privdpr {

// Per-edge gradient bound constant
//   M = (2 (N - 1) gamma^2 + 2 gamma + 2 gamma (1 - gamma) / N) (1 + 1/gamma).
double ComputeM(std::size_t num_nodes, double gamma);

// Smallest L >= 1 with B * M * T * (1/s)^(L + 1) <= S_nabla.
std::size_t MinLayers(double s_nabla, double batch_pairs, double m, double s,
                      std::size_t iterations);

// sqrt(2 ln(1.25 / (delta / T))) / (epsilon / T), natural log.
double NoiseSigma(double epsilon, double delta, std::size_t iterations);

// (sum_grad + N(0, (S_nabla * sigma)^2 I)) / batch_size, noise on every
// entry of the full matrix.
Matrix PerturbGradient(const Matrix& sum_grad, double s_nabla, double sigma,
                       double batch_size, Rng& rng);

struct PrivacyInputs {
  double epsilon = 3.2;
  double delta = 1e-5;
  double s = 8.0;
  double s_nabla = 5.0;
  std::size_t iterations = 1;
  std::size_t batch_pairs = 1;  // B, the nominal walk-pair count
  std::size_t num_nodes = 2;
  double gamma = 0.85;
};

// All privacy quantities for one training run, derived once up front.
struct PrivacySpec {
  double epsilon = 0.0;
  double delta = 0.0;
  double s = 0.0;
  double s_nabla = 0.0;
  std::size_t iterations = 0;
  std::size_t batch_pairs = 0;
  std::size_t num_nodes = 0;
  double gamma = 0.0;
  double sigma = 0.0;
  double m = 0.0;
  std::size_t min_layers = 0;
  double epsilon_per_iteration = 0.0;
  double delta_per_iteration = 0.0;
  std::vector<std::string> warnings;

  // Validates the inputs and computes sigma, M and the minimum depth. Adds a
  // warning when epsilon / T >= 1, where the classical Gaussian mechanism
  // bound no longer applies; the formula is still used verbatim.
  static PrivacySpec Derive(const PrivacyInputs& in);

  // B * M * (1/s)^(L + 1): the bound on the summed batch gradient at depth L.
  double BatchSensitivityAt(std::size_t layers) const;
};

}  // namespace privdpr

#endif  // PRIVDPR_PRIVACY_ENGINE_PRIVACY_HPP_
