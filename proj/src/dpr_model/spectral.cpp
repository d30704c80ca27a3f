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

#include "dpr_model/spectral.hpp"

#include <cmath>
#include <random>

#include "common/errors.hpp"

namespace privdpr {

double SpectralNorm(const Matrix& w, std::size_t max_iters, double tol,
                    Rng& rng, Vector* warm_start) {
  if (w.size() == 0 || w.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Vector v;
  if (warm_start != nullptr && warm_start->size() == w.cols() &&
      warm_start->norm() > 0.0) {
    v = *warm_start;
  } else {
    std::normal_distribution<double> normal;
    v.resize(w.cols());
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = normal(rng);
  }
  v.normalize();

  double sigma = 0.0;
  for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iters, 1);
       ++iter) {
    Vector u = w * v;
    double u_norm = u.norm();
    if (u_norm == 0.0) {
      // v landed in the null space; restart from a deterministic direction.
      v = w.row(0).transpose();
      for (Eigen::Index r = 1; r < w.rows() && v.norm() == 0.0; ++r) {
        v = w.row(r).transpose();
      }
      v.normalize();
      continue;
    }
    u /= u_norm;
    v = w.transpose() * u;
    const double next = v.norm();
    v /= next;
    const bool converged =
        iter > 0 && std::abs(next - sigma) <= tol * next;
    sigma = next;
    if (converged) break;
  }
  if (warm_start != nullptr) *warm_start = v;
  return sigma;
}

Matrix WeightNormalize(const Matrix& w, double s) {
  Rng rng(0x5eed);
  return WeightNormalize(w, s, 10000, 1e-14, rng, nullptr);
}

Matrix WeightNormalize(const Matrix& w, double s, std::size_t max_iters,
                       double tol, Rng& rng, Vector* warm_start) {
  if (!(s > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "normalization scale s must be > 1");
  }
  const double sigma = SpectralNorm(w, max_iters, tol, rng, warm_start);
  if (sigma == 0.0) {
    throw Error(ErrorCode::kDegenerate,
                "cannot normalize an all-zero weight matrix");
  }
  return w / (s * sigma);
}

}  // namespace privdpr
