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

#ifndef PRIVDPR_DPR_MODEL_SPECTRAL_HPP_
#define PRIVDPR_DPR_MODEL_SPECTRAL_HPP_

#include <cstddef>

#include "common/rng.hpp"
#include "dpr_model/theta.hpp"

namespace privdpr {

inline constexpr std::size_t kDefaultPowerIterations = 50;
inline constexpr double kDefaultPowerTolerance = 1e-9;

// Largest singular value by power iteration on W^T W. Stops after max_iters
// or when the estimate changes by less than tol (relative). When warm_start
// is non-null and sized W.cols(), it seeds the iteration and receives the
// final right singular vector. Returns 0 for an all-zero matrix.
double SpectralNorm(const Matrix& w, std::size_t max_iters, double tol,
                    Rng& rng, Vector* warm_start = nullptr);

// W / (s * ||W||_2). The result has spectral norm 1/s. Throws for s <= 1 or
// an all-zero W. The overload without state runs the power iteration to
// full convergence.
Matrix WeightNormalize(const Matrix& w, double s);
Matrix WeightNormalize(const Matrix& w, double s, std::size_t max_iters,
                       double tol, Rng& rng, Vector* warm_start);

}  // namespace privdpr

#endif  // PRIVDPR_DPR_MODEL_SPECTRAL_HPP_
