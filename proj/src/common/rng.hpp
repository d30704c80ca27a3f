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

#ifndef PRIVDPR_COMMON_RNG_HPP_
#define PRIVDPR_COMMON_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace privdpr {

using Rng = std::mt19937_64;

// Independent random streams split from a master seed.
enum class StreamPurpose : std::uint64_t {
  kInit = 1,
  kShuffle = 2,
  kWalks = 3,
  kNoise = 4,
  kScores = 5,
  kSynthesis = 6,
  kEvaluation = 7,
  kRun = 8,
  kSpectral = 9,
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable hash of (master, purpose, indices...). Depends only on the values,
// never on call order, so sub-seeds are reproducible across thread counts.
inline std::uint64_t DeriveSeed(std::uint64_t master, StreamPurpose purpose,
                                std::initializer_list<std::uint64_t> indices =
                                    {}) {
  std::uint64_t h = SplitMix64(master ^ 0x5bd1e9955bd1e995ULL);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(purpose));
  for (std::uint64_t index : indices) h = SplitMix64(h ^ index);
  return h;
}

inline Rng MakeRng(std::uint64_t master, StreamPurpose purpose,
                   std::initializer_list<std::uint64_t> indices = {}) {
  return Rng(DeriveSeed(master, purpose, indices));
}

}  // namespace privdpr

#endif  // PRIVDPR_COMMON_RNG_HPP_
