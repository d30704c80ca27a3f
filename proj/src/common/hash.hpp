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

#ifndef PRIVDPR_COMMON_HASH_HPP_
#define PRIVDPR_COMMON_HASH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace privdpr {

// 64-bit FNV-1a, used for manifest content fingerprints.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string HashFileHex(const std::filesystem::path& path);

std::string ToHex(std::uint64_t value);

}  // namespace privdpr

#endif  // PRIVDPR_COMMON_HASH_HPP_
