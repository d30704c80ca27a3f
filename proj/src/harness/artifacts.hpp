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

#ifndef PRIVDPR_HARNESS_ARTIFACTS_HPP_
#define PRIVDPR_HARNESS_ARTIFACTS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dpr_model/theta.hpp"
#include "evaluation/stats.hpp"
#include "json.hpp"
#include "privacy_engine/ledger.hpp"
#include "privacy_engine/privacy.hpp"

namespace privdpr {

inline constexpr const char* kCodeVersion = "0.1.0";

nlohmann::json ToJson(const PrivacySpec& spec);
nlohmann::json ToJson(const PrivacyLedger& ledger);
nlohmann::json ToJson(const GraphStats& stats);

// Pretty-printed with a trailing newline. Keys are sorted, so equal documents
// give byte-equal files.
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

// Text matrix: a "# rows: N cols: r" line, then one tab-separated row per
// node with round-trip precision.
void WriteEmbeddings(const std::filesystem::path& path, const Matrix& m);
Matrix ReadEmbeddings(const std::filesystem::path& path);

// Per-node class ids from a file whose lines start with an original node id
// and end with a class name (a two-column list or a bag-of-words content
// file). Class names are numbered in sorted order; nodes without a line get
// -1.
std::vector<int> ReadLabels(const std::filesystem::path& path,
                            const std::vector<std::int64_t>& original_ids);

// Shortest round-trip decimal form, used for directory names and CSV cells.
std::string FormatDouble(double value);

}  // namespace privdpr

#endif  // PRIVDPR_HARNESS_ARTIFACTS_HPP_
