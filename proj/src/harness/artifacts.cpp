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

#include "harness/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "common/errors.hpp"

namespace privdpr {

using nlohmann::json;

json ToJson(const PrivacySpec& spec) {
  return {{"epsilon", spec.epsilon},
          {"delta", spec.delta},
          {"s", spec.s},
          {"s_nabla", spec.s_nabla},
          {"iterations", spec.iterations},
          {"batch_pairs", spec.batch_pairs},
          {"num_nodes", spec.num_nodes},
          {"gamma", spec.gamma},
          {"sigma", spec.sigma},
          {"m", spec.m},
          {"min_layers", spec.min_layers},
          {"epsilon_per_iteration", spec.epsilon_per_iteration},
          {"delta_per_iteration", spec.delta_per_iteration},
          {"warnings", spec.warnings}};
}

json ToJson(const PrivacyLedger& ledger) {
  json entries = json::array();
  for (const LedgerEntry& e : ledger.entries()) {
    entries.push_back({e.epsilon, e.delta});
  }
  return {{"budget_epsilon", ledger.budget_epsilon()},
          {"budget_delta", ledger.budget_delta()},
          {"iterations", ledger.iterations()},
          {"recorded", ledger.entries().size()},
          {"spent_epsilon", ledger.spent_epsilon()},
          {"spent_delta", ledger.spent_delta()},
          {"entries", entries}};
}

json ToJson(const GraphStats& stats) {
  json doc;
  for (Metric m : kAllMetrics) {
    std::optional<double> v = MetricValue(stats, m);
    doc[MetricName(m)] = v ? json(*v) : json();
  }
  return doc;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

void WriteJsonFile(const std::filesystem::path& path, const json& doc) {
  WriteTextFile(path, doc.dump(2) + "\n");
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void WriteEmbeddings(const std::filesystem::path& path, const Matrix& m) {
  std::ostringstream out;
  out << "# rows: " << m.rows() << " cols: " << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << '\t';
      out << FormatDouble(m(i, j));
    }
    out << '\n';
  }
  WriteTextFile(path, out.str());
}

Matrix ReadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  long rows = 0, cols = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# rows: %ld cols: %ld", &rows, &cols) != 2 ||
      rows < 0 || cols < 0) {
    throw ParseError(1, "missing embedding header in " + path.string());
  }
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(i + 2, "truncated embedding file " + path.string());
    }
    std::istringstream fields(line);
    for (long j = 0; j < cols; ++j) {
      if (!(fields >> m(i, j))) {
        throw ParseError(i + 2, "expected " + std::to_string(cols) + " values");
      }
    }
  }
  return m;
}

std::vector<int> ReadLabels(const std::filesystem::path& path,
                            const std::vector<std::int64_t>& original_ids) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::map<std::int64_t, std::string> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string first, token, last;
    if (!(fields >> first) || first[0] == '#') continue;
    while (fields >> token) last = token;
    if (last.empty()) throw ParseError(line_no, "expected an id and a label");
    std::int64_t id = 0;
    auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), id);
    if (ec != std::errc() || ptr != first.data() + first.size()) {
      if (line_no == 1) continue;  // header row
      throw ParseError(line_no, "invalid node id '" + first + "'");
    }
    by_id[id] = last;
  }
  std::map<std::string, int> classes;
  for (const auto& [id, name] : by_id) classes.emplace(name, 0);
  int next = 0;
  for (auto& [name, index] : classes) index = next++;
  std::vector<int> labels(original_ids.size(), -1);
  for (std::size_t k = 0; k < original_ids.size(); ++k) {
    auto it = by_id.find(original_ids[k]);
    if (it != by_id.end()) labels[k] = classes.at(it->second);
  }
  return labels;
}

}  // namespace privdpr
