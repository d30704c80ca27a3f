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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <tuple>
#include <sstream>

#include "common/errors.hpp"
#include "common/hash.hpp"
#include "graph_core/edge_list_io.hpp"
#include "harness/artifacts.hpp"
#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "oracles/oracles.hpp"

namespace privdpr {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class HarnessTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("privdpr_harness_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::mt19937_64 rng(1);
    const Graph g = oracle::RandomGraph(40, 0.12, rng, false);
    std::ofstream out(dir_ / "graph.tsv");
    for (const Edge& e : g.edges()) {
      if (e.src < e.dst) out << e.src + 100 << '\t' << e.dst + 100 << '\n';
    }
    std::ofstream labels(dir_ / "labels.csv");
    for (int v = 0; v < 40; ++v) labels << v + 100 << ",class_" << v % 3 << '\n';
  }
  void TearDown() override { fs::remove_all(dir_); }

  json SmallConfigDoc(std::vector<double> epsilons, int runs) const {
    return {{"dataset", {{"edges", "graph.tsv"}, {"labels", "labels.csv"}}},
            {"train",
             {{"epochs", 2},
              {"batch_nodes", 8},
              {"walk_length", 5},
              {"embedding_dim", 8},
              {"hidden_dim", 4}}},
            {"privacy", {{"epsilons", epsilons}}},
            {"runs", runs},
            {"output_dir", "out"},
            {"master_seed", 42}};
  }

  ExperimentConfig SmallConfig(std::vector<double> epsilons, int runs) const {
    return ParseExperimentConfig(SmallConfigDoc(epsilons, runs), dir_);
  }

  fs::path dir_;
};

TEST_F(HarnessTest, EmptyOverridesKeepReferenceDefaults) {
  const ExperimentConfig cfg =
      ParseExperimentConfig(json{{"dataset", {{"edges", "graph.tsv"}}}}, dir_);
  const TrainConfig defaults;
  EXPECT_EQ(ToJson(cfg.train), ToJson(defaults));
  EXPECT_EQ(cfg.epsilons, std::vector<double>{3.2});
  EXPECT_EQ(cfg.runs, 5u);
  EXPECT_EQ(cfg.dataset.edges, dir_ / "graph.tsv");
  EXPECT_NO_THROW(cfg.Validate());
}

TEST_F(HarnessTest, ValidationEnumeratesEveryProblem) {
  json doc = SmallConfigDoc({}, 0);
  doc["dataset"]["edges"] = "missing.tsv";
  doc["train"]["gamma"] = 2.0;
  doc["privacy"]["s"] = 1.0;
  const ExperimentConfig cfg = ParseExperimentConfig(doc, dir_);
  try {
    cfg.Validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_GE(e.problems().size(), 5u) << e.what();
  }
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(HarnessTest, UnknownKeysAndBadTypesAreRejectedTogether) {
  json doc = SmallConfigDoc({1.0}, 1);
  doc["trian"] = json::object();
  doc["train"]["epochs"] = "five";
  try {
    ParseExperimentConfig(doc, dir_);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.problems().size(), 2u) << e.what();
  }
}

TEST_F(HarnessTest, InfeasibleTargetIsCaughtBeforeTraining) {
  ExperimentConfig cfg = SmallConfig({1.0}, 1);
  cfg.target_edges = 3;
  EXPECT_THROW(RunSynth(cfg), ValidationError);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "manifest.json"));
}

TEST_F(HarnessTest, SynthWritesCrossProductAndReproduces) {
  ExperimentConfig cfg = SmallConfig({0.1, 3.2}, 2);
  RunSynth(cfg);
  const json manifest = ReadJsonFile(dir_ / "out" / "manifest.json");
  ASSERT_EQ(manifest.at("runs").size(), 4u);
  std::set<std::uint64_t> seeds;
  for (const json& run : manifest.at("runs")) {
    const fs::path run_dir = dir_ / "out" / run.at("dir").get<std::string>();
    for (const char* f : {"synthetic.edges", "ledger.json", "synthetic.json",
                          "embeddings.tsv", "checkpoints/checkpoint_epoch_2.bin"}) {
      EXPECT_TRUE(fs::exists(run_dir / f)) << run_dir / f;
    }
    EXPECT_EQ(run.at("files").at("synthetic.edges").get<std::string>(),
              HashFileHex(run_dir / "synthetic.edges"));
    seeds.insert(run.at("seed").get<std::uint64_t>());
    const json ledger = ReadJsonFile(run_dir / "ledger.json");
    EXPECT_EQ(ledger.at("recorded"), ledger.at("iterations"));
  }
  EXPECT_EQ(seeds.size(), 4u);

  cfg.output_dir = dir_ / "again";
  cfg.threads = 3;
  RunSynth(cfg);
  EXPECT_EQ(Slurp(dir_ / "out" / "manifest.json"), Slurp(dir_ / "again" / "manifest.json"));
  EXPECT_EQ(Slurp(dir_ / "out" / "eps_0.1" / "run_1" / "synthetic.edges"),
            Slurp(dir_ / "again" / "eps_0.1" / "run_1" / "synthetic.edges"));
}

TEST_F(HarnessTest, ResumeReproducesTheSameOutputs) {
  ExperimentConfig cfg = SmallConfig({1.0}, 1);
  RunSynth(cfg);
  const std::string first = Slurp(dir_ / "out" / "manifest.json");
  fs::remove(dir_ / "out" / "eps_1" / "run_0" / "checkpoints" / "checkpoint_epoch_2.bin");
  RunSynth(cfg, /*resume=*/true);
  EXPECT_EQ(Slurp(dir_ / "out" / "manifest.json"), first);
}

TEST_F(HarnessTest, EvalOfOriginalGivesZeroErrorWithoutCheckpoints) {
  ExperimentConfig cfg = SmallConfig({1.0}, 2);
  RunSynth(cfg);
  LoadOptions options;
  options.symmetrize = true;
  const Graph original = LoadEdgeListFile(dir_ / "graph.tsv", options).graph;
  for (int r = 0; r < 2; ++r) {
    const fs::path run = dir_ / "out" / "eps_1" / ("run_" + std::to_string(r));
    WriteEdgeListFile(run / "synthetic.edges", original);
    fs::remove_all(run / "checkpoints");
  }
  EvalOptions eval;
  eval.downstream = true;
  const json report = RunEval(dir_ / "graph.tsv", dir_ / "out", eval);
  const json& group = report.at("groups").at(0);
  for (Metric m : kAllMetrics) {
    EXPECT_EQ(group.at("metrics").at(MetricName(m)).at("mre").get<double>(), 0.0)
        << MetricName(m);
  }
  EXPECT_EQ(group.at("ks").at("mean").get<double>(), 0.0);
  EXPECT_EQ(group.at("auc").at("values").size(), 2u);
  EXPECT_EQ(group.at("micro_f1").at("values").size(), 2u);
  for (const char* key : {"auc", "micro_f1"}) {
    for (const json& v : group.at(key).at("values")) {
      EXPECT_GE(v.get<double>(), 0.0);
      EXPECT_LE(v.get<double>(), 1.0);
    }
  }
  EXPECT_TRUE(group.at("privacy").contains("sigma"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "eval_long.csv"));
}

TEST_F(HarnessTest, MissingRunsGivePartialReport) {
  ExperimentConfig cfg = SmallConfig({1.0}, 5);
  RunSynth(cfg);
  fs::remove(dir_ / "out" / "eps_1" / "run_1" / "synthetic.edges");
  fs::remove(dir_ / "out" / "eps_1" / "run_3" / "synthetic.edges");
  const json report = RunEval(dir_ / "graph.tsv", dir_ / "out");
  const json& group = report.at("groups").at(0);
  EXPECT_EQ(group.at("runs_found"), json({0, 2, 4}));
  EXPECT_EQ(group.at("runs_missing"), json({1, 3}));
  EXPECT_EQ(group.at("metrics").at("TC").at("synthetic").size(), 3u);
  ASSERT_FALSE(report.at("warnings").empty());
  EXPECT_NE(report.at("warnings").at(0).get<std::string>().find("[1,3]"),
            std::string::npos);
}

TEST_F(HarnessTest, SweepWritesSortedVersionedRows) {
  ExperimentConfig cfg = SmallConfig({3.2, 0.1}, 2);
  const fs::path csv = RunSweep(cfg);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kSweepSchema);
  std::getline(in, line);
  EXPECT_EQ(line, kSweepHeader);
  std::vector<std::tuple<double, std::string, int>> keys;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string eps, metric, run;
    std::getline(row, eps, ',');
    std::getline(row, metric, ',');
    std::getline(row, run, ',');
    keys.emplace_back(std::stod(eps), metric, std::stoi(run));
  }
  EXPECT_EQ(keys.size(), 2u * 4u * 2u);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));

  const std::string table = RunReport(dir_ / "out");
  EXPECT_NE(table.find("| 0.1 | 2/2 |"), std::string::npos) << table;
  EXPECT_TRUE(fs::exists(dir_ / "out" / "summary.md"));

  cfg.epsilons = {1.0};
  EXPECT_THROW(RunSweep(cfg), ValidationError);
}

TEST(ArtifactsTest, EmbeddingsRoundTripExactly) {
  const fs::path p = fs::temp_directory_path() / "privdpr_embeddings.tsv";
  Matrix m = Matrix::Random(7, 3);
  m(0, 0) = 1.0 / 3.0;
  WriteEmbeddings(p, m);
  EXPECT_TRUE(SameMatrix(ReadEmbeddings(p), m));
  fs::remove(p);
}

TEST(ArtifactsTest, LabelsMapByOriginalId) {
  const fs::path p = fs::temp_directory_path() / "privdpr_labels.txt";
  {
    std::ofstream out(p);
    out << "7\t1\t0\t1\tTheory\n3\t0\t0\t1\tAgents\n";
  }
  EXPECT_EQ(ReadLabels(p, {3, 5, 7}), (std::vector<int>{0, -1, 1}));
  fs::remove(p);
}

}  // namespace
}  // namespace privdpr
