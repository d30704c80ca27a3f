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

// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "privdpr/privdpr.h"

namespace {

namespace fs = std::filesystem;

class CApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "privdpr_capi";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream k4(dir_ / "k4.tsv");
    k4 << "0\t1\n0\t2\n0\t3\n1\t2\n1\t3\n2\t3\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CApiTest, VersionIsSet) {
  EXPECT_STRNE(privdpr_version(), "");
}

TEST_F(CApiTest, GraphLifecycleAndStats) {
  privdpr_graph* g = nullptr;
  ASSERT_EQ(privdpr_graph_load(Path("k4.tsv").c_str(), 1, &g), PRIVDPR_OK);
  EXPECT_EQ(privdpr_graph_num_nodes(g), 4u);
  EXPECT_EQ(privdpr_graph_num_edges(g), 12u);

  std::vector<double> pr(4);
  ASSERT_EQ(privdpr_graph_pagerank(g, 0.85, pr.data(), pr.size()), PRIVDPR_OK);
  for (double x : pr) EXPECT_NEAR(x, 0.25, 1e-12);
  EXPECT_EQ(privdpr_graph_pagerank(g, 0.85, pr.data(), 2), PRIVDPR_ERR_VALIDATION);

  privdpr_graph_stats stats;
  ASSERT_EQ(privdpr_graph_stats_compute(g, &stats), PRIVDPR_OK);
  EXPECT_EQ(stats.triangle_count, 4.0);
  EXPECT_EQ(stats.wedge_count, 12.0);
  EXPECT_EQ(stats.claw_count, 4.0);
  EXPECT_NEAR(stats.rede, 1.0, 1e-12);
  EXPECT_EQ(stats.diameter, 1.0);

  double ks = -1;
  ASSERT_EQ(privdpr_degree_ks(g, g, &ks), PRIVDPR_OK);
  EXPECT_EQ(ks, 0.0);
  privdpr_graph_free(g);
}

TEST_F(CApiTest, ErrorsSetStatusAndMessage) {
  {
    std::ofstream bad(dir_ / "bad.tsv");
    bad << "0 1\nnot an edge line\n";
  }
  privdpr_graph* g = nullptr;
  EXPECT_EQ(privdpr_graph_load(Path("bad.tsv").c_str(), 0, &g), PRIVDPR_ERR_VALIDATION);
  EXPECT_NE(std::string(privdpr_last_error()).find("line 2"), std::string::npos);
  EXPECT_EQ(g, nullptr);
  EXPECT_EQ(privdpr_graph_load(nullptr, 0, &g), PRIVDPR_ERR_VALIDATION);
  EXPECT_EQ(privdpr_graph_load(Path("absent.tsv").c_str(), 0, &g), PRIVDPR_ERR_RUNTIME);
}

TEST_F(CApiTest, PrivacyCalibration) {
  double m = 0;
  ASSERT_EQ(privdpr_gradient_bound(3327, 0.85, &m), PRIVDPR_OK);
  EXPECT_NEAR(m, 10464, 52);
  size_t layers = 0;
  ASSERT_EQ(privdpr_min_layers(5, 128, m, 5, 1, &layers), PRIVDPR_OK);
  EXPECT_EQ(layers, 7u);
  double sigma = 0;
  ASSERT_EQ(privdpr_noise_sigma(3.2, 1e-5, 1, &sigma), PRIVDPR_OK);
  EXPECT_NEAR(sigma, 1.514, 1e-3);
  EXPECT_EQ(privdpr_min_layers(5, 128, m, 0.5, 1, &layers), PRIVDPR_ERR_VALIDATION);
}

TEST_F(CApiTest, ExperimentRoundTrip) {
  {
    std::ofstream cfg(dir_ / "exp.json");
    cfg << R"({"dataset": {"edges": "k4.tsv"},
              "train": {"epochs": 1, "batch_nodes": 2, "walk_length": 4,
                        "embedding_dim": 4, "hidden_dim": 3},
              "privacy": {"epsilons": [1.0, 2.0]}, "runs": 1,
              "output_dir": "unused"})";
  }
  privdpr_config* cfg = nullptr;
  ASSERT_EQ(privdpr_config_load(Path("exp.json").c_str(), &cfg), PRIVDPR_OK)
      << privdpr_last_error();
  ASSERT_EQ(privdpr_config_set_output_dir(cfg, Path("out").c_str()), PRIVDPR_OK);
  ASSERT_EQ(privdpr_config_set_seed(cfg, 7), PRIVDPR_OK);
  ASSERT_EQ(privdpr_config_set_threads(cfg, 2), PRIVDPR_OK);
  EXPECT_EQ(privdpr_config_set_threads(cfg, 0), PRIVDPR_ERR_VALIDATION);
  ASSERT_EQ(privdpr_config_validate(cfg), PRIVDPR_OK);
  ASSERT_EQ(privdpr_sweep(cfg), PRIVDPR_OK) << privdpr_last_error();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "sweep.csv"));

  char* text = nullptr;
  ASSERT_EQ(privdpr_report(Path("out").c_str(), &text), PRIVDPR_OK);
  EXPECT_NE(std::string(text).find("| 2 | 1/1 |"), std::string::npos) << text;
  privdpr_free(text);

  EXPECT_EQ(privdpr_eval(Path("k4.tsv").c_str(), Path("out").c_str(), 0, nullptr,
                         Path("eval").c_str()),
            PRIVDPR_OK);
  EXPECT_TRUE(fs::exists(dir_ / "eval" / "eval_report.json"));
  EXPECT_EQ(privdpr_eval(Path("k4.tsv").c_str(), Path("nowhere").c_str(), 0,
                         nullptr, nullptr),
            PRIVDPR_ERR_VALIDATION);

  ASSERT_EQ(privdpr_config_set_target_edges(cfg, 1), PRIVDPR_OK);
  EXPECT_EQ(privdpr_synth(cfg, 0), PRIVDPR_ERR_VALIDATION);
  privdpr_config_free(cfg);
}

TEST_F(CApiTest, MissingConfigIsAValidationError) {
  privdpr_config* cfg = nullptr;
  EXPECT_EQ(privdpr_config_load(Path("nope.json").c_str(), &cfg),
            PRIVDPR_ERR_VALIDATION);
  EXPECT_EQ(cfg, nullptr);
}

}  // namespace
