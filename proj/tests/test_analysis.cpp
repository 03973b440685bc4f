// Copyright 2026 The qafair Authors
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

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "qafair/analysis.hpp"
#include "qafair/error.hpp"
#include "qafair/io.hpp"
#include "qafair/validate.hpp"
#include "test_support.hpp"

namespace qafair {
namespace {

IsingModel toy_source() { return load_model(testing::shipped_model("matsuda5.json")); }
EmbeddingTemplate toy_template() {
  return load_embedding(testing::shipped_model("matsuda5_embedded.json"));
}

ToyExperiment toy_experiment(int threads = 1) {
  return ToyExperiment{toy_source(), toy_template(), FairnessPartition::first_vs_rest(3),
                       std::size_t{2000}, threads};
}

TEST(FairnessRatio, UsesSetMeans) {
  const std::vector<double> p{0.2, 0.4, 0.4};
  EXPECT_NEAR(*fairness_ratio(p, FairnessPartition::first_vs_rest(3)), 0.5, 1e-15);
  const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  const FairnessPartition two_two{{0, 3}, {1, 2}};
  EXPECT_DOUBLE_EQ(*fairness_ratio(uniform, two_two), 1.0);
}

TEST(FairnessRatio, EdgeCases) {
  const auto part = FairnessPartition::first_vs_rest(3);
  const std::vector<double> zero_s{0.0, 0.5, 0.5};
  const std::vector<double> zero_c{1.0, 0.0, 0.0};
  const std::vector<double> zero_all{0.0, 0.0, 0.0};
  EXPECT_EQ(*fairness_ratio(zero_s, part), 0.0);
  EXPECT_TRUE(std::isinf(*fairness_ratio(zero_c, part)));
  EXPECT_FALSE(fairness_ratio(zero_all, part).has_value());
}

TEST(FairnessRatio, ScaleInvariant) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  const auto part = FairnessPartition::first_vs_rest(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> p{u(rng), u(rng), u(rng), u(rng)};
    std::vector<double> q = p;
    for (double& x : q) x *= 3.7;
    ASSERT_NEAR(*fairness_ratio(p, part), *fairness_ratio(q, part), 1e-12);
  }
}

TEST(FairnessPartition, Validation) {
  EXPECT_NO_THROW(FairnessPartition::first_vs_rest(3).validate(3));
  EXPECT_THROW((FairnessPartition{{0}, {0, 1, 2}}.validate(3)), InputError);
  EXPECT_THROW((FairnessPartition{{0}, {1}}.validate(3)), InputError);
  EXPECT_THROW((FairnessPartition{{}, {0, 1, 2}}.validate(3)), InputError);
  EXPECT_THROW((FairnessPartition{{0}, {1, 5}}.validate(3)), InputError);
}

// Independent gap computation: intermediates found by scanning the whole
// spectrum for one-flip neighbours of two distinct ground states.
double brute_gap_ratio(const IsingModel& m, const std::set<std::uint32_t>& s_states) {
  const auto ground = testing::ground_oracle(m);
  const std::set<std::uint32_t> gs(ground.configs.begin(), ground.configs.end());
  const std::uint32_t dim = 1u << m.num_spins();
  double s_sum = 0, c_sum = 0;
  int s_n = 0, c_n = 0;
  for (std::uint32_t g : ground.configs) {
    double sum = 0;
    int n = 0;
    for (std::uint32_t k = 0; k < dim; ++k) {
      if (gs.count(k) || testing::popcount_oracle(k ^ g) != 1) continue;
      bool other = false;
      for (std::uint32_t h : ground.configs) {
        other |= h != g && testing::popcount_oracle(k ^ h) == 1;
      }
      if (!other) continue;
      sum += testing::energy_oracle(m, k) - ground.energy;
      ++n;
    }
    if (n == 0) continue;
    if (s_states.count(g)) {
      s_sum += sum / n;
      ++s_n;
    } else {
      c_sum += sum / n;
      ++c_n;
    }
  }
  return (s_sum / s_n) / (c_sum / c_n);
}

TEST(GapRatio, EmbeddedToyMatchesHandDerivation) {
  for (double jf : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto em = apply_embedding(toy_source(), toy_template().with_chain_strength(jf));
    const auto gs = enumerate_ground_states(em.model);
    const auto classes = fold_manifold(gs, em.model.num_spins());
    const auto src_gs = enumerate_ground_states(toy_source());
    const auto src_classes = fold_manifold(src_gs, 5);
    const auto part = lift_partition(FairnessPartition::first_vs_rest(3), src_classes,
                                     src_gs, gs, em.model.num_spins(), em.embedding);
    const auto report = gap_ratio(em.model, gs, part);
    EXPECT_NEAR(report.ratio, 2.0 / (1.0 + jf), 1e-12) << jf;
    EXPECT_TRUE(report.excluded.empty());

    std::set<std::uint32_t> s_states;
    for (auto cls : part.s) {
      for (auto pos : classes[cls].members) s_states.insert(gs.configs[pos].bits);
    }
    EXPECT_NEAR(report.ratio, brute_gap_ratio(em.model, s_states), 1e-12) << jf;
  }
}

TEST(GapRatio, FairPointIsOne) {
  const auto em = apply_embedding(toy_source(), toy_template().with_chain_strength(1.0));
  const auto gs = enumerate_ground_states(em.model);
  const auto report =
      gap_ratio(em.model, gs, FairnessPartition::first_vs_rest(fold_manifold(gs, 6).size()));
  EXPECT_NEAR(report.ratio, 1.0, 1e-12);
}

TEST(GapRatio, RejectsNonDegenerateManifold) {
  const IsingModel field(1, {}, {0.5});
  EXPECT_THROW(gap_ratio(field, enumerate_ground_states(field), FairnessPartition{{0}, {}}),
               InputError);
}

TEST(LiftPartition, MapsSuppressedClassToAllUp) {
  const auto em = apply_embedding(toy_source(), toy_template().with_chain_strength(1.0));
  const auto gs = enumerate_ground_states(em.model);
  const auto src_gs = enumerate_ground_states(toy_source());
  const auto part = lift_partition(FairnessPartition::first_vs_rest(3),
                                   fold_manifold(src_gs, 5), src_gs, gs, 6, em.embedding);
  const auto classes = fold_manifold(gs, 6);
  ASSERT_EQ(part.s.size(), 1u);
  EXPECT_EQ(classes[part.s[0]].representative.bits, 0b111111u);
  EXPECT_EQ(part.c.size(), 2u);
}

TEST(FoldProbabilities, SourceUniformAndBrokenChains) {
  const auto src_gs = enumerate_ground_states(toy_source());
  const auto classes = fold_manifold(src_gs, 5);
  std::vector<double> p(32, 0.0);
  for (auto c : src_gs.configs) p[c.bits] = 1.0 / 8.0;
  p[src_gs.configs[0].bits] += 0.25;
  const double norm = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= norm;
  const auto dist = fold_probabilities(p, src_gs, classes, nullptr);
  EXPECT_NEAR(std::accumulate(dist.folded.begin(), dist.folded.end(), 0.0) + dist.excited_weight,
              1.0, 1e-12);

  const auto em = apply_embedding(toy_source(), toy_template().with_chain_strength(1.0));
  std::vector<double> q(64, 0.0);
  q[0b011111] = 0.5;  // chain {4,5} broken
  q[0b111111] = 0.5;
  const auto folded = fold_probabilities(q, src_gs, classes, &em.embedding);
  EXPECT_NEAR(folded.excited_weight, 0.5, 1e-15);
  EXPECT_NEAR(folded.folded[0], 0.5, 1e-15);
}

TEST(Grids, LogAndLinear) {
  const auto g = log_grid(1.0, 1000.0, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_NEAR(g[0], 1.0, 1e-12);
  EXPECT_NEAR(g[1], 10.0, 1e-9);
  EXPECT_NEAR(g[3], 1000.0, 1e-9);
  const auto l = positive_linear_grid(2.0, 40);
  ASSERT_EQ(l.size(), 40u);
  EXPECT_NEAR(l.front(), 0.05, 1e-15);
  EXPECT_NEAR(l.back(), 2.0, 1e-15);
}

TEST(SweepTau, RowLayout) {
  const std::vector<double> jfs{0.5, 1.5};
  const std::vector<double> taus{1.0, 5.0};
  const auto rows = sweep_tau(toy_experiment(), jfs, taus);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].variant, "original");
  EXPECT_EQ(rows[1].variant, "J_F=0.5");
  EXPECT_EQ(rows[2].variant, "J_F=1.5");
  EXPECT_EQ(rows[3].parameter, 5.0);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.folded.size(), 3u);
    EXPECT_LE(r.norm_drift, kNormDriftBudget);
    EXPECT_NEAR(r.folded[1], r.folded[2], 1e-8);
  }
}

TEST(SweepChainStrength, PTAndSERows) {
  const std::vector<double> grid{0.5, 1.0, 1.5};
  const auto rows = sweep_chain_strength(toy_experiment(), grid, 20.0);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(rows[2 * k].method, Method::PT);
    EXPECT_EQ(rows[2 * k + 1].method, Method::SE);
    EXPECT_NEAR(*rows[2 * k].gap_ratio, 2.0 / (1.0 + grid[k]), 1e-12);
  }
  EXPECT_NEAR(*rows[2].ratio, 1.0, 1e-9);
  EXPECT_LT(*rows[0].ratio, 1.0);
  EXPECT_GT(*rows[4].ratio, 1.0);

  const auto pt_only = sweep_chain_strength(toy_experiment(), grid, 20.0, false);
  ASSERT_EQ(pt_only.size(), 3u);
  for (const auto& r : pt_only) EXPECT_EQ(r.method, Method::PT);
}

TEST(SweepTau, AdiabaticGroundWeightAtLongTimes) {
  ToyExperiment ex = toy_experiment();
  ex.steps.reset();
  const std::vector<double> jfs(std::begin(kToyChainStrengths), std::end(kToyChainStrengths));
  const std::vector<double> taus{1000.0};
  for (const auto& r : sweep_tau(ex, jfs, taus)) {
    const double ground = std::accumulate(r.folded.begin(), r.folded.end(), 0.0);
    EXPECT_GE(ground, 0.99) << r.variant;
    EXPECT_NEAR(ground + r.excited_weight, 1.0, 1e-12) << r.variant;
  }
}

TEST(SweepChainStrength, RejectsNonPositive) {
  const std::vector<double> grid{0.5, 0.0};
  EXPECT_THROW(sweep_chain_strength(toy_experiment(), grid, 1.0, false), InputError);
}

TEST(Sweeps, ThreadCountDoesNotChangeOutput) {
  const std::vector<double> jfs{0.5, 1.0};
  const std::vector<double> taus{1.0, 3.0, 7.0};
  const auto one = to_csv(sweep_tau(toy_experiment(1), jfs, taus));
  const auto three = to_csv(sweep_tau(toy_experiment(3), jfs, taus));
  EXPECT_EQ(one, three);
}

TEST(Csv, HeaderAndMethodColumn) {
  const std::vector<double> grid{1.0};
  const auto csv = to_csv(sweep_chain_strength(toy_experiment(), grid, 1.0, false));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "parameter,method,P_1,P_2,P_3,ratio_PS_PC,gap_ratio,excited_weight,norm_drift");
  EXPECT_NE(csv.find("\n1,PT,"), std::string::npos);
}

TEST(Threads, EnvironmentOverride) {
  ::setenv("QA_FAIRSAMPLE_THREADS", "3", 1);
  EXPECT_EQ(sweep_threads_from_env(), 3);
  ::setenv("QA_FAIRSAMPLE_THREADS", "junk", 1);
  EXPECT_GE(sweep_threads_from_env(), 1);
  ::unsetenv("QA_FAIRSAMPLE_THREADS");
  EXPECT_GE(sweep_threads_from_env(), 1);
}

TEST(Threads, ParallelForVisitsEachIndexOnce) {
  std::vector<int> hits(101, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

}  // namespace
}  // namespace qafair
