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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "qafair/error.hpp"
#include "qafair/io.hpp"
#include "qafair/model.hpp"
#include "test_support.hpp"

namespace qafair {
namespace {

using testing::energy_oracle;
using testing::ground_oracle;

SpinConfig from_arrows(const std::string& s) {
  // 'u' = up, 'd' = down, spin 0 first
  SpinConfig c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'u') c.bits |= 1u << i;
  }
  return c;
}

const IsingModel kFerro2(2, {{0, 1, 1.0}});

TEST(Energy, SatisfiedAndViolatedBond) {
  EXPECT_EQ(kFerro2.energy(from_arrows("uu")), -1.0);
  EXPECT_EQ(kFerro2.energy(from_arrows("ud")), 1.0);
}

TEST(Energy, FieldTermSubtracts) {
  const IsingModel m(2, {{0, 1, 1.0}}, {0.5, -0.25});
  EXPECT_DOUBLE_EQ(m.energy(from_arrows("uu")), -1.0 - 0.5 + 0.25);
}

TEST(Energy, ToyAllUpIsGroundEnergy) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  EXPECT_EQ(m.energy(from_arrows("uuuuu")), ground_oracle(m).energy);
  EXPECT_EQ(ground_oracle(m).energy, -4.0);
}

TEST(GroundStates, SingleFreeSpin) {
  const auto gs = enumerate_ground_states(IsingModel(1, {}));
  EXPECT_EQ(gs.energy, 0.0);
  ASSERT_EQ(gs.degeneracy(), 2u);
  EXPECT_EQ(gs.configs[0].bits, 0u);
  EXPECT_EQ(gs.configs[1].bits, 1u);
}

TEST(GroundStates, TwoSpinFerromagnet) {
  const auto gs = enumerate_ground_states(kFerro2);
  EXPECT_EQ(gs.energy, -1.0);
  ASSERT_EQ(gs.degeneracy(), 2u);
  EXPECT_EQ(gs.configs[0], from_arrows("dd"));
  EXPECT_EQ(gs.configs[1], from_arrows("uu"));
}

TEST(GroundStates, ToyModelHasThreeClassesAndInversions) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  const auto gs = enumerate_ground_states(m);
  ASSERT_EQ(gs.degeneracy(), 6u);
  std::set<SpinConfig> expected;
  for (const auto* s : {"uuuuu", "uuddu", "uuddd"}) {
    expected.insert(from_arrows(s));
    expected.insert(global_flip(from_arrows(s), 5));
  }
  EXPECT_EQ(std::set<SpinConfig>(gs.configs.begin(), gs.configs.end()), expected);

  const auto classes = fold_manifold(gs, 5);
  ASSERT_EQ(classes.size(), 3u);
  EXPECT_EQ(classes[0].representative, from_arrows("uuuuu"));
  EXPECT_EQ(classes[1].representative, from_arrows("uuddu"));
  EXPECT_EQ(classes[2].representative, from_arrows("uuddd"));
}

TEST(GroundStates, NonIntegerTiesUseRelativeTolerance) {
  // 0.1 + 0.2 != 0.3 in binary; both orderings must still tie.
  const IsingModel m(3, {{0, 1, 0.1 + 0.2}, {1, 2, 0.3}});
  const auto gs = enumerate_ground_states(m);
  EXPECT_EQ(gs.degeneracy(), 2u);
}

TEST(GroundStates, SizeGuard) {
  EXPECT_THROW(IsingModel(kMaxSpins + 1, {}), SizeGuardError);
  EXPECT_NO_THROW(IsingModel(kMaxSpins, {}));
}

TEST(IsingModelInvariants, RejectsBadCouplings) {
  EXPECT_THROW(IsingModel(2, {{1, 0, 1.0}}), InputError);
  EXPECT_THROW(IsingModel(2, {{0, 0, 1.0}}), InputError);
  EXPECT_THROW(IsingModel(2, {{0, 2, 1.0}}), InputError);
  EXPECT_THROW(IsingModel(3, {{0, 1, 1.0}, {0, 1, -1.0}}), InputError);
  EXPECT_THROW(IsingModel(2, {}, {1.0}), InputError);
  EXPECT_THROW(IsingModel(0, {}), InputError);
}

TEST(Hamming, Examples) {
  EXPECT_EQ(hamming_distance(from_arrows("uuuuu"), from_arrows("uuuuu")), 0);
  EXPECT_EQ(hamming_distance(from_arrows("uuuuu"), from_arrows("uuduu")), 1);
  EXPECT_EQ(hamming_distance(from_arrows("uuddu"), from_arrows("uuddd")), 1);
}

TEST(Connectivity, TwoSpinFerromagnet) {
  const auto gs = enumerate_ground_states(kFerro2);
  const auto d1 = ground_connectivity(gs, 1);
  EXPECT_TRUE(d1[0].empty());
  EXPECT_TRUE(d1[1].empty());
  const auto d2 = ground_connectivity(gs, 2);
  EXPECT_EQ(d2[0], std::vector<std::size_t>{1});
  EXPECT_EQ(d2[1], std::vector<std::size_t>{0});
}

TEST(Connectivity, ToySourceHasTwoDistanceOnePairs) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  const auto adj = ground_connectivity(enumerate_ground_states(m), 1);
  std::size_t edges = 0;
  for (const auto& a : adj) edges += a.size();
  EXPECT_EQ(edges / 2, 2u);
}

TEST(Spin, Notation) {
  EXPECT_EQ(to_bitstring(from_arrows("uudd"), 4), "1100");
  EXPECT_EQ(to_arrows(from_arrows("ud"), 2), "↑↓");
}

// Properties over random field-free models.
TEST(ModelProperties, FlipSymmetryAndBruteForceAgreement) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 10;
    const auto m = testing::random_integer_model(n, rng);
    for (std::uint32_t b = 0; b < m.dimension(); ++b) {
      ASSERT_EQ(m.energy({b}), energy_oracle(m, b));
      ASSERT_EQ(m.energy({b}), m.energy(global_flip({b}, n)));
    }
    const auto gs = enumerate_ground_states(m);
    const auto brute = ground_oracle(m);
    ASSERT_EQ(gs.energy, brute.energy);
    ASSERT_EQ(gs.degeneracy(), brute.configs.size());
    for (std::size_t k = 0; k < gs.degeneracy(); ++k) {
      ASSERT_EQ(gs.configs[k].bits, brute.configs[k]);
      ASSERT_TRUE(gs.contains(global_flip(gs.configs[k], n)));
    }
    ASSERT_EQ(gs.degeneracy() % 2, 0u);
    for (const auto& cls : fold_manifold(gs, n)) {
      ASSERT_EQ(cls.members.size(), 2u);
      ASSERT_TRUE(cls.representative.up(0));
    }
  }
}

TEST(ModelProperties, ConnectivityMatchesPopcount) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_integer_model(2 + trial % 7, rng);
    const auto gs = enumerate_ground_states(m);
    for (int dist : {1, 2}) {
      const auto adj = ground_connectivity(gs, dist);
      for (std::size_t a = 0; a < gs.degeneracy(); ++a) {
        for (std::size_t b = 0; b < gs.degeneracy(); ++b) {
          const bool linked =
              std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
          ASSERT_EQ(linked, testing::popcount_oracle(gs.configs[a].bits ^
                                                     gs.configs[b].bits) == dist);
        }
      }
    }
  }
}

}  // namespace
}  // namespace qafair
