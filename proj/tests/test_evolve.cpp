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
#include <random>

#include <gtest/gtest.h>

#include "qafair/error.hpp"
#include "qafair/evolve.hpp"
#include "qafair/io.hpp"
#include "test_support.hpp"

namespace qafair {
namespace {

const IsingModel kFerro2(2, {{0, 1, 1.0}});

TEST(InitialState, UniformAmplitudes) {
  const auto one = initial_state(1);
  ASSERT_EQ(one.dimension(), 2u);
  EXPECT_DOUBLE_EQ(one[0].real(), 0.7071067811865476);
  EXPECT_DOUBLE_EQ(one[1].real(), 0.7071067811865476);
  const auto two = initial_state(2);
  for (const auto& a : two.amplitudes()) EXPECT_EQ(a, Amplitude(0.5, 0.0));
  const auto six = initial_state(6);
  ASSERT_EQ(six.dimension(), 64u);
  for (const auto& a : six.amplitudes()) EXPECT_EQ(a, Amplitude(0.125, 0.0));
  EXPECT_THROW(initial_state(kMaxSpins + 1), SizeGuardError);
}

TEST(ApplyHamiltonian, ProblemOnlyAtEnd) {
  std::vector<Amplitude> amps{{0.1, 0.2}, {0.3, -0.1}, {-0.5, 0.4}, {0.2, 0.0}};
  double norm = 0;
  for (auto& a : amps) norm += std::norm(a);
  for (auto& a : amps) a /= std::sqrt(norm);
  const StateVector psi(amps);
  const auto out = apply_hamiltonian(kFerro2, 1.0, psi);
  for (std::uint32_t b = 0; b < 4; ++b) {
    EXPECT_EQ(out[b], kFerro2.energy({b}) * psi[b]);
  }
}

TEST(ApplyHamiltonian, UniformStateIsDriverEigenstate) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  const auto psi = initial_state(5);
  const auto out = apply_hamiltonian(m, 0.0, psi);
  for (std::size_t k = 0; k < psi.dimension(); ++k) {
    EXPECT_NEAR(std::abs(out[k] - (-5.0) * psi[k]), 0.0, 1e-15);
  }
}

TEST(ApplyHamiltonian, HalfwayOnBasisState) {
  std::vector<Amplitude> amps(4, 0.0);
  amps[0b11] = 1.0;  // ++
  const auto out = apply_hamiltonian(kFerro2, 0.5, StateVector(amps));
  EXPECT_EQ(out[0b11], Amplitude(-0.5, 0.0));
  EXPECT_EQ(out[0b01], Amplitude(-0.5, 0.0));
  EXPECT_EQ(out[0b10], Amplitude(-0.5, 0.0));
  EXPECT_EQ(out[0b00], Amplitude(0.0, 0.0));
}

TEST(ApplyHamiltonian, MatchesDenseMatrix) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_integer_model(1 + trial % 6, rng, true);
    const double s = (trial % 5) / 4.0;
    std::vector<Amplitude> amps(m.dimension());
    double norm = 0;
    for (auto& a : amps) {
      a = {g(rng), g(rng)};
      norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    const StateVector psi(amps);
    const auto out = apply_hamiltonian(m, s, psi);
    const Eigen::MatrixXd h = testing::dense_hamiltonian(m, s);
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      Amplitude expect = 0.0;
      for (Eigen::Index c = 0; c < h.cols(); ++c) expect += h(r, c) * amps[static_cast<std::size_t>(c)];
      ASSERT_NEAR(std::abs(out[static_cast<std::size_t>(r)] - expect), 0.0, 1e-12);
    }
  }
}

TEST(Schedule, DefaultStepPolicy) {
  EXPECT_EQ(AnnealSchedule::with_default_steps(1.0).steps, 1000u);
  EXPECT_EQ(AnnealSchedule::with_default_steps(10.0).steps, 1000u);
  EXPECT_EQ(AnnealSchedule::with_default_steps(1000.0).steps, 100000u);
  EXPECT_DOUBLE_EQ(AnnealSchedule::with_default_steps(1000.0).dt(), 0.01);
  EXPECT_THROW(AnnealSchedule::with_default_steps(-1.0), InputError);
}

TEST(Evolve, TwoSpinFerromagnetIsSymmetricAndAdiabatic) {
  const auto r = evolve(kFerro2, AnnealSchedule::with_default_steps(100.0));
  EXPECT_NEAR(r.probabilities[0b11], r.probabilities[0b00], 1e-8);
  EXPECT_GE(r.probabilities[0b11] + r.probabilities[0b00], 0.99);
  EXPECT_LE(r.norm_drift, kNormDriftBudget);
  double total = 0;
  for (double p : r.probabilities) {
    EXPECT_GE(p, 0.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Evolve, AgreesWithExponentialPropagation) {
  // Fields break the flip symmetry so the check is not trivially symmetric.
  const IsingModel m(3, {{0, 1, 1.0}, {1, 2, -0.5}}, {0.3, 0.0, -0.2});
  const double tau = 5.0;
  const auto rk = evolve(m, {tau, 5000});
  const auto exact = testing::exponential_propagation(m, tau, 20000);
  for (std::size_t k = 0; k < exact.size(); ++k) {
    EXPECT_NEAR(rk.probabilities[k], exact[k], 1e-6) << k;
  }
}

TEST(Evolve, ZeroTimeLeavesUniformDistribution) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  const auto r = evolve(m, {0.0, 1});
  for (double p : r.probabilities) EXPECT_NEAR(p, 1.0 / 32.0, 1e-12);
  EXPECT_LE(r.norm_drift, 1e-15);
}

TEST(Evolve, FlipSymmetryOfProbabilities) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  for (double tau : {1.0, 10.0, 50.0}) {
    const auto r = evolve(m, AnnealSchedule::with_default_steps(tau));
    for (std::uint32_t b = 0; b < 32; ++b) {
      ASSERT_NEAR(r.probabilities[b], r.probabilities[global_flip({b}, 5).bits], 1e-8);
    }
  }
}

TEST(Evolve, BitwiseDeterministic) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  const auto a = evolve(m, {20.0, 3000});
  const auto b = evolve(m, {20.0, 3000});
  EXPECT_EQ(a.probabilities, b.probabilities);
  EXPECT_EQ(a.norm_drift, b.norm_drift);
}

TEST(Evolve, UnderResolvedRunThrowsAccuracyError) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  EXPECT_THROW(evolve(m, {1000.0, 10}), AccuracyError);
  EXPECT_THROW(evolve(m, {1.0, 0}), InputError);
}

TEST(ConvergenceCheck, DefaultPolicyConverges) {
  const auto r = convergence_check(kFerro2, AnnealSchedule::with_default_steps(100.0));
  EXPECT_FALSE(r.under_resolved) << r.max_probability_change;
  EXPECT_LE(r.max_probability_change, 1e-6);
}

TEST(ConvergenceCheck, CoarseStepsFlagged) {
  const auto m = load_model(testing::shipped_model("matsuda5.json"));
  EXPECT_TRUE(convergence_check(m, {1000.0, 10}).under_resolved);
}

TEST(ConvergenceCheck, ZeroTime) {
  const auto r = convergence_check(kFerro2, {0.0, 1});
  EXPECT_FALSE(r.under_resolved);
  EXPECT_EQ(r.max_probability_change, 0.0);
}

}  // namespace
}  // namespace qafair
