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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qafair/model.hpp"

namespace qafair {

using Amplitude = std::complex<double>;

// Drift budget on |1 - ||psi(tau)||^2|.
inline constexpr double kNormDriftBudget = 1e-6;

/// Linear schedule H(t) = -(1 - t/tau) sum_i X_i + (t/tau) H_0 integrated
/// with `steps` uniform RK4 steps.
struct AnnealSchedule {
  double tau = 0.0;
  std::size_t steps = 1;

  // dt = min(0.01, tau / 1000), i.e. steps = max(1000, ceil(100 tau)).
  static AnnealSchedule with_default_steps(double tau);

  double dt() const { return steps == 0 ? 0.0 : tau / static_cast<double>(steps); }
};

class StateVector {
 public:
  explicit StateVector(std::vector<Amplitude> amplitudes);

  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  const Amplitude& operator[](std::size_t k) const { return amplitudes_[k]; }

  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  std::vector<Amplitude> amplitudes_;
};

// Uniform superposition, the ground state of -sum_i X_i.
StateVector initial_state(int num_spins);

/// Matrix-free H(s) = -(1 - s) sum_i X_i + s diag(H_0) with an optional
/// scalar offset subtracted (a global phase when integrating).
class AnnealingHamiltonian {
 public:
  explicit AnnealingHamiltonian(const IsingModel& model);

  int num_spins() const { return num_spins_; }
  std::size_t dimension() const { return diagonal_.size(); }
  std::span<const double> diagonal() const { return diagonal_; }
  double min_energy() const { return min_energy_; }

  // out = (H(s) - offset) in. `out` must not alias `in`.
  void apply(double s, std::span<const Amplitude> in, std::span<Amplitude> out,
             double offset = 0.0) const;

 private:
  int num_spins_;
  std::vector<double> diagonal_;
  double min_energy_;
};

StateVector apply_hamiltonian(const IsingModel& model, double s,
                              const StateVector& psi);

struct EvolutionResult {
  std::vector<double> probabilities;  // indexed by SpinConfig::bits, sums to 1
  double norm_drift = 0.0;
  double tau = 0.0;
  std::size_t steps = 0;
};

/// Integrates i d psi/dt = H(t) psi from the uniform state to t = tau.
/// Throws AccuracyError when the norm drift exceeds kNormDriftBudget.
EvolutionResult evolve(const IsingModel& model, const AnnealSchedule& schedule);

// As evolve(), but never throws on drift; the caller inspects norm_drift.
EvolutionResult evolve_unchecked(const IsingModel& model,
                                 const AnnealSchedule& schedule);

struct ConvergenceReport {
  std::size_t steps = 0;
  double max_probability_change = 0.0;  // between steps and 2 * steps
  double norm_drift = 0.0;              // worse of the two runs
  bool under_resolved = false;
};

ConvergenceReport convergence_check(const IsingModel& model,
                                    const AnnealSchedule& schedule);

}  // namespace qafair
