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

#include "qafair/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qafair/error.hpp"

namespace qafair {

AnnealSchedule AnnealSchedule::with_default_steps(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw InputError("annealing time must be finite and non-negative");
  }
  const double steps = std::max(1000.0, std::ceil(100.0 * tau));
  return {tau, static_cast<std::size_t>(steps)};
}

StateVector::StateVector(std::vector<Amplitude> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  const auto n = amplitudes_.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw InputError("state dimension must be a power of two");
  }
  if (std::abs(norm_squared() - 1.0) > 1e-9) {
    throw InputError("state vector is not normalized");
  }
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(amplitudes_[k]);
  return p;
}

StateVector initial_state(int num_spins) {
  if (num_spins < 1 || num_spins > kMaxSpins) {
    throw SizeGuardError("num_spins must lie in [1, " +
                         std::to_string(kMaxSpins) + "]");
  }
  const std::size_t dim = std::size_t{1} << num_spins;
  const double a = std::pow(2.0, -0.5 * num_spins);
  return StateVector(std::vector<Amplitude>(dim, Amplitude{a, 0.0}));
}

AnnealingHamiltonian::AnnealingHamiltonian(const IsingModel& model)
    : num_spins_(model.num_spins()), diagonal_(model.diagonal()) {
  min_energy_ = *std::min_element(diagonal_.begin(), diagonal_.end());
}

void AnnealingHamiltonian::apply(double s, std::span<const Amplitude> in,
                                 std::span<Amplitude> out,
                                 double offset) const {
  const double driver = 1.0 - s;
  const std::size_t dim = diagonal_.size();
  // Each output index only reads `in`, so the loop is order independent.
  for (std::size_t k = 0; k < dim; ++k) {
    Amplitude flips{0.0, 0.0};
    for (int i = 0; i < num_spins_; ++i) flips += in[k ^ (std::size_t{1} << i)];
    out[k] = (s * diagonal_[k] - offset) * in[k] - driver * flips;
  }
}

StateVector apply_hamiltonian(const IsingModel& model, double s,
                              const StateVector& psi) {
  if (psi.dimension() != model.dimension()) {
    throw InputError("state dimension does not match model");
  }
  AnnealingHamiltonian h(model);
  std::vector<Amplitude> out(psi.dimension());
  h.apply(s, psi.amplitudes(), out);
  // Bypass the normalization check: H psi is not a state.
  StateVector result = psi;
  std::copy(out.begin(), out.end(), result.amplitudes().begin());
  return result;
}

namespace {

// Scalar reference energy tracking the driver ground energy at s = 0 and the
// problem ground energy at s = 1. Subtracting it only changes a global phase.
double reference_energy(const AnnealingHamiltonian& h, double s) {
  return -(1.0 - s) * h.num_spins() + s * h.min_energy();
}

}  // namespace

EvolutionResult evolve_unchecked(const IsingModel& model,
                                 const AnnealSchedule& schedule) {
  if (!(schedule.tau >= 0.0) || !std::isfinite(schedule.tau)) {
    throw InputError("annealing time must be finite and non-negative");
  }
  if (schedule.steps == 0) throw InputError("steps must be positive");

  const AnnealingHamiltonian h(model);
  StateVector state = initial_state(model.num_spins());
  auto psi = state.amplitudes();
  const std::size_t dim = psi.size();

  std::vector<Amplitude> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  const double tau = schedule.tau;
  const double dt = schedule.dt();
  const Amplitude minus_i{0.0, -1.0};

  // f(t, y) = -i (H(t) - c(t)) y
  auto rhs = [&](double t, std::span<const Amplitude> y,
                 std::span<Amplitude> out) {
    const double s = tau > 0.0 ? t / tau : 1.0;
    h.apply(s, y, out, reference_energy(h, s));
    for (auto& v : out) v *= minus_i;
  };

  if (dt > 0.0) {
    for (std::size_t n = 0; n < schedule.steps; ++n) {
      const double t = static_cast<double>(n) * dt;
      rhs(t, psi, k1);
      for (std::size_t k = 0; k < dim; ++k) tmp[k] = psi[k] + 0.5 * dt * k1[k];
      rhs(t + 0.5 * dt, tmp, k2);
      for (std::size_t k = 0; k < dim; ++k) tmp[k] = psi[k] + 0.5 * dt * k2[k];
      rhs(t + 0.5 * dt, tmp, k3);
      for (std::size_t k = 0; k < dim; ++k) tmp[k] = psi[k] + dt * k3[k];
      rhs(t + dt, tmp, k4);
      for (std::size_t k = 0; k < dim; ++k) {
        psi[k] += (dt / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
      }
    }
  }

  EvolutionResult result;
  result.tau = tau;
  result.steps = schedule.steps;
  const double norm2 = state.norm_squared();
  result.norm_drift = std::abs(1.0 - norm2);
  result.probabilities = state.probabilities();
  if (std::isfinite(norm2) && norm2 > 0.0) {
    for (auto& p : result.probabilities) p /= norm2;
  }
  return result;
}

EvolutionResult evolve(const IsingModel& model,
                       const AnnealSchedule& schedule) {
  auto result = evolve_unchecked(model, schedule);
  if (!(result.norm_drift <= kNormDriftBudget)) {
    std::ostringstream msg;
    msg << "norm drift " << result.norm_drift << " exceeds "
        << kNormDriftBudget << " at tau=" << schedule.tau
        << " with " << schedule.steps << " steps; increase --steps";
    throw AccuracyError(msg.str());
  }
  return result;
}

ConvergenceReport convergence_check(const IsingModel& model,
                                    const AnnealSchedule& schedule) {
  const auto coarse = evolve_unchecked(model, schedule);
  const auto fine =
      evolve_unchecked(model, {schedule.tau, 2 * schedule.steps});

  ConvergenceReport report;
  report.steps = schedule.steps;
  report.norm_drift = std::max(coarse.norm_drift, fine.norm_drift);
  double diff = 0.0;
  for (std::size_t k = 0; k < coarse.probabilities.size(); ++k) {
    diff = std::max(diff,
                    std::abs(coarse.probabilities[k] - fine.probabilities[k]));
  }
  report.max_probability_change = diff;
  report.under_resolved = !(diff <= 1e-6) || !(report.norm_drift <= kNormDriftBudget);
  return report;
}

}  // namespace qafair
