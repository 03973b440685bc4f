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

#include <cstddef>
#include <span>
#include <vector>

#include "qafair/spin.hpp"

namespace qafair {

struct Coupling {
  int i = 0;
  int j = 0;
  double value = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Classical Ising target Hamiltonian
///
///   H_0 = -sum_{(i,j)} J_ij s_i s_j - sum_i h_i s_i
///
/// over `num_spins` spins. The constructor enforces 0 <= i < j < N, unique
/// pairs and N <= kMaxSpins; violating inputs raise InputError (or
/// SizeGuardError for the spin count).
class IsingModel {
 public:
  IsingModel(int num_spins, std::vector<Coupling> couplings,
             std::vector<double> fields = {});

  int num_spins() const { return num_spins_; }
  std::size_t dimension() const { return std::size_t{1} << num_spins_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const std::vector<double>& fields() const { return fields_; }

  bool has_fields() const;
  // True when every coupling and field is an integer, so energies are exact.
  bool integer_valued() const;

  double energy(SpinConfig config) const;

  // energy() for every basis state, indexed by SpinConfig::bits.
  std::vector<double> diagonal() const;

  friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
  int num_spins_;
  std::vector<Coupling> couplings_;
  std::vector<double> fields_;
};

struct GroundManifold {
  double energy = 0.0;
  std::vector<SpinConfig> configs;  // ascending by bits

  std::size_t degeneracy() const { return configs.size(); }
  bool contains(SpinConfig c) const;
  // Position of `c` in `configs`, or degeneracy() when absent.
  std::size_t index_of(SpinConfig c) const;
};

// Exhaustive scan over all 2^N configurations.
GroundManifold enumerate_ground_states(const IsingModel& model);

// Same as above but reusing a precomputed diagonal.
GroundManifold enumerate_ground_states(const IsingModel& model,
                                       std::span<const double> diagonal);

// Adjacency over manifold positions: adj[a] lists every b whose config is at
// exactly `distance` spin flips from config a. Only distance 1 and 2 are
// meaningful for the perturbative analysis.
std::vector<std::vector<std::size_t>> ground_connectivity(
    const GroundManifold& manifold, int distance);

// A ground state together with its global inversion (when that is also a
// ground state).
struct InversionClass {
  SpinConfig representative;          // member with spin 0 up
  std::vector<std::size_t> members;   // positions in GroundManifold::configs
};

/// Groups the manifold into inversion classes. Classes are ordered by their
/// representative read as an arrow string from spin 0 with up before down,
/// so the all-up class (if present) comes first.
std::vector<InversionClass> fold_manifold(const GroundManifold& manifold,
                                          int num_spins);

// Index of the class containing config `c`, or classes.size().
std::size_t class_of(const std::vector<InversionClass>& classes,
                     const GroundManifold& manifold, SpinConfig c);

}  // namespace qafair
