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
#include <optional>
#include <string>
#include <vector>

#include "qafair/model.hpp"

namespace qafair {

// Which physical pair (p, q) carries the logical coupling (i, j).
struct CouplingAssignment {
  int i = 0;
  int j = 0;
  int p = 0;
  int q = 0;

  friend bool operator==(const CouplingAssignment&,
                         const CouplingAssignment&) = default;
};

/// Chain-based minor embedding. Chain k lists the physical spins standing in
/// for logical spin k; consecutive chain members are bound by +chain_strength.
struct Embedding {
  int num_logical = 0;
  std::vector<std::vector<int>> chains;
  double chain_strength = 1.0;
  std::vector<CouplingAssignment> coupling_assignment;

  int num_physical() const;
  // Logical spin owning physical spin p, or -1.
  int chain_of(int p) const;

  // One chain of length 1 per spin, couplings mapped onto themselves.
  static Embedding identity(const IsingModel& source,
                            double chain_strength = 1.0);
};

// Throws InputError unless chains partition {0..M-1}, every chain is
// non-empty and chain_strength > 0.
void validate_embedding(const Embedding& embedding);

struct EmbeddedModel {
  IsingModel model;
  Embedding embedding;
  IsingModel source;
};

/// Builds the physical model: each logical coupling moves to its assigned
/// physical pair with the same value, every consecutive chain pair gets
/// +J_F, and logical fields attach to the first chain member.
EmbeddedModel apply_embedding(const IsingModel& source,
                              const Embedding& embedding);

// Copies each logical spin value onto every member of its chain.
SpinConfig lift(SpinConfig logical, const Embedding& embedding);

/// Chain-consensus projection. Returns nullopt when any chain is broken;
/// broken states are never repaired.
std::optional<SpinConfig> project_state(SpinConfig physical,
                                        const Embedding& embedding);

// Drops chain couplings and maps physical pairs back to logical ones.
IsingModel contract_chains(const EmbeddedModel& embedded);

struct EmbeddingReport {
  double source_energy = 0.0;
  double embedded_energy = 0.0;
  std::size_t source_degeneracy = 0;
  std::size_t embedded_degeneracy = 0;
  bool chains_intact = false;  // every embedded ground state has unbroken chains
  bool bijective = false;      // projection maps embedded GS onto source GS 1:1
  std::vector<std::string> notes;

  bool ok() const { return chains_intact && bijective; }
};

EmbeddingReport verify_embedding(const EmbeddedModel& embedded);

}  // namespace qafair

namespace qafair {

/// Embedding whose chain strength may be left open ("J_F" in files) and
/// supplied per run.
struct EmbeddingTemplate {
  Embedding base;
  bool chain_strength_open = false;

  Embedding with_chain_strength(double jf) const;
  // Uses `jf` when given, else the stored strength; throws InputError when
  // the strength is open and no value is supplied.
  Embedding resolve(std::optional<double> jf) const;
};

}  // namespace qafair
