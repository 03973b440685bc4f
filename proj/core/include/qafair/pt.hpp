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

#include <Eigen/Dense>

#include "qafair/model.hpp"

namespace qafair {

// Eigenvalues closer than this are one degenerate level.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Degenerate perturbation theory for H_0 + lambda V with the transverse
/// driver V = -sum_i X_i, i.e. <m|V|k> = -1 exactly when m and k differ by one
/// spin flip.
struct PerturbationSetup {
  IsingModel model;
  GroundManifold manifold;
  std::vector<double> diagonal;  // H_0 energies indexed by bits

  explicit PerturbationSetup(IsingModel m);
};

struct EffectiveMatrix {
  int order = 1;
  std::vector<SpinConfig> basis;
  Eigen::MatrixXd entries;
};

// P1 V P1 over the whole manifold.
EffectiveMatrix first_order_matrix(const PerturbationSetup& setup);

/// P2 W P2 with W = V Q (E_0 - H_0)^{-1} Q V, Q = 1 - P1, on the given ordered
/// subset of manifold configs. Entry (m, n) sums 1 / (E_0 - E_k) over the
/// excited k one flip away from both m and n, so every entry is <= 0.
EffectiveMatrix second_order_matrix(const PerturbationSetup& setup,
                                    const std::vector<SpinConfig>& subspace);

struct PTResult {
  int resolved_order = 1;
  double minimal_eigenvalue = 0.0;
  std::size_t multiplicity = 1;
  // Aligned with setup.manifold.configs.
  std::vector<double> probabilities;
  // Aligned with fold_manifold(setup.manifold, N).
  std::vector<InversionClass> classes;
  std::vector<double> folded_probabilities;
  // True when the computation ran in the global-flip-even sector.
  bool symmetric_sector = false;

  EffectiveMatrix first_order;
  std::optional<EffectiveMatrix> second_order;
  // Eigenvectors of the resolved minimal level, one column per vector, rows
  // aligned with setup.manifold.configs.
  Eigen::MatrixXd ground_vectors;
};

/// Resolves the manifold at first order, and at second order inside the
/// minimal first-order eigenspace when that level is still degenerate.
/// For field-free models the search runs in the flip-even sector, which the
/// annealing dynamics never leaves; an inversion doublet is then one level.
/// A degenerate final level contributes the diagonal of its projector
/// divided by the multiplicity.
PTResult perturbative_probabilities(const PerturbationSetup& setup);

/// Eigen-decomposition helper: eigenvalues ascending and the columns of the
/// minimal eigenspace (within kDegeneracyTolerance).
struct MinimalEigenspace {
  Eigen::VectorXd eigenvalues;
  double minimal = 0.0;
  Eigen::MatrixXd vectors;
};
MinimalEigenspace minimal_eigenspace(const Eigen::MatrixXd& symmetric);

}  // namespace qafair
