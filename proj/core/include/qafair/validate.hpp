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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qafair/embed.hpp"
#include "qafair/model.hpp"

namespace qafair {

// Chain strengths the toy-model checks run at.
inline constexpr double kToyChainStrengths[] = {0.5, 1.0, 1.5};

/// Closed form of -P2 W P2 for the six-spin embedded toy model, in cycle
/// order S, C, C', S', C'', C''': diagonals (2J+5)/(J+2) on the two S
/// positions and (4J+3)/(3J) elsewhere; cycle off-diagonals 1 and 1/J.
Eigen::MatrixXd toy_closed_form(double jf);

struct PermutationMatch {
  std::vector<std::size_t> permutation;  // actual(perm[a], perm[b]) ~ expected(a, b)
  double max_deviation = 0.0;
};

/// Searches simultaneous row/column orderings of `actual` that match
/// `expected` entrywise within `tol`. Backtracks on partial assignments, so
/// d = 6 is instant. Returns the best match found, or nullopt if none.
std::optional<PermutationMatch> match_up_to_permutation(
    const Eigen::MatrixXd& actual, const Eigen::MatrixXd& expected,
    double tol);

struct ValidationClause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationClause> clauses;
  bool passed() const;
};

/// Checks a source model plus chain embedding against the toy-model
/// structure: six source ground states, six embedded ground states with
/// intact chains, vanishing first-order matrix on the embedded manifold,
/// the closed-form second-order matrix up to ordering (1e-9), and a non-zero
/// first-order matrix on the source manifold.
ValidationReport validate_toy_model(
    const IsingModel& source, const EmbeddingTemplate& embedding,
    std::span<const double> chain_strengths = kToyChainStrengths);

}  // namespace qafair
