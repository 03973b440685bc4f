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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qafair/embed.hpp"
#include "qafair/evolve.hpp"
#include "qafair/model.hpp"
#include "qafair/pt.hpp"

namespace qafair {

/// Split of the folded ground manifold into the suppressed set S and the
/// connected set C, by inversion-class index.
struct FairnessPartition {
  std::vector<std::size_t> s;
  std::vector<std::size_t> c;

  // S = {0}, C = every other class.
  static FairnessPartition first_vs_rest(std::size_t num_classes);
  // Throws InputError unless S and C are disjoint, non-empty and cover
  // [0, num_classes).
  void validate(std::size_t num_classes) const;
};

/// mean_{g in S} P_g / mean_{g in C} P_g, so fair sampling gives exactly 1.
/// Returns 0 when the S-mean is 0, +infinity when only the C-mean is 0 and
/// nullopt when both are 0.
std::optional<double> fairness_ratio(std::span<const double> folded,
                                     const FairnessPartition& partition);

struct GapReport {
  // Mean (E_k - E_0) over the mediating intermediates of each ground state,
  // aligned with manifold.configs; nullopt when a state has none.
  std::vector<std::optional<double>> state_gaps;
  // Intermediate gaps per ordered manifold pair (a < b).
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> pair_gaps;
  double s_gap = 0.0;
  double c_gap = 0.0;
  double ratio = 0.0;
  std::vector<std::size_t> excluded;  // manifold positions with no intermediates
};

/// An intermediate of ground state g is an excited k one flip from g and one
/// flip from some other ground state. The partition indexes
/// fold_manifold(manifold, N).
GapReport gap_ratio(const IsingModel& model, const GroundManifold& manifold,
                    const FairnessPartition& partition);

// Probabilities folded onto the source inversion classes plus the weight that
// landed outside the source ground manifold (including broken chains).
struct FoldedDistribution {
  std::vector<double> folded;
  double excited_weight = 0.0;
};

/// Folds final-state probabilities of `model` (the source itself, or its
/// embedding when `embedding` is set) onto the classes of `source_manifold`.
FoldedDistribution fold_probabilities(std::span<const double> probabilities,
                                      const GroundManifold& source_manifold,
                                      const std::vector<InversionClass>& classes,
                                      const Embedding* embedding);

// Same for a PT result computed on an embedded (or source) model.
FoldedDistribution fold_probabilities(const PTResult& pt,
                                      const GroundManifold& pt_manifold,
                                      const GroundManifold& source_manifold,
                                      const std::vector<InversionClass>& classes,
                                      const Embedding* embedding);

/// Translates a partition over the source classes into one over the classes
/// of an embedded manifold, matching classes through chain projection.
FairnessPartition lift_partition(const FairnessPartition& source_partition,
                                 const std::vector<InversionClass>& source_classes,
                                 const GroundManifold& source_manifold,
                                 const GroundManifold& embedded_manifold,
                                 int embedded_spins, const Embedding& embedding);

enum class Method { SE, PT };

struct SweepRecord {
  std::string parameter_name;  // "tau" or "J_F"
  double parameter = 0.0;
  std::string variant;         // "original", "J_F=0.5", or empty
  Method method = Method::SE;
  std::vector<double> folded;
  std::optional<double> ratio;
  std::optional<double> gap_ratio;
  double excited_weight = 0.0;
  double norm_drift = 0.0;
  std::string error;  // set when the row failed; other numeric fields unset
};

/// Source model, chain template and S/C partition shared by the sweeps.
struct ToyExperiment {
  IsingModel source;
  EmbeddingTemplate embedding;
  FairnessPartition partition;
  // Fixed step count; default policy per tau when unset.
  std::optional<std::size_t> steps;
  int threads = 1;
};

/// For each tau, the original model followed by one embedded model per chain
/// strength: evolve, fold through chain projection, fairness ratio.
std::vector<SweepRecord> sweep_tau(const ToyExperiment& experiment,
                                   std::span<const double> chain_strengths,
                                   std::span<const double> taus);

/// For each J_F: a PT row and an SE row at `tau`, both carrying the gap ratio.
/// With `with_dynamics` false only the PT rows are produced.
std::vector<SweepRecord> sweep_chain_strength(const ToyExperiment& experiment,
                                              std::span<const double> jf_grid,
                                              double tau = 1000.0,
                                              bool with_dynamics = true);

// num_points log-spaced values in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t num_points);
// num_points values hi/num_points, 2 hi/num_points, ..., hi.
std::vector<double> positive_linear_grid(double hi, std::size_t num_points);

/// parameter, method, P_1..P_k, ratio_PS_PC, gap_ratio, excited_weight,
/// norm_drift. Empty cells for unset optionals.
std::string to_csv(std::span<const SweepRecord> rows);

// QA_FAIRSAMPLE_THREADS when set to a positive integer, else the hardware
// concurrency (at least 1).
int sweep_threads_from_env();

// Runs fn(0..count-1) on up to `threads` workers; fn writes its own slot.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qafair
