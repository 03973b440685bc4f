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

#include "qafair/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "qafair/error.hpp"

namespace qafair {

FairnessPartition FairnessPartition::first_vs_rest(std::size_t num_classes) {
  FairnessPartition p;
  p.s = {0};
  for (std::size_t k = 1; k < num_classes; ++k) p.c.push_back(k);
  return p;
}

void FairnessPartition::validate(std::size_t num_classes) const {
  if (s.empty() || c.empty()) {
    throw InputError("S and C partitions must both be non-empty");
  }
  std::vector<int> seen(num_classes, 0);
  for (const auto* set : {&s, &c}) {
    for (auto k : *set) {
      if (k >= num_classes) {
        throw InputError("partition index " + std::to_string(k) +
                         " out of range; the manifold has " +
                         std::to_string(num_classes) + " classes");
      }
      if (seen[k]++) {
        throw InputError("ground state " + std::to_string(k) +
                         " appears twice in the S/C partition");
      }
    }
  }
  for (std::size_t k = 0; k < num_classes; ++k) {
    if (!seen[k]) {
      throw InputError("ground state " + std::to_string(k) +
                       " is in neither S nor C");
    }
  }
}

std::optional<double> fairness_ratio(std::span<const double> folded,
                                     const FairnessPartition& partition) {
  partition.validate(folded.size());
  auto mean = [&](const std::vector<std::size_t>& set) {
    double sum = 0.0;
    for (auto k : set) sum += folded[k];
    return sum / static_cast<double>(set.size());
  };
  const double ps = mean(partition.s);
  const double pc = mean(partition.c);
  if (pc == 0.0) {
    if (ps == 0.0) return std::nullopt;
    return std::numeric_limits<double>::infinity();
  }
  return ps / pc;
}

GapReport gap_ratio(const IsingModel& model, const GroundManifold& manifold,
                    const FairnessPartition& partition) {
  if (manifold.degeneracy() < 2) {
    throw InputError("gap ratio needs a degenerate ground manifold");
  }
  const int n = model.num_spins();
  const auto classes = fold_manifold(manifold, n);
  partition.validate(classes.size());

  GapReport report;
  report.state_gaps.resize(manifold.degeneracy());
  for (std::size_t a = 0; a < manifold.degeneracy(); ++a) {
    const SpinConfig g = manifold.configs[a];
    std::vector<double> gaps;
    for (int i = 0; i < n; ++i) {
      const SpinConfig k = g.flipped(i);
      if (manifold.contains(k)) continue;
      bool mediates = false;
      const double gap = model.energy(k) - manifold.energy;
      for (std::size_t b = 0; b < manifold.degeneracy(); ++b) {
        if (b == a || hamming_distance(k, manifold.configs[b]) != 1) continue;
        mediates = true;
        if (a < b) report.pair_gaps[{a, b}].push_back(gap);
      }
      if (mediates) gaps.push_back(gap);
    }
    if (gaps.empty()) {
      report.excluded.push_back(a);
    } else {
      report.state_gaps[a] =
          std::accumulate(gaps.begin(), gaps.end(), 0.0) /
          static_cast<double>(gaps.size());
    }
  }

  auto set_mean = [&](const std::vector<std::size_t>& set) {
    double sum = 0.0;
    std::size_t count = 0;
    for (auto cls : set) {
      for (auto pos : classes[cls].members) {
        if (report.state_gaps[pos]) {
          sum += *report.state_gaps[pos];
          ++count;
        }
      }
    }
    return count ? sum / static_cast<double>(count)
                 : std::numeric_limits<double>::quiet_NaN();
  };
  report.s_gap = set_mean(partition.s);
  report.c_gap = set_mean(partition.c);
  report.ratio = report.s_gap / report.c_gap;
  return report;
}

namespace {

// Class index on the source manifold for a physical config, or nullopt.
std::optional<std::size_t> source_class(SpinConfig physical,
                                        const GroundManifold& source_manifold,
                                        const std::vector<InversionClass>& classes,
                                        const Embedding* embedding) {
  SpinConfig logical = physical;
  if (embedding) {
    const auto projected = project_state(physical, *embedding);
    if (!projected) return std::nullopt;
    logical = *projected;
  }
  const auto k = class_of(classes, source_manifold, logical);
  if (k == classes.size()) return std::nullopt;
  return k;
}

}  // namespace

FoldedDistribution fold_probabilities(std::span<const double> probabilities,
                                      const GroundManifold& source_manifold,
                                      const std::vector<InversionClass>& classes,
                                      const Embedding* embedding) {
  FoldedDistribution out;
  out.folded.assign(classes.size(), 0.0);
  for (std::uint32_t b = 0; b < probabilities.size(); ++b) {
    if (auto k = source_class({b}, source_manifold, classes, embedding)) {
      out.folded[*k] += probabilities[b];
    } else {
      out.excited_weight += probabilities[b];
    }
  }
  return out;
}

FoldedDistribution fold_probabilities(const PTResult& pt,
                                      const GroundManifold& pt_manifold,
                                      const GroundManifold& source_manifold,
                                      const std::vector<InversionClass>& classes,
                                      const Embedding* embedding) {
  FoldedDistribution out;
  out.folded.assign(classes.size(), 0.0);
  for (std::size_t a = 0; a < pt_manifold.degeneracy(); ++a) {
    const double p = pt.probabilities[a];
    if (auto k = source_class(pt_manifold.configs[a], source_manifold, classes,
                              embedding)) {
      out.folded[*k] += p;
    } else {
      out.excited_weight += p;
    }
  }
  return out;
}

FairnessPartition lift_partition(const FairnessPartition& source_partition,
                                 const std::vector<InversionClass>& source_classes,
                                 const GroundManifold& source_manifold,
                                 const GroundManifold& embedded_manifold,
                                 int embedded_spins,
                                 const Embedding& embedding) {
  source_partition.validate(source_classes.size());
  const auto embedded_classes = fold_manifold(embedded_manifold, embedded_spins);
  const std::set<std::size_t> in_s(source_partition.s.begin(),
                                   source_partition.s.end());
  FairnessPartition out;
  for (std::size_t k = 0; k < embedded_classes.size(); ++k) {
    const auto src = source_class(embedded_classes[k].representative,
                                  source_manifold, source_classes, &embedding);
    if (!src) {
      throw InputError("embedded ground state " +
                       to_bitstring(embedded_classes[k].representative,
                                    embedded_spins) +
                       " does not project onto the source ground manifold");
    }
    (in_s.count(*src) ? out.s : out.c).push_back(k);
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t num_points) {
  if (num_points == 1) return {lo};
  std::vector<double> out(num_points);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t k = 0; k < num_points; ++k) {
    out[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) /
                                    static_cast<double>(num_points - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> positive_linear_grid(double hi, std::size_t num_points) {
  std::vector<double> out(num_points);
  for (std::size_t k = 0; k < num_points; ++k) {
    out[k] = hi * static_cast<double>(k + 1) / static_cast<double>(num_points);
  }
  return out;
}

int sweep_threads_from_env() {
  if (const char* env = std::getenv("QA_FAIRSAMPLE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const auto workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < count; k = next++) fn(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

std::string variant_name(double jf) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "J_F=%g", jf);
  return buf;
}

AnnealSchedule schedule_for(const ToyExperiment& ex, double tau) {
  if (ex.steps) return {tau, *ex.steps};
  return AnnealSchedule::with_default_steps(tau);
}

void fill_se_row(SweepRecord& row, const ToyExperiment& ex,
                 const IsingModel& model, const GroundManifold& source_gs,
                 const std::vector<InversionClass>& classes,
                 const Embedding* embedding, double tau) {
  try {
    const auto result = evolve(model, schedule_for(ex, tau));
    const auto dist =
        fold_probabilities(result.probabilities, source_gs, classes, embedding);
    row.folded = dist.folded;
    row.excited_weight = dist.excited_weight;
    row.norm_drift = result.norm_drift;
    row.ratio = fairness_ratio(row.folded, ex.partition);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
}

}  // namespace

std::vector<SweepRecord> sweep_tau(const ToyExperiment& ex,
                                   std::span<const double> chain_strengths,
                                   std::span<const double> taus) {
  if (taus.empty()) throw InputError("tau grid is empty");
  if (!std::is_sorted(taus.begin(), taus.end())) {
    throw InputError("tau grid must be ascending");
  }
  const auto source_gs = enumerate_ground_states(ex.source);
  const auto classes = fold_manifold(source_gs, ex.source.num_spins());
  ex.partition.validate(classes.size());

  std::vector<EmbeddedModel> variants;
  for (double jf : chain_strengths) {
    variants.push_back(
        apply_embedding(ex.source, ex.embedding.with_chain_strength(jf)));
  }

  const std::size_t per_tau = 1 + variants.size();
  std::vector<SweepRecord> rows(taus.size() * per_tau);
  parallel_for(rows.size(), ex.threads, [&](std::size_t idx) {
    const double tau = taus[idx / per_tau];
    const std::size_t v = idx % per_tau;
    SweepRecord& row = rows[idx];
    row.parameter_name = "tau";
    row.parameter = tau;
    row.method = Method::SE;
    if (v == 0) {
      row.variant = "original";
      fill_se_row(row, ex, ex.source, source_gs, classes, nullptr, tau);
    } else {
      const auto& em = variants[v - 1];
      row.variant = variant_name(chain_strengths[v - 1]);
      fill_se_row(row, ex, em.model, source_gs, classes, &em.embedding, tau);
    }
  });
  return rows;
}

std::vector<SweepRecord> sweep_chain_strength(const ToyExperiment& ex,
                                              std::span<const double> jf_grid,
                                              double tau, bool with_dynamics) {
  for (double jf : jf_grid) {
    if (!(jf > 0.0)) throw InputError("chain strengths must be positive");
  }
  const auto source_gs = enumerate_ground_states(ex.source);
  const auto classes = fold_manifold(source_gs, ex.source.num_spins());
  ex.partition.validate(classes.size());

  std::vector<SweepRecord> rows(2 * jf_grid.size());
  parallel_for(jf_grid.size(), ex.threads, [&](std::size_t k) {
    const double jf = jf_grid[k];
    SweepRecord& pt_row = rows[2 * k];
    SweepRecord& se_row = rows[2 * k + 1];
    for (auto* row : {&pt_row, &se_row}) {
      row->parameter_name = "J_F";
      row->parameter = jf;
    }
    pt_row.method = Method::PT;
    se_row.method = Method::SE;

    try {
      const auto em =
          apply_embedding(ex.source, ex.embedding.with_chain_strength(jf));
      const PerturbationSetup setup(em.model);
      const auto pt = perturbative_probabilities(setup);
      const auto dist = fold_probabilities(pt, setup.manifold, source_gs,
                                           classes, &em.embedding);
      pt_row.folded = dist.folded;
      pt_row.excited_weight = dist.excited_weight;
      pt_row.ratio = fairness_ratio(pt_row.folded, ex.partition);

      const auto partition =
          lift_partition(ex.partition, classes, source_gs, setup.manifold,
                         em.model.num_spins(), em.embedding);
      const auto gaps = gap_ratio(em.model, setup.manifold, partition);
      pt_row.gap_ratio = gaps.ratio;
      se_row.gap_ratio = gaps.ratio;

      if (with_dynamics) {
        fill_se_row(se_row, ex, em.model, source_gs, classes, &em.embedding,
                    tau);
      }
    } catch (const std::exception& e) {
      pt_row.error = e.what();
      if (se_row.error.empty()) se_row.error = e.what();
    }
  });
  if (!with_dynamics) {
    std::vector<SweepRecord> pt_rows;
    for (std::size_t k = 0; k < rows.size(); k += 2) {
      pt_rows.push_back(std::move(rows[k]));
    }
    return pt_rows;
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string to_csv(std::span<const SweepRecord> rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.folded.size());

  std::string out = "parameter,method";
  for (std::size_t k = 0; k < width; ++k) out += ",P_" + std::to_string(k + 1);
  out += ",ratio_PS_PC,gap_ratio,excited_weight,norm_drift\n";

  for (const auto& r : rows) {
    out += fmt(r.parameter);
    out += ',';
    out += r.method == Method::SE ? "SE" : "PT";
    if (!r.variant.empty()) out += "/" + r.variant;
    for (std::size_t k = 0; k < width; ++k) {
      out += ',';
      if (k < r.folded.size()) out += fmt(r.folded[k]);
    }
    out += ',';
    if (r.ratio) out += fmt(*r.ratio);
    out += ',';
    if (r.gap_ratio) out += fmt(*r.gap_ratio);
    out += ',';
    if (r.error.empty()) out += fmt(r.excited_weight);
    out += ',';
    if (r.error.empty() && r.method == Method::SE) out += fmt(r.norm_drift);
    out += '\n';
  }
  return out;
}

}  // namespace qafair
