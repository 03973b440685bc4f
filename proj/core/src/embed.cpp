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

#include "qafair/embed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "qafair/error.hpp"

namespace qafair {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

int Embedding::num_physical() const {
  int m = 0;
  for (const auto& chain : chains) m += static_cast<int>(chain.size());
  return m;
}

int Embedding::chain_of(int p) const {
  for (std::size_t k = 0; k < chains.size(); ++k) {
    if (std::find(chains[k].begin(), chains[k].end(), p) != chains[k].end()) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

Embedding Embedding::identity(const IsingModel& source,
                              double chain_strength) {
  Embedding e;
  e.num_logical = source.num_spins();
  e.chain_strength = chain_strength;
  for (int i = 0; i < source.num_spins(); ++i) e.chains.push_back({i});
  for (const auto& c : source.couplings()) {
    e.coupling_assignment.push_back({c.i, c.j, c.i, c.j});
  }
  return e;
}

void validate_embedding(const Embedding& embedding) {
  if (!(embedding.chain_strength > 0.0) ||
      !std::isfinite(embedding.chain_strength)) {
    throw InputError("chain_strength must be a positive finite number, got " +
                     std::to_string(embedding.chain_strength));
  }
  if (embedding.num_logical < 1 ||
      embedding.chains.size() !=
          static_cast<std::size_t>(embedding.num_logical)) {
    throw InputError("expected " + std::to_string(embedding.num_logical) +
                     " chains, got " +
                     std::to_string(embedding.chains.size()));
  }
  const int m = embedding.num_physical();
  if (m > kMaxSpins) {
    throw SizeGuardError("embedding uses " + std::to_string(m) +
                         " physical spins; limit is " +
                         std::to_string(kMaxSpins));
  }
  std::vector<int> owner(static_cast<std::size_t>(m), -1);
  for (std::size_t k = 0; k < embedding.chains.size(); ++k) {
    if (embedding.chains[k].empty()) {
      throw InputError("chain " + std::to_string(k) + " is empty");
    }
    for (int p : embedding.chains[k]) {
      if (p < 0 || p >= m) {
        throw InputError("physical spin " + std::to_string(p) +
                         " out of range [0, " + std::to_string(m) + ")");
      }
      if (owner[static_cast<std::size_t>(p)] != -1) {
        throw InputError("physical spin " + std::to_string(p) +
                         " appears in more than one chain");
      }
      owner[static_cast<std::size_t>(p)] = static_cast<int>(k);
    }
  }
}

EmbeddedModel apply_embedding(const IsingModel& source,
                              const Embedding& embedding) {
  validate_embedding(embedding);
  if (embedding.num_logical != source.num_spins()) {
    throw InputError("embedding has " + std::to_string(embedding.num_logical) +
                     " logical spins, model has " +
                     std::to_string(source.num_spins()));
  }

  std::map<std::pair<int, int>, CouplingAssignment> by_logical;
  for (const auto& a : embedding.coupling_assignment) {
    const auto key = std::minmax({a.i, a.j});
    if (!by_logical.emplace(key, a).second) {
      throw InputError("logical coupling " + pair_str(key.first, key.second) +
                       " is assigned more than once");
    }
  }

  std::vector<Coupling> physical;
  for (const auto& c : source.couplings()) {
    auto it = by_logical.find({c.i, c.j});
    if (it == by_logical.end()) {
      throw InputError("logical coupling " + pair_str(c.i, c.j) +
                       " has no physical assignment");
    }
    auto a = it->second;
    // Orient the assignment so p sits in chain(i) and q in chain(j).
    if (a.i != c.i) std::swap(a.p, a.q);
    if (embedding.chain_of(a.p) != c.i || embedding.chain_of(a.q) != c.j) {
      throw InputError("assignment of logical " + pair_str(c.i, c.j) +
                       " to physical " + pair_str(a.p, a.q) +
                       " leaves its chains");
    }
    const auto [p, q] = std::minmax({a.p, a.q});
    physical.push_back({p, q, c.value});
    by_logical.erase(it);
  }
  if (!by_logical.empty()) {
    const auto& key = by_logical.begin()->first;
    throw InputError("assignment names logical coupling " +
                     pair_str(key.first, key.second) +
                     " which the model does not have");
  }

  for (const auto& chain : embedding.chains) {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const auto [p, q] = std::minmax({chain[k], chain[k + 1]});
      physical.push_back({p, q, embedding.chain_strength});
    }
  }

  std::vector<double> fields(
      static_cast<std::size_t>(embedding.num_physical()), 0.0);
  for (int i = 0; i < source.num_spins(); ++i) {
    fields[static_cast<std::size_t>(
        embedding.chains[static_cast<std::size_t>(i)].front())] =
        source.fields()[static_cast<std::size_t>(i)];
  }

  // IsingModel rejects duplicate physical pairs.
  IsingModel model(embedding.num_physical(), std::move(physical),
                   std::move(fields));
  return {std::move(model), embedding, source};
}

SpinConfig lift(SpinConfig logical, const Embedding& embedding) {
  SpinConfig out;
  for (std::size_t k = 0; k < embedding.chains.size(); ++k) {
    if (!logical.up(static_cast<int>(k))) continue;
    for (int p : embedding.chains[k]) out.bits |= 1u << p;
  }
  return out;
}

std::optional<SpinConfig> project_state(SpinConfig physical,
                                        const Embedding& embedding) {
  SpinConfig out;
  for (std::size_t k = 0; k < embedding.chains.size(); ++k) {
    const auto& chain = embedding.chains[k];
    const bool up = physical.up(chain.front());
    for (int p : chain) {
      if (physical.up(p) != up) return std::nullopt;
    }
    if (up) out.bits |= 1u << k;
  }
  return out;
}

IsingModel contract_chains(const EmbeddedModel& embedded) {
  const auto& emb = embedded.embedding;
  std::set<std::pair<int, int>> chain_pairs;
  for (const auto& chain : emb.chains) {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      chain_pairs.insert(std::minmax({chain[k], chain[k + 1]}));
    }
  }
  std::vector<Coupling> logical;
  for (const auto& c : embedded.model.couplings()) {
    if (chain_pairs.count({c.i, c.j})) continue;
    const auto [i, j] = std::minmax({emb.chain_of(c.i), emb.chain_of(c.j)});
    logical.push_back({i, j, c.value});
  }
  // Restore the source ordering so contraction is an exact inverse.
  std::sort(logical.begin(), logical.end(),
            [&](const Coupling& a, const Coupling& b) {
              auto pos = [&](const Coupling& x) {
                const auto& src = embedded.source.couplings();
                return std::find_if(src.begin(), src.end(),
                                    [&](const Coupling& s) {
                                      return s.i == x.i && s.j == x.j;
                                    }) -
                       src.begin();
              };
              return pos(a) < pos(b);
            });
  std::vector<double> fields(static_cast<std::size_t>(emb.num_logical), 0.0);
  for (int k = 0; k < emb.num_logical; ++k) {
    for (int p : emb.chains[static_cast<std::size_t>(k)]) {
      fields[static_cast<std::size_t>(k)] +=
          embedded.model.fields()[static_cast<std::size_t>(p)];
    }
  }
  return IsingModel(emb.num_logical, std::move(logical), std::move(fields));
}

EmbeddingReport verify_embedding(const EmbeddedModel& embedded) {
  const auto source_gs = enumerate_ground_states(embedded.source);
  const auto embedded_gs = enumerate_ground_states(embedded.model);

  EmbeddingReport report;
  report.source_energy = source_gs.energy;
  report.embedded_energy = embedded_gs.energy;
  report.source_degeneracy = source_gs.degeneracy();
  report.embedded_degeneracy = embedded_gs.degeneracy();
  report.chains_intact = true;

  std::set<SpinConfig> images;
  bool onto_source = true;
  for (const auto c : embedded_gs.configs) {
    const auto logical = project_state(c, embedded.embedding);
    if (!logical) {
      report.chains_intact = false;
      report.notes.push_back("ground state " +
                             to_bitstring(c, embedded.model.num_spins()) +
                             " has a broken chain");
      continue;
    }
    if (!source_gs.contains(*logical)) {
      onto_source = false;
      report.notes.push_back(
          "ground state " + to_bitstring(c, embedded.model.num_spins()) +
          " projects outside the source ground manifold");
    }
    images.insert(*logical);
  }
  report.bijective = report.chains_intact && onto_source &&
                     images.size() == embedded_gs.degeneracy() &&
                     images.size() == source_gs.degeneracy();
  if (report.chains_intact && onto_source && !report.bijective) {
    report.notes.push_back("projection is not one-to-one onto the source "
                           "ground manifold");
  }
  return report;
}

}  // namespace qafair

namespace qafair {

Embedding EmbeddingTemplate::with_chain_strength(double jf) const {
  Embedding e = base;
  e.chain_strength = jf;
  validate_embedding(e);
  return e;
}

Embedding EmbeddingTemplate::resolve(std::optional<double> jf) const {
  if (jf) return with_chain_strength(*jf);
  if (chain_strength_open) {
    throw InputError("embedding leaves chain_strength open; pass --jf");
  }
  validate_embedding(base);
  return base;
}

}  // namespace qafair
