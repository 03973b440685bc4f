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

#include "qafair/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "qafair/error.hpp"

namespace qafair {

std::string to_arrows(SpinConfig c, int num_spins) {
  std::string out;
  for (int i = 0; i < num_spins; ++i) out += c.up(i) ? "↑" : "↓";
  return out;
}

std::string to_bitstring(SpinConfig c, int num_spins) {
  std::string out;
  for (int i = 0; i < num_spins; ++i) out += c.up(i) ? '1' : '0';
  return out;
}

IsingModel::IsingModel(int num_spins, std::vector<Coupling> couplings,
                       std::vector<double> fields)
    : num_spins_(num_spins),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)) {
  if (num_spins_ < 1) {
    throw InputError("num_spins must be positive, got " +
                     std::to_string(num_spins_));
  }
  if (num_spins_ > kMaxSpins) {
    throw SizeGuardError("num_spins " + std::to_string(num_spins_) +
                         " exceeds the enumeration limit of " +
                         std::to_string(kMaxSpins));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& c : couplings_) {
    if (c.i < 0 || c.j >= num_spins_ || c.i >= c.j) {
      throw InputError("coupling (" + std::to_string(c.i) + ", " +
                       std::to_string(c.j) + ") must satisfy 0 <= i < j < " +
                       std::to_string(num_spins_));
    }
    if (!std::isfinite(c.value)) {
      throw InputError("coupling (" + std::to_string(c.i) + ", " +
                       std::to_string(c.j) + ") is not finite");
    }
    if (!seen.emplace(c.i, c.j).second) {
      throw InputError("duplicate coupling (" + std::to_string(c.i) + ", " +
                       std::to_string(c.j) + ")");
    }
  }
  if (fields_.empty()) {
    fields_.assign(static_cast<std::size_t>(num_spins_), 0.0);
  } else if (fields_.size() != static_cast<std::size_t>(num_spins_)) {
    throw InputError("fields has " + std::to_string(fields_.size()) +
                     " entries, expected " + std::to_string(num_spins_));
  }
  for (double h : fields_) {
    if (!std::isfinite(h)) throw InputError("field is not finite");
  }
}

bool IsingModel::has_fields() const {
  return std::any_of(fields_.begin(), fields_.end(),
                     [](double h) { return h != 0.0; });
}

bool IsingModel::integer_valued() const {
  auto integral = [](double x) { return std::trunc(x) == x; };
  return std::all_of(couplings_.begin(), couplings_.end(),
                     [&](const Coupling& c) { return integral(c.value); }) &&
         std::all_of(fields_.begin(), fields_.end(), integral);
}

double IsingModel::energy(SpinConfig config) const {
  double e = 0.0;
  for (const auto& c : couplings_) {
    e -= c.value * config.spin(c.i) * config.spin(c.j);
  }
  for (int i = 0; i < num_spins_; ++i) {
    e -= fields_[static_cast<std::size_t>(i)] * config.spin(i);
  }
  return e;
}

std::vector<double> IsingModel::diagonal() const {
  std::vector<double> out(dimension());
  for (std::uint32_t b = 0; b < out.size(); ++b) out[b] = energy({b});
  return out;
}

bool GroundManifold::contains(SpinConfig c) const {
  return std::binary_search(configs.begin(), configs.end(), c);
}

std::size_t GroundManifold::index_of(SpinConfig c) const {
  auto it = std::lower_bound(configs.begin(), configs.end(), c);
  if (it == configs.end() || *it != c) return configs.size();
  return static_cast<std::size_t>(it - configs.begin());
}

GroundManifold enumerate_ground_states(const IsingModel& model) {
  return enumerate_ground_states(model, model.diagonal());
}

GroundManifold enumerate_ground_states(const IsingModel& model,
                                       std::span<const double> diagonal) {
  if (diagonal.size() != model.dimension()) {
    throw InputError("diagonal size does not match model dimension");
  }
  const double e_min = *std::min_element(diagonal.begin(), diagonal.end());
  // Integer models compare exactly; otherwise ties within 1e-12 relative.
  const double tol =
      model.integer_valued() ? 0.0 : 1e-12 * std::max(1.0, std::abs(e_min));

  GroundManifold out;
  out.energy = e_min;
  for (std::uint32_t b = 0; b < diagonal.size(); ++b) {
    if (diagonal[b] - e_min <= tol) out.configs.push_back({b});
  }
  return out;
}

std::vector<std::vector<std::size_t>> ground_connectivity(
    const GroundManifold& manifold, int distance) {
  const auto d = manifold.degeneracy();
  std::vector<std::vector<std::size_t>> adj(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (a != b &&
          hamming_distance(manifold.configs[a], manifold.configs[b]) ==
              distance) {
        adj[a].push_back(b);
      }
    }
  }
  return adj;
}

namespace {

// Arrow-string order from spin 0, up before down.
bool arrow_less(SpinConfig a, SpinConfig b, int num_spins) {
  for (int i = 0; i < num_spins; ++i) {
    if (a.up(i) != b.up(i)) return a.up(i);
  }
  return false;
}

}  // namespace

std::vector<InversionClass> fold_manifold(const GroundManifold& manifold,
                                          int num_spins) {
  std::vector<InversionClass> classes;
  std::vector<bool> taken(manifold.degeneracy(), false);
  for (std::size_t a = 0; a < manifold.degeneracy(); ++a) {
    if (taken[a]) continue;
    const SpinConfig c = manifold.configs[a];
    const std::size_t partner =
        manifold.index_of(global_flip(c, num_spins));
    InversionClass cls;
    cls.representative = c;
    cls.members.push_back(a);
    taken[a] = true;
    if (partner != manifold.degeneracy() && partner != a) {
      cls.members.push_back(partner);
      taken[partner] = true;
      if (!c.up(0)) cls.representative = manifold.configs[partner];
    }
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [&](const InversionClass& x, const InversionClass& y) {
              return arrow_less(x.representative, y.representative, num_spins);
            });
  return classes;
}

std::size_t class_of(const std::vector<InversionClass>& classes,
                     const GroundManifold& manifold, SpinConfig c) {
  const std::size_t pos = manifold.index_of(c);
  if (pos == manifold.degeneracy()) return classes.size();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& m = classes[k].members;
    if (std::find(m.begin(), m.end(), pos) != m.end()) return k;
  }
  return classes.size();
}

}  // namespace qafair
