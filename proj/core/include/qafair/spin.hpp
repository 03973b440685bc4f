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

#include <bit>
#include <compare>
#include <cstdint>
#include <string>

namespace qafair {

// Largest spin count any exhaustive routine accepts.
inline constexpr int kMaxSpins = 24;

// Computational basis state. Bit i set means spin i is up (+1).
struct SpinConfig {
  std::uint32_t bits = 0;

  constexpr int spin(int i) const { return ((bits >> i) & 1u) ? 1 : -1; }
  constexpr bool up(int i) const { return (bits >> i) & 1u; }
  constexpr SpinConfig flipped(int i) const { return {bits ^ (1u << i)}; }

  friend constexpr auto operator<=>(SpinConfig, SpinConfig) = default;
};

constexpr std::uint32_t state_mask(int num_spins) {
  return num_spins >= 32 ? ~0u : ((1u << num_spins) - 1u);
}

constexpr SpinConfig global_flip(SpinConfig c, int num_spins) {
  return {~c.bits & state_mask(num_spins)};
}

constexpr int hamming_distance(SpinConfig a, SpinConfig b) {
  return std::popcount(a.bits ^ b.bits);
}

// Arrow notation, spin 0 first: "↑↑↓↓↑".
std::string to_arrows(SpinConfig c, int num_spins);

// Bitstring, spin 0 first: "11001".
std::string to_bitstring(SpinConfig c, int num_spins);

}  // namespace qafair
