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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qafair/embed.hpp"
#include "qafair/model.hpp"

namespace qafair {

// Placeholder accepted for "chain_strength" in embedding files.
inline constexpr std::string_view kChainStrengthPlaceholder = "J_F";

/// {"num_spins": N, "couplings": [[i, j, J], ...], "fields": [h...]}
/// Parse failures and schema violations raise InputError naming the field
/// (and line/column for syntax errors) and the source.
IsingModel parse_model(std::string_view text, const std::string& origin = "<string>");
IsingModel load_model(const std::filesystem::path& path);
std::string model_to_json(const IsingModel& model);

/// {"num_logical": n, "chains": [[p...], ...], "chain_strength": x | "J_F",
///  "coupling_assignment": [[[i, j], [p, q]], ...]}
EmbeddingTemplate parse_embedding(std::string_view text,
                                  const std::string& origin = "<string>");
EmbeddingTemplate load_embedding(const std::filesystem::path& path);
std::string embedding_to_json(const Embedding& embedding);

std::string read_text_file(const std::filesystem::path& path);

// Writes via a sibling temp file and rename so readers never see a partial
// file.
void write_file_atomically(const std::filesystem::path& path,
                           std::string_view contents);

}  // namespace qafair
