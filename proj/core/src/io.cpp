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

#include "qafair/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>

#include <nlohmann/json.hpp>

#include "qafair/error.hpp"

namespace qafair {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": " + e.what());
  }
}

[[noreturn]] void field_error(const std::string& origin,
                              const std::string& field,
                              const std::string& what) {
  throw InputError(origin + ": field \"" + field + "\": " + what);
}

const json& require(const json& obj, const char* key,
                    const std::string& origin) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(origin, key, "missing");
  return *it;
}

int as_int(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_number_integer()) field_error(origin, field, "expected an integer");
  return v.get<int>();
}

double as_real(const json& v, const std::string& origin,
               const std::string& field) {
  if (!v.is_number()) field_error(origin, field, "expected a number");
  return v.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& origin) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) field_error(origin, it.key(), "unknown field");
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomically(const std::filesystem::path& path,
                           std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot rename " + tmp.string() + " to " + path.string() +
                     ": " + ec.message());
  }
}

IsingModel parse_model(std::string_view text, const std::string& origin) {
  const json doc = parse_json(text, origin);
  if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
  reject_unknown(doc, {"num_spins", "couplings", "fields", "description"},
                 origin);

  const int n = as_int(require(doc, "num_spins", origin), origin, "num_spins");
  const json& cs = require(doc, "couplings", origin);
  if (!cs.is_array()) field_error(origin, "couplings", "expected an array");

  std::vector<Coupling> couplings;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const std::string f = "couplings[" + std::to_string(k) + "]";
    const json& c = cs[k];
    if (!c.is_array() || c.size() != 3) {
      field_error(origin, f, "expected [i, j, J]");
    }
    couplings.push_back({as_int(c[0], origin, f + "[0]"),
                         as_int(c[1], origin, f + "[1]"),
                         as_real(c[2], origin, f + "[2]")});
  }

  std::vector<double> fields;
  if (auto it = doc.find("fields"); it != doc.end()) {
    if (!it->is_array()) field_error(origin, "fields", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      fields.push_back(
          as_real((*it)[k], origin, "fields[" + std::to_string(k) + "]"));
    }
  }

  try {
    return IsingModel(n, std::move(couplings), std::move(fields));
  } catch (const InputError& e) {
    throw InputError(origin + ": " + e.what());
  }
}

IsingModel load_model(const std::filesystem::path& path) {
  return parse_model(read_text_file(path), path.string());
}

std::string model_to_json(const IsingModel& model) {
  json doc;
  doc["num_spins"] = model.num_spins();
  doc["couplings"] = json::array();
  for (const auto& c : model.couplings()) {
    doc["couplings"].push_back({c.i, c.j, c.value});
  }
  if (model.has_fields()) doc["fields"] = model.fields();
  return doc.dump(2);
}

EmbeddingTemplate parse_embedding(std::string_view text,
                                  const std::string& origin) {
  const json doc = parse_json(text, origin);
  if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
  reject_unknown(doc,
                 {"num_logical", "chains", "chain_strength",
                  "coupling_assignment", "description"},
                 origin);

  EmbeddingTemplate tmpl;
  Embedding& e = tmpl.base;
  e.num_logical =
      as_int(require(doc, "num_logical", origin), origin, "num_logical");

  const json& chains = require(doc, "chains", origin);
  if (!chains.is_array()) field_error(origin, "chains", "expected an array");
  for (std::size_t k = 0; k < chains.size(); ++k) {
    const std::string f = "chains[" + std::to_string(k) + "]";
    if (!chains[k].is_array()) field_error(origin, f, "expected an array");
    std::vector<int> chain;
    for (std::size_t m = 0; m < chains[k].size(); ++m) {
      chain.push_back(
          as_int(chains[k][m], origin, f + "[" + std::to_string(m) + "]"));
    }
    e.chains.push_back(std::move(chain));
  }

  const json& jf = require(doc, "chain_strength", origin);
  if (jf.is_string() && jf.get<std::string>() == kChainStrengthPlaceholder) {
    tmpl.chain_strength_open = true;
    e.chain_strength = 1.0;
  } else {
    e.chain_strength = as_real(jf, origin, "chain_strength");
  }

  const json& ca = require(doc, "coupling_assignment", origin);
  if (!ca.is_array()) {
    field_error(origin, "coupling_assignment", "expected an array");
  }
  for (std::size_t k = 0; k < ca.size(); ++k) {
    const std::string f = "coupling_assignment[" + std::to_string(k) + "]";
    const json& a = ca[k];
    if (!a.is_array() || a.size() != 2 || !a[0].is_array() ||
        a[0].size() != 2 || !a[1].is_array() || a[1].size() != 2) {
      field_error(origin, f, "expected [[i, j], [p, q]]");
    }
    e.coupling_assignment.push_back(
        {as_int(a[0][0], origin, f), as_int(a[0][1], origin, f),
         as_int(a[1][0], origin, f), as_int(a[1][1], origin, f)});
  }

  try {
    if (tmpl.chain_strength_open) {
      (void)tmpl.with_chain_strength(1.0);
    } else {
      validate_embedding(e);
    }
  } catch (const InputError& err) {
    throw InputError(origin + ": " + err.what());
  }
  return tmpl;
}

EmbeddingTemplate load_embedding(const std::filesystem::path& path) {
  return parse_embedding(read_text_file(path), path.string());
}

std::string embedding_to_json(const Embedding& embedding) {
  json doc;
  doc["num_logical"] = embedding.num_logical;
  doc["chains"] = embedding.chains;
  doc["chain_strength"] = embedding.chain_strength;
  doc["coupling_assignment"] = json::array();
  for (const auto& a : embedding.coupling_assignment) {
    doc["coupling_assignment"].push_back(
        json::array({json::array({a.i, a.j}), json::array({a.p, a.q})}));
  }
  return doc.dump(2);
}

}  // namespace qafair
