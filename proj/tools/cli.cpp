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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "qafair/analysis.hpp"
#include "qafair/embed.hpp"
#include "qafair/error.hpp"
#include "qafair/evolve.hpp"
#include "qafair/io.hpp"
#include "qafair/model.hpp"
#include "qafair/pt.hpp"
#include "qafair/validate.hpp"

namespace qafair::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path default_model_path() {
  return fs::path(QAFAIR_MODELS_DIR) / "matsuda5.json";
}
fs::path default_embedding_path() {
  return fs::path(QAFAIR_MODELS_DIR) / "matsuda5_embedded.json";
}

struct Options {
  std::string model;
  std::string embedding;
  std::optional<double> jf;
  double tau = 0.0;
  std::optional<std::size_t> steps;
  bool dump_matrix = false;
  std::vector<std::size_t> s_set;
  std::vector<std::size_t> c_set;
  std::string figure;
  std::string out_path;
  std::vector<double> jf_list;
};

// The model actually simulated plus what is needed to read results back in
// terms of the source manifold.
struct Problem {
  IsingModel source;
  std::optional<EmbeddedModel> embedded;

  const IsingModel& physical() const {
    return embedded ? embedded->model : source;
  }
  const Embedding* embedding() const {
    return embedded ? &embedded->embedding : nullptr;
  }
};

Problem load_problem(const Options& opt) {
  Problem p{load_model(opt.model), std::nullopt};
  if (!opt.embedding.empty()) {
    const auto tmpl = load_embedding(opt.embedding);
    p.embedded = apply_embedding(p.source, tmpl.resolve(opt.jf));
  } else if (opt.jf) {
    throw InputError("--jf requires --embedding");
  }
  return p;
}

FairnessPartition partition_from(const Options& opt, std::size_t num_classes) {
  if (opt.s_set.empty() && opt.c_set.empty()) {
    return FairnessPartition::first_vs_rest(num_classes);
  }
  FairnessPartition p;
  for (auto k : opt.s_set) {
    if (k == 0) throw InputError("--s-set indices are 1-based");
    p.s.push_back(k - 1);
  }
  for (auto k : opt.c_set) {
    if (k == 0) throw InputError("--c-set indices are 1-based");
    p.c.push_back(k - 1);
  }
  if (p.c.empty() || p.s.empty()) {
    // Complete the partition with every unlisted class.
    auto& fill = p.c.empty() ? p.c : p.s;
    const auto& given = p.c.empty() ? p.s : p.c;
    for (std::size_t k = 0; k < num_classes; ++k) {
      if (std::find(given.begin(), given.end(), k) == given.end()) {
        fill.push_back(k);
      }
    }
  }
  p.validate(num_classes);
  return p;
}

json ratio_json(const std::optional<double>& r) {
  if (!r) return nullptr;
  if (std::isinf(*r)) return "inf";
  return *r;
}

json classes_json(const std::vector<InversionClass>& classes,
                  const std::vector<double>& folded, int n) {
  json arr = json::array();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    arr.push_back({{"index", k + 1},
                   {"state", to_arrows(classes[k].representative, n)},
                   {"bits", to_bitstring(classes[k].representative, n)},
                   {"probability", folded[k]}});
  }
  return arr;
}

json matrix_json(const EffectiveMatrix& m, int n) {
  json basis = json::array();
  for (auto c : m.basis) basis.push_back(to_bitstring(c, n));
  auto rows = [](const Eigen::MatrixXd& e) {
    json out = json::array();
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < e.cols(); ++c) row.push_back(e(r, c));
      out.push_back(row);
    }
    return out;
  };
  json j = {{"order", m.order}, {"basis", basis}, {"entries", rows(m.entries)}};
  if (m.order == 2) j["negated_entries"] = rows(-m.entries);
  return j;
}

int cmd_solve(const Options& opt, std::ostream& out) {
  const auto model = load_model(opt.model);
  const auto gs = enumerate_ground_states(model);
  const int n = model.num_spins();
  out << "E_0 = " << gs.energy << "\n";
  out << "degeneracy = " << gs.degeneracy() << "\n";
  for (const auto c : gs.configs) {
    out << "  " << to_arrows(c, n) << "  " << to_bitstring(c, n) << "\n";
  }
  const auto classes = fold_manifold(gs, n);
  out << "inversion classes = " << classes.size() << "\n";
  for (std::size_t k = 0; k < classes.size(); ++k) {
    out << "  |" << k + 1 << "> " << to_arrows(classes[k].representative, n)
        << "\n";
  }
  return kOk;
}

int cmd_anneal(const Options& opt, std::ostream& out) {
  const auto problem = load_problem(opt);
  const auto schedule = opt.steps ? AnnealSchedule{opt.tau, *opt.steps}
                                  : AnnealSchedule::with_default_steps(opt.tau);
  const auto result = evolve(problem.physical(), schedule);

  const auto source_gs = enumerate_ground_states(problem.source);
  const auto classes = fold_manifold(source_gs, problem.source.num_spins());
  const auto dist = fold_probabilities(result.probabilities, source_gs, classes,
                                       problem.embedding());
  const auto partition = partition_from(opt, classes.size());

  json doc = {{"tau", result.tau},
              {"steps", result.steps},
              {"norm_drift", result.norm_drift},
              {"ground_energy", source_gs.energy},
              {"ground_states", classes_json(classes, dist.folded,
                                             problem.source.num_spins())},
              {"excited_weight", dist.excited_weight},
              {"ratio_PS_PC", ratio_json(fairness_ratio(dist.folded, partition))}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_embed(const Options& opt, std::ostream& out) {
  const auto problem = load_problem(opt);
  if (!problem.embedded) throw InputError("embed needs an embedding file");
  const auto report = verify_embedding(*problem.embedded);
  json doc = {
      {"model", json::parse(model_to_json(problem.embedded->model))},
      {"verification",
       {{"source_energy", report.source_energy},
        {"embedded_energy", report.embedded_energy},
        {"source_degeneracy", report.source_degeneracy},
        {"embedded_degeneracy", report.embedded_degeneracy},
        {"chains_intact", report.chains_intact},
        {"bijective", report.bijective},
        {"notes", report.notes}}}};
  out << doc.dump(2) << "\n";
  return report.ok() ? kOk : kValidationFailure;
}

int cmd_pt(const Options& opt, std::ostream& out) {
  const auto problem = load_problem(opt);
  const PerturbationSetup setup(problem.physical());
  const auto pt = perturbative_probabilities(setup);
  const int n = setup.model.num_spins();

  const auto source_gs = enumerate_ground_states(problem.source);
  const auto classes = fold_manifold(source_gs, problem.source.num_spins());
  const auto dist = fold_probabilities(pt, setup.manifold, source_gs, classes,
                                       problem.embedding());
  const auto partition = partition_from(opt, classes.size());

  json states = json::array();
  for (std::size_t a = 0; a < setup.manifold.degeneracy(); ++a) {
    states.push_back({{"state", to_arrows(setup.manifold.configs[a], n)},
                      {"bits", to_bitstring(setup.manifold.configs[a], n)},
                      {"probability", pt.probabilities[a]}});
  }
  json doc = {{"resolved_order", pt.resolved_order},
              {"minimal_eigenvalue", pt.minimal_eigenvalue},
              {"multiplicity", pt.multiplicity},
              {"symmetric_sector", pt.symmetric_sector},
              {"manifold", states},
              {"ground_states", classes_json(classes, dist.folded,
                                             problem.source.num_spins())},
              {"ratio_PS_PC", ratio_json(fairness_ratio(dist.folded, partition))}};
  if (opt.dump_matrix) {
    doc["first_order_matrix"] = matrix_json(pt.first_order, n);
    const auto second = pt.second_order
                            ? *pt.second_order
                            : second_order_matrix(setup, setup.manifold.configs);
    doc["second_order_matrix"] = matrix_json(second, n);
  }
  out << doc.dump(2) << "\n";
  return kOk;
}

ValidationReport run_validation(const Options& opt) {
  const auto source = load_model(opt.model);
  const auto tmpl = load_embedding(opt.embedding);
  if (opt.jf_list.empty()) return validate_toy_model(source, tmpl);
  return validate_toy_model(source, tmpl, opt.jf_list);
}

void print_report(const ValidationReport& report, std::ostream& out) {
  for (const auto& c : report.clauses) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << "\n";
  }
}

int cmd_validate(const Options& opt, std::ostream& out) {
  const auto report = run_validation(opt);
  print_report(report, out);
  out << (report.passed() ? "validation passed" : "validation FAILED") << "\n";
  return report.passed() ? kOk : kValidationFailure;
}

int cmd_reproduce(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto report = run_validation(opt);
  if (!report.passed()) {
    print_report(report, err);
    err << "toy-model validation failed; not reproducing " << opt.figure << "\n";
    return kValidationFailure;
  }

  ToyExperiment ex{load_model(opt.model), load_embedding(opt.embedding),
                   {}, opt.steps, sweep_threads_from_env()};
  const auto classes = fold_manifold(enumerate_ground_states(ex.source),
                                     ex.source.num_spins());
  ex.partition = partition_from(opt, classes.size());

  std::vector<SweepRecord> rows;
  if (opt.figure == "fig2") {
    const auto taus = log_grid(1.0, 1000.0, 20);
    rows = sweep_tau(ex, kToyChainStrengths, taus);
  } else {
    const auto grid = positive_linear_grid(2.0, 40);
    rows = sweep_chain_strength(ex, grid, 1000.0, opt.figure == "fig3a");
  }
  const fs::path path =
      opt.out_path.empty() ? fs::path(opt.figure + ".csv") : fs::path(opt.out_path);
  write_file_atomically(path, to_csv(rows));

  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++failed;
      err << "row " << r.parameter_name << "=" << r.parameter << ": " << r.error
          << "\n";
    }
  }
  out << "wrote " << rows.size() << " rows to " << path.string() << "\n";
  return failed ? kAccuracyFailure : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fair-sampling analysis of minor-embedded quantum annealing"};
  app.require_subcommand(1);
  Options opt;

  auto add_partition = [&](CLI::App* sub) {
    sub->add_option("--s-set", opt.s_set,
                    "1-based ground-state classes in S (default: 1)")
        ->delimiter(',');
    sub->add_option("--c-set", opt.c_set,
                    "1-based ground-state classes in C (default: the rest)")
        ->delimiter(',');
  };
  auto add_embedding = [&](CLI::App* sub) {
    sub->add_option("--embedding", opt.embedding, "Embedding JSON file")
        ->check(CLI::ExistingFile);
    sub->add_option("--jf", opt.jf, "Chain strength J_F (> 0)")
        ->check(CLI::PositiveNumber);
  };
  auto add_data_files = [&](CLI::App* sub) {
    sub->add_option("--model", opt.model, "Source model JSON file")
        ->check(CLI::ExistingFile);
    sub->add_option("--embedding", opt.embedding, "Embedding template JSON file")
        ->check(CLI::ExistingFile);
    sub->add_option("--jf", opt.jf_list,
                    "Chain strengths to validate (default 0.5,1,1.5)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
  };

  auto* solve = app.add_subcommand("solve", "Enumerate ground states");
  solve->add_option("model", opt.model, "Model JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* anneal = app.add_subcommand("anneal", "Integrate the annealing dynamics");
  anneal->add_option("model", opt.model, "Model JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  anneal->add_option("--tau", opt.tau, "Annealing time")
      ->required()
      ->check(CLI::NonNegativeNumber);
  anneal->add_option("--steps", opt.steps, "RK4 step count override")
      ->check(CLI::PositiveNumber);
  add_embedding(anneal);
  add_partition(anneal);

  auto* embed = app.add_subcommand("embed", "Apply and verify an embedding");
  embed->add_option("model", opt.model, "Source model JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("embedding", opt.embedding, "Embedding JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--jf", opt.jf, "Chain strength J_F (> 0)")
      ->check(CLI::PositiveNumber);

  auto* pt = app.add_subcommand("pt", "Degenerate perturbation theory");
  pt->add_option("model", opt.model, "Model JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  pt->add_flag("--dump-matrix", opt.dump_matrix, "Emit effective matrices");
  add_embedding(pt);
  add_partition(pt);

  auto* validate = app.add_subcommand("validate", "Check the toy-model data");
  add_data_files(validate);

  auto* reproduce = app.add_subcommand("reproduce", "Write figure data as CSV");
  reproduce->add_option("figure", opt.figure, "fig2 | fig3a | fig3b")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3a", "fig3b"}));
  reproduce->add_option("--out", opt.out_path, "Output CSV path");
  reproduce->add_option("--steps", opt.steps, "RK4 step count override")
      ->check(CLI::PositiveNumber);
  add_data_files(reproduce);
  add_partition(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if ((*validate || *reproduce)) {
    if (opt.model.empty()) opt.model = default_model_path().string();
    if (opt.embedding.empty()) opt.embedding = default_embedding_path().string();
  }

  try {
    if (*solve) return cmd_solve(opt, out);
    if (*anneal) return cmd_anneal(opt, out);
    if (*embed) return cmd_embed(opt, out);
    if (*pt) return cmd_pt(opt, out);
    if (*validate) return cmd_validate(opt, out);
    if (*reproduce) return cmd_reproduce(opt, out, err);
  } catch (const AccuracyError& e) {
    err << "error: " << e.what() << "\n";
    return kAccuracyFailure;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace qafair::cli
