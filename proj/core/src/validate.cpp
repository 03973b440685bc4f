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

#include "qafair/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qafair/error.hpp"
#include "qafair/pt.hpp"

namespace qafair {

Eigen::MatrixXd toy_closed_form(double jf) {
  const double s = (2.0 * jf + 5.0) / (jf + 2.0);
  const double c = (4.0 * jf + 3.0) / (3.0 * jf);
  const double f = 1.0 / jf;
  Eigen::MatrixXd m(6, 6);
  // clang-format off
  m << s,   1.0, 0.0, 0.0, 0.0, 1.0,
       1.0, c,   f,   0.0, 0.0, 0.0,
       0.0, f,   c,   1.0, 0.0, 0.0,
       0.0, 0.0, 1.0, s,   1.0, 0.0,
       0.0, 0.0, 0.0, 1.0, c,   f,
       1.0, 0.0, 0.0, 0.0, f,   c;
  // clang-format on
  return m;
}

std::optional<PermutationMatch> match_up_to_permutation(
    const Eigen::MatrixXd& actual, const Eigen::MatrixXd& expected,
    double tol) {
  const auto d = static_cast<std::size_t>(expected.rows());
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols() ||
      expected.rows() != expected.cols()) {
    return std::nullopt;
  }
  std::vector<std::size_t> perm(d);
  std::vector<bool> used(d, false);
  std::optional<PermutationMatch> best;

  auto entry = [&](std::size_t a, std::size_t b) {
    return std::abs(actual(static_cast<Eigen::Index>(perm[a]),
                           static_cast<Eigen::Index>(perm[b])) -
                    expected(static_cast<Eigen::Index>(a),
                             static_cast<Eigen::Index>(b)));
  };

  std::function<void(std::size_t, double)> place = [&](std::size_t a,
                                                       double worst) {
    if (a == d) {
      if (!best || worst < best->max_deviation) best = {perm, worst};
      return;
    }
    for (std::size_t cand = 0; cand < d; ++cand) {
      if (used[cand]) continue;
      perm[a] = cand;
      double w = worst;
      bool ok = true;
      for (std::size_t b = 0; b <= a && ok; ++b) {
        w = std::max({w, entry(a, b), entry(b, a)});
        ok = w <= tol;
      }
      if (!ok) continue;
      used[cand] = true;
      place(a + 1, w);
      used[cand] = false;
    }
  };
  place(0, 0.0);
  return best;
}

bool ValidationReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const ValidationClause& c) { return c.passed; });
}

namespace {

std::string jf_tag(double jf) {
  std::ostringstream ss;
  ss << "J_F=" << jf;
  return ss.str();
}

std::string describe_mismatch(const Eigen::MatrixXd& actual,
                              const Eigen::MatrixXd& expected) {
  std::ostringstream ss;
  Eigen::VectorXd a = actual.diagonal();
  Eigen::VectorXd e = expected.diagonal();
  std::sort(a.data(), a.data() + a.size());
  std::sort(e.data(), e.data() + e.size());
  const Eigen::IOFormat row(10, Eigen::DontAlignCols, ", ", ", ", "", "", "[",
                            "]");
  ss << "no basis ordering matches; sorted diagonal " << a.transpose().format(row)
     << " vs expected " << e.transpose().format(row);
  return ss.str();
}

}  // namespace

ValidationReport validate_toy_model(const IsingModel& source,
                                    const EmbeddingTemplate& embedding,
                                    std::span<const double> chain_strengths) {
  ValidationReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.clauses.push_back({std::move(name), ok, std::move(detail)});
  };

  const PerturbationSetup source_setup(source);
  const auto d_source = source_setup.manifold.degeneracy();
  add("(a) source manifold has 6 ground states", d_source == 6,
      "d = " + std::to_string(d_source) + ", E_0 = " +
          std::to_string(source_setup.manifold.energy));

  for (double jf : chain_strengths) {
    const std::string tag = jf_tag(jf);
    EmbeddedModel embedded = [&] {
      try {
        return apply_embedding(source, embedding.with_chain_strength(jf));
      } catch (const InputError& e) {
        throw InputError(std::string("embedding rejected: ") + e.what());
      }
    }();

    const auto check = verify_embedding(embedded);
    std::string notes = "d = " + std::to_string(check.embedded_degeneracy);
    for (const auto& n : check.notes) notes += "; " + n;
    add("(b) " + tag + ": embedded manifold has 6 states with intact chains, "
                       "bijective onto source",
        check.embedded_degeneracy == 6 && check.ok(), notes);

    const PerturbationSetup setup(embedded.model);
    const auto first = first_order_matrix(setup);
    const double first_norm = first.entries.cwiseAbs().maxCoeff();
    add("(c) " + tag + ": first-order matrix vanishes on embedded manifold",
        first_norm == 0.0,
        "max |P1 V P1| = " + std::to_string(first_norm));

    const auto second = second_order_matrix(setup, setup.manifold.configs);
    const Eigen::MatrixXd neg_w = -second.entries;
    const Eigen::MatrixXd expected = toy_closed_form(jf);
    const auto match = match_up_to_permutation(neg_w, expected, 1e-9);
    std::string detail;
    if (match) {
      std::ostringstream ss;
      ss << "max |delta| = " << match->max_deviation << "; order";
      for (auto p : match->permutation) {
        ss << ' '
           << to_bitstring(setup.manifold.configs[p], setup.model.num_spins());
      }
      detail = ss.str();
    } else if (neg_w.rows() != 6) {
      detail = "-P2 W P2 is " + std::to_string(neg_w.rows()) + "x" +
               std::to_string(neg_w.cols()) + ", expected 6x6";
    } else {
      detail = describe_mismatch(neg_w, expected);
    }
    add("(d) " + tag + ": -P2 W P2 equals closed form up to ordering",
        match.has_value(), detail);
  }

  const auto source_first = first_order_matrix(source_setup);
  const auto pairs = ground_connectivity(source_setup.manifold, 1);
  std::size_t edges = 0;
  for (const auto& adj : pairs) edges += adj.size();
  add("(e) first-order matrix is non-zero on source manifold",
      source_first.entries.cwiseAbs().maxCoeff() > 0.0,
      std::to_string(edges / 2) + " distance-1 ground-state pairs");
  return report;
}

}  // namespace qafair
