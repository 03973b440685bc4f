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

#include "qafair/pt.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qafair/error.hpp"

namespace qafair {

PerturbationSetup::PerturbationSetup(IsingModel m)
    : model(std::move(m)), diagonal(model.diagonal()) {
  manifold = enumerate_ground_states(model, diagonal);
}

EffectiveMatrix first_order_matrix(const PerturbationSetup& setup) {
  const auto& configs = setup.manifold.configs;
  const auto d = static_cast<Eigen::Index>(configs.size());
  EffectiveMatrix m;
  m.order = 1;
  m.basis = configs;
  m.entries = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      if (hamming_distance(configs[static_cast<std::size_t>(a)],
                           configs[static_cast<std::size_t>(b)]) == 1) {
        m.entries(a, b) = -1.0;
      }
    }
  }
  return m;
}

EffectiveMatrix second_order_matrix(const PerturbationSetup& setup,
                                    const std::vector<SpinConfig>& subspace) {
  const auto& manifold = setup.manifold;
  const int n = setup.model.num_spins();
  const auto d = static_cast<Eigen::Index>(subspace.size());
  for (const auto c : subspace) {
    if (!manifold.contains(c)) {
      throw InputError("second-order subspace config " + to_bitstring(c, n) +
                       " is not a ground state");
    }
  }

  EffectiveMatrix m;
  m.order = 2;
  m.basis = subspace;
  m.entries = Eigen::MatrixXd::Zero(d, d);
  // Walk V's support: k = m with one spin flipped, then k -> n is another
  // single flip, so n = m with spins i and j flipped (n = m when i == j).
  for (Eigen::Index a = 0; a < d; ++a) {
    const SpinConfig from = subspace[static_cast<std::size_t>(a)];
    for (int i = 0; i < n; ++i) {
      const SpinConfig k = from.flipped(i);
      if (manifold.contains(k)) continue;  // Q projects the manifold out
      const double denom = manifold.energy - setup.diagonal[k.bits];
      for (Eigen::Index b = 0; b < d; ++b) {
        const SpinConfig to = subspace[static_cast<std::size_t>(b)];
        if (hamming_distance(k, to) == 1) {
          // <m|V|k><k|V|n> = (-1)(-1)
          m.entries(a, b) += 1.0 / denom;
        }
      }
    }
  }
  return m;
}

MinimalEigenspace minimal_eigenspace(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver failed to converge");
  }
  MinimalEigenspace out;
  out.eigenvalues = solver.eigenvalues();
  out.minimal = out.eigenvalues(0);
  Eigen::Index g = 1;
  while (g < out.eigenvalues.size() &&
         out.eigenvalues(g) - out.minimal <= kDegeneracyTolerance) {
    ++g;
  }
  out.vectors = solver.eigenvectors().leftCols(g);
  return out;
}

namespace {

bool inversion_closed(const PerturbationSetup& setup) {
  if (setup.model.has_fields()) return false;
  const int n = setup.model.num_spins();
  for (const auto c : setup.manifold.configs) {
    if (!setup.manifold.contains(global_flip(c, n))) return false;
  }
  return true;
}

// Columns are orthonormal vectors in the config basis spanning the sector the
// search runs in.
Eigen::MatrixXd sector_basis(const PerturbationSetup& setup,
                             const std::vector<InversionClass>& classes,
                             bool symmetric) {
  const auto d = static_cast<Eigen::Index>(setup.manifold.degeneracy());
  if (!symmetric) return Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd basis =
      Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(classes.size()));
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const double w = 1.0 / std::sqrt(static_cast<double>(classes[k].members.size()));
    for (auto pos : classes[k].members) {
      basis(static_cast<Eigen::Index>(pos), static_cast<Eigen::Index>(k)) = w;
    }
  }
  return basis;
}

}  // namespace

PTResult perturbative_probabilities(const PerturbationSetup& setup) {
  if (setup.manifold.degeneracy() == 0) {
    throw InputError("empty ground manifold");
  }
  const int n = setup.model.num_spins();

  PTResult result;
  result.classes = fold_manifold(setup.manifold, n);
  result.symmetric_sector = inversion_closed(setup);
  result.first_order = first_order_matrix(setup);

  const Eigen::MatrixXd sector =
      sector_basis(setup, result.classes, result.symmetric_sector);
  const auto first =
      minimal_eigenspace(sector.transpose() * result.first_order.entries * sector);

  Eigen::MatrixXd vectors = sector * first.vectors;
  result.resolved_order = 1;
  result.minimal_eigenvalue = first.minimal;

  if (first.vectors.cols() > 1) {
    // P2: the minimal first-order eigenspace. W is built on the full
    // manifold and projected, since P2 need not be spanned by configs.
    auto second = second_order_matrix(setup, setup.manifold.configs);
    const Eigen::MatrixXd p2 = vectors;
    const auto level = minimal_eigenspace(p2.transpose() * second.entries * p2);
    vectors = p2 * level.vectors;
    result.resolved_order = 2;
    result.minimal_eigenvalue = level.minimal;
    result.second_order = std::move(second);
  }

  // Fix the global sign of each column so its largest entry is positive.
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }

  result.multiplicity = static_cast<std::size_t>(vectors.cols());
  result.ground_vectors = vectors;
  const double g = static_cast<double>(vectors.cols());
  result.probabilities.resize(setup.manifold.degeneracy());
  for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
    result.probabilities[static_cast<std::size_t>(r)] =
        vectors.row(r).squaredNorm() / g;
  }
  result.folded_probabilities.assign(result.classes.size(), 0.0);
  for (std::size_t k = 0; k < result.classes.size(); ++k) {
    for (auto pos : result.classes[k].members) {
      result.folded_probabilities[k] += result.probabilities[pos];
    }
  }
  return result;
}

}  // namespace qafair
