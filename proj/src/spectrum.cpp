// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/errors.hpp"

namespace ringqfi {

namespace {

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index best = 0;
  double mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // strict comparison with a small margin keeps the choice stable under rounding
    if (std::abs(v(i)) > mag * (1.0 + 1e-9)) {
      mag = std::abs(v(i));
      best = i;
    }
  }
  if (mag > 0.0) v *= std::conj(v(best)) / mag;
}

// Orthonormalizes `block` against the first `used` columns of `basis` and
// appends the surviving columns. Returns the number appended.
Eigen::Index append_orthonormal(Eigen::MatrixXcd& basis, Eigen::Index used, Eigen::MatrixXcd block) {
  const Eigen::Index capacity = basis.cols();
  Eigen::Index added = 0;
  for (Eigen::Index c = 0; c < block.cols() && used + added < capacity; ++c) {
    Eigen::VectorXcd v = block.col(c);
    const double before = v.norm();
    if (!(before > 0.0)) continue;
    const Eigen::Index have = used + added;
    for (int pass = 0; pass < 2; ++pass) {
      if (have > 0) {
        const Eigen::VectorXcd coeff = basis.leftCols(have).adjoint() * v;
        v.noalias() -= basis.leftCols(have) * coeff;
      }
    }
    const double after = v.norm();
    if (after <= 1e-10 * before) continue;
    basis.col(have) = v / after;
    ++added;
  }
  return added;
}

EigenResult dense_ground_states(const SparseOperator& h, int count, const EigenOptions& options) {
  const auto dec = dense_eigendecomposition(h.dense(), options.dense_cap);
  EigenResult result;
  result.used_dense = true;
  result.norm_bound = h.norm_bound();
  const int take = std::min<int>(count, static_cast<int>(dec.eigenvalues.size()));
  for (int i = 0; i < take; ++i) {
    Eigen::VectorXcd v = dec.eigenvectors.col(i);
    fix_phase(v);
    const double lambda = dec.eigenvalues(i);
    result.residuals.push_back((h.apply(v) - lambda * v).norm());
    result.eigenvalues.push_back(lambda);
    result.eigenvectors.push_back(StateVector::normalized(h.basis_in_ptr(), v));
  }
  return result;
}

EigenResult iterative_ground_states(const SparseOperator& h, int count, const EigenOptions& options) {
  const Eigen::Index n = h.rows();
  const Eigen::Index block = std::min<Eigen::Index>(n, std::max(count + 2, 4));
  Eigen::Index krylov = options.krylov_dimension > 0 ? options.krylov_dimension
                                                     : std::max<Eigen::Index>(8 * block, 64);
  krylov = std::min(krylov, n);
  const Eigen::Index keep = std::min<Eigen::Index>(krylov - block, 2 * block);

  const double norm = h.norm_bound();
  const double target = options.tolerance * std::max(norm, 1e-300);

  Eigen::MatrixXcd basis(n, krylov);
  Eigen::MatrixXcd image(n, krylov);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  auto random_block = [&](Eigen::Index cols) {
    Eigen::MatrixXcd r(n, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index i = 0; i < n; ++i) r(i, c) = Complex(gauss(rng), gauss(rng));
    }
    return r;
  };

  Eigen::Index used = append_orthonormal(basis, 0, random_block(block));
  for (Eigen::Index c = 0; c < used; ++c) image.col(c) = h.matrix() * basis.col(c);
  Eigen::Index expand_from = 0;
  Eigen::Index expand_size = used;

  EigenResult result;
  result.norm_bound = norm;
  double worst = 0.0;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    while (used < krylov) {
      Eigen::Index added =
          append_orthonormal(basis, used, image.middleCols(expand_from, expand_size));
      if (added == 0) {
        // invariant subspace found; continue from fresh directions
        added = append_orthonormal(basis, used, random_block(std::min(block, krylov - used)));
        if (added == 0) break;
      }
      for (Eigen::Index c = used; c < used + added; ++c) image.col(c) = h.matrix() * basis.col(c);
      expand_from = used;
      expand_size = added;
      used += added;
    }

    Eigen::MatrixXcd projected = basis.leftCols(used).adjoint() * image.leftCols(used);
    projected = (0.5 * (projected + projected.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> small(projected);
    if (small.info() != Eigen::Success) throw ConvergenceError("projected eigenproblem failed", 0.0);

    const Eigen::Index ritz = std::min(used, std::max(keep, block));
    const Eigen::MatrixXcd vectors = basis.leftCols(used) * small.eigenvectors().leftCols(ritz);
    const Eigen::MatrixXcd images = image.leftCols(used) * small.eigenvectors().leftCols(ritz);

    worst = 0.0;
    const Eigen::Index wanted = std::min<Eigen::Index>(count, ritz);
    std::vector<double> residuals(static_cast<std::size_t>(wanted));
    for (Eigen::Index i = 0; i < wanted; ++i) {
      residuals[static_cast<std::size_t>(i)] =
          (images.col(i) - small.eigenvalues()(i) * vectors.col(i)).norm();
      worst = std::max(worst, residuals[static_cast<std::size_t>(i)]);
    }
    result.restarts = restart;
    if (worst <= target || used == n) {
      for (Eigen::Index i = 0; i < wanted; ++i) {
        Eigen::VectorXcd v = vectors.col(i);
        v.normalize();
        fix_phase(v);
        result.eigenvalues.push_back(small.eigenvalues()(i));
        result.residuals.push_back((h.apply(v) - small.eigenvalues()(i) * v).norm());
        result.eigenvectors.emplace_back(h.basis_in_ptr(), v);
      }
      return result;
    }

    // thick restart on the lowest Ritz vectors; expand from the wanted block
    basis.leftCols(ritz) = vectors;
    image.leftCols(ritz) = images;
    used = ritz;
    expand_from = 0;
    expand_size = std::min(block, ritz);
  }
  throw ConvergenceError(
      fmt::format("block Lanczos did not converge after {} restarts (residual {:.3e}, target {:.3e})",
                  options.max_restarts, worst, target),
      worst);
}

}  // namespace

DenseEigen dense_eigendecomposition(const Eigen::MatrixXcd& a, std::size_t dense_cap) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense eigendecomposition needs a square matrix");
  if (static_cast<std::size_t>(a.rows()) > dense_cap) {
    throw DimensionCapError(fmt::format("dense dimension {} exceeds cap {}", a.rows(), dense_cap));
  }
  DenseEigen out;
  if (a.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

EigenResult ground_states(const SparseOperator& h, int count, const EigenOptions& options) {
  if (h.rows() != h.cols() || !h.basis_in().same_space(h.basis_out())) {
    throw std::invalid_argument("ground_states needs a square operator on one basis");
  }
  if (count < 1) throw std::invalid_argument("eigenpair count must be positive");
  const auto n = static_cast<std::size_t>(h.rows());
  bool dense = options.method == EigenMethod::dense;
  if (options.method == EigenMethod::automatic) {
    dense = n <= options.dense_threshold || n <= static_cast<std::size_t>(count) + 4;
  }
  if (options.method == EigenMethod::iterative && n <= static_cast<std::size_t>(count)) dense = true;
  EigenResult result = dense ? dense_ground_states(h, count, options) : iterative_ground_states(h, count, options);
  if (result.eigenvalues.size() >= 2) {
    const double gap = result.eigenvalues[1] - result.eigenvalues[0];
    result.degenerate = gap < options.degeneracy_tolerance * result.norm_bound;
  }
  return result;
}

}  // namespace ringqfi
