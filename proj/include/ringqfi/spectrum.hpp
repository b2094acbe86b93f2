// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ringqfi/operators.hpp"
#include "ringqfi/state_vector.hpp"

namespace ringqfi {

enum class EigenMethod { automatic, iterative, dense };

struct EigenOptions {
  /// Residual bound ||Hv - lambda v|| relative to the operator norm bound.
  double tolerance = 1e-10;
  int max_restarts = 400;
  /// Krylov basis size before a restart; 0 picks one from the block size.
  int krylov_dimension = 0;
  std::uint64_t seed = 0x5eed;
  std::size_t dense_cap = 4096;
  /// Dimensions at or below this use the dense solver in automatic mode.
  std::size_t dense_threshold = 400;
  /// Relative gap below which the two lowest levels count as degenerate.
  double degeneracy_tolerance = 1e-8;
  EigenMethod method = EigenMethod::automatic;
};

struct EigenResult {
  std::vector<double> eigenvalues;  ///< ascending
  std::vector<StateVector> eigenvectors;
  std::vector<double> residuals;
  double norm_bound = 0.0;
  bool degenerate = false;
  int restarts = 0;
  bool used_dense = false;
};

/// Lowest `count` eigenpairs of a Hermitian operator.
///
/// The iterative path is a thick-restarted block Lanczos iteration with
/// full reorthogonalization. The block holds at least two vectors beyond
/// `count`, so exactly degenerate levels are resolved as long as their
/// multiplicity fits in the block. Eigenvector phases are fixed so the
/// largest-modulus amplitude is real and positive.
EigenResult ground_states(const SparseOperator& h, int count, const EigenOptions& options = {});

struct DenseEigen {
  Eigen::VectorXd eigenvalues;    ///< ascending
  Eigen::MatrixXcd eigenvectors;  ///< columns, orthonormal
};

DenseEigen dense_eigendecomposition(const Eigen::MatrixXcd& a, std::size_t dense_cap = 4096);

}  // namespace ringqfi
