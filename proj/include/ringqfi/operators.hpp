// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ringqfi/fock.hpp"
#include "ringqfi/types.hpp"

namespace ringqfi {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Operator mapping states on basis_in() to states on basis_out().
///
/// Rows index basis_out(), columns index basis_in(). Operators flagged
/// Hermitian were assembled from conjugate pairs, so A == A^dagger holds
/// exactly, not just to rounding.
class SparseOperator {
 public:
  SparseOperator(BasisPtr basis_in, BasisPtr basis_out, SparseMatrix matrix, bool hermitian = false);

  const FockBasis& basis_in() const noexcept { return *in_; }
  const FockBasis& basis_out() const noexcept { return *out_; }
  const BasisPtr& basis_in_ptr() const noexcept { return in_; }
  const BasisPtr& basis_out_ptr() const noexcept { return out_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  bool hermitian() const noexcept { return hermitian_; }
  Eigen::Index rows() const noexcept { return matrix_.rows(); }
  Eigen::Index cols() const noexcept { return matrix_.cols(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  SparseOperator adjoint() const;
  Eigen::MatrixXcd dense() const;

  /// True if every stored entry lies on the diagonal.
  bool is_diagonal() const;
  Eigen::VectorXd real_diagonal() const;

  /// Max absolute row sum; an upper bound on the spectral norm.
  double norm_bound() const;

  /// Coordinate-list text: a "# rows cols nnz" header, then one
  /// "row col re im" line per stored entry in row-major order.
  void write_coo(std::ostream& os) const;

 private:
  BasisPtr in_;
  BasisPtr out_;
  SparseMatrix matrix_;
  bool hermitian_ = false;
};

/// Dimensionless ring parameters in units hbar = 1, E0 = 1 by default.
struct HamiltonianParams {
  double e0 = 1.0;
  double omega = std::numbers::pi;  ///< stirring phase
  double b_tilde = 0.0;             ///< barrier b / (L E0)
  double g_tilde = 0.0;             ///< contact coupling g / (L E0)
  double delta_omega = 0.0;         ///< kick phase used by H'
  /// Optional effective coupling per mode count M, overriding g_tilde for
  /// truncated bases.
  std::map<int, double> effective_coupling;

  double coupling_for(int mode_count) const;

  /// 0 < b <= 0.1 * g sqrt(N)/2: barrier splits the K = 0 / K = N pair.
  bool superposition_regime(int n_particles) const;
  /// b >= 10 * g sqrt(N)/2: barrier dominates, particles decouple.
  bool unentangled_regime(int n_particles) const;
};

/// Annihilation of mode k, from an N-particle basis into an (N-1)-particle
/// basis over the same window. Fermionic signs use the ascending-k creation
/// order: a_k picks up (-1)^(number of occupied modes k' < k).
SparseOperator annihilate(const BasisPtr& basis_n, const BasisPtr& basis_n_minus_1, int k);

/// Creation of mode k, from N-1 to N particles (adjoint of annihilate).
SparseOperator create(const BasisPtr& basis_n_minus_1, const BasisPtr& basis_n, int k);

/// Total angular momentum L = sum_k k n_k (hbar = 1).
SparseOperator angular_momentum(const BasisPtr& basis);

/// Ring Hamiltonian: kinetic sum_k E0 (k - Omega/2pi)^2 n_k, point barrier
/// b sum_{k1,k2} a+_{k1} a_{k2}, and contact interaction
/// (g/2) sum a+_{k1} a+_{k2} a_{k1-q} a_{k2+q}. Terms touching modes outside
/// the window are dropped.
SparseOperator build_hamiltonian(const BasisPtr& basis, const HamiltonianParams& params,
                                 int threads = 1);

/// Diagonal post-kick Hamiltonian sum_k E0 (k - 1/2 + dOmega/2pi)^2 n_k.
SparseOperator build_hprime(const BasisPtr& basis, const HamiltonianParams& params);

}  // namespace ringqfi
