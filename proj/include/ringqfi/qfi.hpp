// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "ringqfi/loss.hpp"
#include "ringqfi/operators.hpp"
#include "ringqfi/state_vector.hpp"

namespace ringqfi {

/// Pairs with lambda_i + lambda_j at or below this floor drop out of the
/// SLD sum.
inline constexpr double kSldEigenvalueFloor = 1e-12;

/// 4 Var(L) for the angular momentum generator.
double qfi_pure(const StateVector& psi);
/// 4 Var(G) for a generator diagonal in the Fock basis.
double qfi_pure(const StateVector& psi, const SparseOperator& generator);

struct BlockQfi {
  double value = 0.0;
  std::size_t components = 0;
  std::size_t span_rank = 0;         ///< dimension of the working subspace
  bool rank_deficient = false;       ///< span smaller than 2 x components
  std::size_t null_eigenvalues = 0;  ///< eigenvalues of rho below the floor
};

/// QFI of a unit-trace block under rho(phi) = e^{iG phi} rho e^{-iG phi}.
///
/// Works in the span of the components and G applied to them, which holds
/// every eigenvector of rho with non-zero eigenvalue and the whole of
/// rho' = i[G, rho]. In the eigenbasis of the projected rho,
/// F = sum_{ij} 2 (lambda_i - lambda_j)^2 / (lambda_i + lambda_j) |G_ij|^2.
BlockQfi qfi_mixed_block(const DensityBlock& block, const SparseOperator& generator);
BlockQfi qfi_mixed_block(const DensityBlock& block);

struct QfiReport {
  double eta = 1.0;
  std::vector<double> block_qfi;  ///< F_Q^(N-nu), indexed by nu
  std::vector<double> weights;    ///< g^(N-nu), indexed by nu
  double total = 0.0;
  std::optional<double> delta_phi;  ///< 1/sqrt(total); absent when total is 0
  std::vector<std::size_t> span_ranks;
  std::size_t null_eigenvalues = 0;
};

nlohmann::json to_json(const QfiReport& report);

/// Per-block QFI values of a state, computed once and reused for any eta.
class LossyQfi {
 public:
  explicit LossyQfi(const StateVector& psi, int threads = 1);

  int particle_count() const noexcept { return static_cast<int>(blocks_.size()) - 1; }
  const std::vector<BlockQfi>& blocks() const noexcept { return blocks_; }
  QfiReport report(double eta) const;

 private:
  std::vector<BlockQfi> blocks_;
};

QfiReport qfi_lossy(const StateVector& psi, double eta, int threads = 1);
std::vector<QfiReport> qfi_lossy_grid(const StateVector& psi, std::span<const double> etas, int threads = 1);

/// Projective measurement families, one per number of lost particles; an
/// empty family means that block is not measured.
using MeasurementFamilies = std::vector<std::vector<StateVector>>;

/// Classical Fisher information of measuring the lossy, phase-evolved state
/// in the given families. Each block contributes sum_x (dp_x)^2 / p_x with
/// dp_x = <x| i[L, rho] |x>, plus the complement outcome when a family does
/// not span its block. Outcomes with p_x < 1e-14 are skipped.
double cfi_projective(const StateVector& psi, double eta, double phi, const MeasurementFamilies& families,
                      double generator_offset = 0.0);

/// Every Fock state of `basis`, i.e. a measurement of L itself.
std::vector<StateVector> occupation_measurement(const BasisPtr& basis);

}  // namespace ringqfi
