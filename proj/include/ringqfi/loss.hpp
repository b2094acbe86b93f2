// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ringqfi/operators.hpp"
#include "ringqfi/state_vector.hpp"

namespace ringqfi {

/// Binomial survival weights g^(N-nu) = C(N,nu) eta^(N-nu) (1-eta)^nu,
/// indexed by the number of lost particles nu = 0..N.
struct LossWeights {
  double eta = 1.0;
  std::vector<double> weights;

  int particle_count() const noexcept { return static_cast<int>(weights.size()) - 1; }
};

LossWeights loss_weights(int n_particles, double eta);

/// Unit-trace density operator on the (N - nu)-particle space, stored as a
/// mixture of unit vectors: rho = sum_i w_i |v_i><v_i|.
struct DensityBlock {
  int lost = 0;
  BasisPtr basis;
  Eigen::VectorXd weights;   ///< sums to 1
  Eigen::MatrixXcd vectors;  ///< columns are the unit vectors v_i

  std::size_t rank_bound() const noexcept { return static_cast<std::size_t>(vectors.cols()); }
  double trace() const { return weights.sum(); }
  Eigen::MatrixXcd dense() const;
};

/// The lossy state: blocks with non-zero weight, each on its own particle
/// number subspace.
struct MixedState {
  std::vector<DensityBlock> blocks;
  LossWeights weights;
};

inline constexpr double kComponentPruneThreshold = 1e-14;

/// Ladder bookkeeping for removing particles from states on one basis.
///
/// Holds the unrestricted bases with N, N-1, ..., 0 particles over the same
/// window and the annihilation operators between consecutive levels. The
/// block after nu losses has one component per multiset of lost modes,
/// a_{k_nu} ... a_{k_1}|psi>, weighted by its squared norm times the number
/// of distinct loss orderings of the multiset.
class LossChannel {
 public:
  explicit LossChannel(BasisPtr top, std::size_t dimension_cap = kDefaultDimensionCap);

  int particle_count() const noexcept { return top_->particle_count(); }
  const BasisPtr& top_basis() const noexcept { return top_; }
  /// Basis with N - nu particles.
  const BasisPtr& basis_after(int lost) const { return levels_.at(static_cast<std::size_t>(lost)); }

  DensityBlock block(const StateVector& psi, int lost) const;
  std::vector<DensityBlock> all_blocks(const StateVector& psi, int threads = 1) const;

 private:
  struct Partial {
    Eigen::VectorXcd vector;  ///< unnormalized a_{k_j}...a_{k_1}|psi>
    int last_mode = -1;       ///< highest annihilated mode index so far
    int run = 0;              ///< how many times last_mode occurs
    double orderings = 1.0;   ///< distinct orderings of the multiset
  };

  std::vector<Partial> next_level(const std::vector<Partial>& current, int level, int threads) const;
  DensityBlock to_block(const std::vector<Partial>& partials, int lost) const;

  BasisPtr top_;
  std::vector<BasisPtr> levels_;
  /// ladders_[j][mode]: annihilation from levels_[j] to levels_[j+1].
  std::vector<std::vector<SparseMatrix>> ladders_;
};

DensityBlock apply_loss(const StateVector& psi, int lost);
MixedState lossy_state(const StateVector& psi, double eta, int threads = 1);

/// Multiplies every component of every block by exp(i K phi).
MixedState evolve_phase(const MixedState& state, double phi);
DensityBlock evolve_phase(const DensityBlock& block, double phi);

/// Expectation value of the particle number of the full lossy state.
double mean_particle_number(const MixedState& state);

}  // namespace ringqfi
