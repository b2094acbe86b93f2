// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "ringqfi/operators.hpp"
#include "ringqfi/spectrum.hpp"
#include "ringqfi/state_vector.hpp"

namespace ringqfi {

/// (|-n> + |n>)/sqrt(2) for N = 2n fermions, where |-n> fills k = -n..n-1
/// and |n> fills k = -n+1..n. Built on an unrestricted fermionic basis over
/// `window`, which must contain [-n, n].
StateVector fermionic_superposition(const ModeWindow& window, int n_particles,
                                    std::size_t dimension_cap = kDefaultDimensionCap);

/// sum_m c_m |N-m particles in k=0, m in k=1>, normalized. The basis must be
/// bosonic and contain modes 0 and 1.
StateVector two_mode_state(const BasisPtr& basis, std::span<const Complex> coefficients);
StateVector two_mode_state(const BasisPtr& basis, std::span<const double> coefficients);

/// [(a+_0)^N + (a+_1)^N]|vac>, normalized.
StateVector noon_state(const BasisPtr& basis);

/// (a+_0 + a+_1)^N |vac>, normalized: binomial amplitudes sqrt(C(N,m)/2^N).
StateVector unentangled_state(const BasisPtr& basis);

/// (|first> + |second>)/sqrt(2) for two distinct basis states.
StateVector binary_superposition(const BasisPtr& basis, const Occupation& first, const Occupation& second);

/// Multiplies each amplitude by exp(i K phi).
StateVector evolve_phase(const StateVector& state, double phi);

struct TgOptions {
  /// Replace the stirring phase by the value at which the K = 0 and K = N
  /// sector ground energies coincide at zero barrier. On a reflection-
  /// symmetric window this is exactly pi; on other windows it cancels the
  /// truncation imbalance between the two branches.
  bool balance_sectors = true;
  EigenOptions eigen{};
  int threads = 1;
};

struct TgPreparation {
  StateVector state;
  double energy = 0.0;
  double gap = 0.0;                ///< E1 - E0
  double omega = 0.0;              ///< stirring phase actually used
  double population_zero = 0.0;    ///< weight in the K = 0 sector
  double population_full = 0.0;    ///< weight in the K = N sector
  double fidelity = 0.0;           ///< overlap^2 with the balanced K = 0 / K = N superposition
  std::size_t dimension = 0;
  double max_residual = 0.0;
  int restarts = 0;
};

/// Stirring phase at which the K = 0 and K = N sector ground energies of the
/// barrier-free Hamiltonian are equal.
double balanced_stirring_phase(const ModeWindow& window, int n_particles, const HamiltonianParams& params,
                               const TgOptions& options = {});

/// Ground state of the stirred ring. Throws DegenerateGroundStateError if
/// the two lowest levels are degenerate (e.g. at zero barrier).
TgPreparation tg_ground_state(const ModeWindow& window, int n_particles, const HamiltonianParams& params,
                              const TgOptions& options = {});

/// Weight of `state` in the sector with total angular momentum `k_total`.
double sector_population(const StateVector& state, int k_total);

}  // namespace ringqfi
