// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace ringqfi {

/// Closed-form loss table of the fermionic superposition: after nu losses
/// the block QFI is (N - nu) N, and the weighted total is N^2 eta.
struct FermionLossTable {
  int n_particles = 0;
  double eta = 1.0;
  std::vector<double> block_qfi;  ///< indexed by nu
  std::vector<double> weights;    ///< binomial g^(N-nu), indexed by nu
  double total = 0.0;
};

/// Requires even N >= 2 and eta in [0, 1].
FermionLossTable fermion_qfi_exact(int n_particles, double eta);

}  // namespace ringqfi
