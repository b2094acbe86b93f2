// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/analytic_fermion.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/loss.hpp"

namespace ringqfi {

FermionLossTable fermion_qfi_exact(int n_particles, double eta) {
  if (n_particles < 2 || n_particles % 2 != 0) {
    throw std::invalid_argument(fmt::format("fermionic superposition needs even N >= 2, got {}", n_particles));
  }
  FermionLossTable table;
  table.n_particles = n_particles;
  table.eta = eta;
  table.weights = loss_weights(n_particles, eta).weights;
  for (int nu = 0; nu <= n_particles; ++nu) {
    // one particle carries the superposition; it survives with probability (N - nu)/N
    const double f = static_cast<double>(n_particles - nu) * n_particles;
    table.block_qfi.push_back(f);
    table.total += table.weights[static_cast<std::size_t>(nu)] * f;
  }
  return table;
}

}  // namespace ringqfi
