// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "ringqfi/errors.hpp"

namespace ringqfi {

namespace {

Occupation two_mode_occupation(const FockBasis& basis, int in_zero, int in_one) {
  Occupation n(static_cast<std::size_t>(basis.mode_count()), 0);
  n[static_cast<std::size_t>(basis.window().mode_index(0))] = in_zero;
  n[static_cast<std::size_t>(basis.window().mode_index(1))] = in_one;
  return n;
}

std::size_t require_index(const FockBasis& basis, const Occupation& n) {
  auto idx = basis.index_of(n);
  if (!idx) throw std::invalid_argument("occupation vector is not in the basis");
  return *idx;
}

}  // namespace

StateVector fermionic_superposition(const ModeWindow& window, int n_particles, std::size_t dimension_cap) {
  if (n_particles < 2 || n_particles % 2 != 0) {
    throw std::invalid_argument(fmt::format("fermionic superposition needs even N >= 2, got {}", n_particles));
  }
  const int half = n_particles / 2;
  if (!window.contains(-half) || !window.contains(half)) {
    throw std::invalid_argument(fmt::format("window [{}, {}] must contain k = -{} .. {}", window.k_min,
                                            window.k_max, half, half));
  }
  auto basis = make_basis(window, n_particles, Statistics::fermionic, std::nullopt, dimension_cap);
  Occupation lower(static_cast<std::size_t>(window.mode_count()), 0);
  Occupation upper = lower;
  for (int k = -half; k <= half - 1; ++k) lower[static_cast<std::size_t>(window.mode_index(k))] = 1;
  for (int k = -half + 1; k <= half; ++k) upper[static_cast<std::size_t>(window.mode_index(k))] = 1;
  return binary_superposition(basis, lower, upper);
}

StateVector two_mode_state(const BasisPtr& basis, std::span<const Complex> coefficients) {
  if (basis->statistics() != Statistics::bosonic) {
    throw std::invalid_argument("two-mode states need a bosonic basis");
  }
  if (!basis->window().contains(0) || !basis->window().contains(1)) {
    throw std::invalid_argument("two-mode states need modes k = 0 and k = 1 in the window");
  }
  const int n = basis->particle_count();
  if (coefficients.size() != static_cast<std::size_t>(n + 1)) {
    throw std::invalid_argument(fmt::format("expected {} two-mode coefficients, got {}", n + 1, coefficients.size()));
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
  for (int m = 0; m <= n; ++m) {
    const Complex c = coefficients[static_cast<std::size_t>(m)];
    if (c == Complex(0.0, 0.0)) continue;
    amps(static_cast<Eigen::Index>(require_index(*basis, two_mode_occupation(*basis, n - m, m)))) = c;
  }
  return StateVector::normalized(basis, std::move(amps));
}

StateVector two_mode_state(const BasisPtr& basis, std::span<const double> coefficients) {
  std::vector<Complex> c(coefficients.begin(), coefficients.end());
  return two_mode_state(basis, std::span<const Complex>(c));
}

StateVector noon_state(const BasisPtr& basis) {
  const int n = basis->particle_count();
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  c.front() = 1.0;
  c.back() = 1.0;
  return two_mode_state(basis, std::span<const double>(c));
}

StateVector unentangled_state(const BasisPtr& basis) {
  const int n = basis->particle_count();
  std::vector<double> c(static_cast<std::size_t>(n + 1));
  // sqrt(C(N,m) / 2^N) via log-gamma to stay finite for large N
  for (int m = 0; m <= n; ++m) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    c[static_cast<std::size_t>(m)] = std::exp(0.5 * (log_binom - n * std::numbers::ln2));
  }
  return two_mode_state(basis, std::span<const double>(c));
}

StateVector binary_superposition(const BasisPtr& basis, const Occupation& first, const Occupation& second) {
  const auto i = require_index(*basis, first);
  const auto j = require_index(*basis, second);
  if (i == j) throw std::invalid_argument("binary superposition needs two distinct states");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
  amps(static_cast<Eigen::Index>(i)) = std::numbers::sqrt2 / 2.0;
  amps(static_cast<Eigen::Index>(j)) = std::numbers::sqrt2 / 2.0;
  return StateVector::normalized(basis, std::move(amps));
}

StateVector evolve_phase(const StateVector& state, double phi) {
  Eigen::VectorXcd amps = state.amplitudes();
  const auto& basis = state.basis();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    amps(i) *= std::polar(1.0, basis.angular_momentum(static_cast<std::size_t>(i)) * phi);
  }
  return StateVector(state.basis_ptr(), std::move(amps));
}

double sector_population(const StateVector& state, int k_total) {
  double p = 0.0;
  const auto& amps = state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (state.basis().angular_momentum(static_cast<std::size_t>(i)) == k_total) p += std::norm(amps(i));
  }
  return p;
}

double balanced_stirring_phase(const ModeWindow& window, int n_particles, const HamiltonianParams& params,
                               const TgOptions& options) {
  if (n_particles < 1) throw std::invalid_argument("stirring phase balance needs N >= 1");
  HamiltonianParams free = params;
  free.omega = 0.0;
  free.b_tilde = 0.0;
  auto sector_energy = [&](int k_total) {
    auto basis = make_basis(window, n_particles, Statistics::bosonic, k_total);
    const auto h = build_hamiltonian(basis, free, options.threads);
    return ground_states(h, 1, options.eigen).eigenvalues.front();
  };
  // E_K(Omega) = E_K(0) - (Omega/pi) K E0 + const
  const double e_zero = sector_energy(0);
  const double e_full = sector_energy(n_particles);
  return std::numbers::pi * (e_full - e_zero) / (params.e0 * n_particles);
}

TgPreparation tg_ground_state(const ModeWindow& window, int n_particles, const HamiltonianParams& params,
                              const TgOptions& options) {
  if (n_particles < 1) throw std::invalid_argument("TG preparation needs N >= 1");
  if (params.coupling_for(window.mode_count()) < 0.0) throw std::invalid_argument("g must be non-negative");
  if (!window.contains(0) || !window.contains(1)) {
    throw std::invalid_argument("TG preparation needs modes k = 0 and k = 1 in the window");
  }
  HamiltonianParams used = params;
  if (options.balance_sectors) used.omega = balanced_stirring_phase(window, n_particles, params, options);

  auto basis = make_basis(window, n_particles, Statistics::bosonic);
  const auto h = build_hamiltonian(basis, used, options.threads);
  const auto spectrum = ground_states(h, 2, options.eigen);
  const double gap = spectrum.eigenvalues.size() > 1 ? spectrum.eigenvalues[1] - spectrum.eigenvalues[0] : 0.0;
  if (spectrum.degenerate) {
    throw DegenerateGroundStateError(
        fmt::format("ground state is degenerate (gap {:.3e}); a finite barrier is needed", gap), gap);
  }

  TgPreparation out{spectrum.eigenvectors.front()};
  out.energy = spectrum.eigenvalues.front();
  out.gap = gap;
  out.omega = used.omega;
  out.population_zero = sector_population(out.state, 0);
  out.population_full = sector_population(out.state, n_particles);
  const double overlap = (std::sqrt(out.population_zero) + std::sqrt(out.population_full)) / std::numbers::sqrt2;
  out.fidelity = overlap * overlap;
  out.dimension = basis->dimension();
  for (double r : spectrum.residuals) out.max_residual = std::max(out.max_residual, r);
  out.restarts = spectrum.restarts;
  return out;
}

}  // namespace ringqfi
