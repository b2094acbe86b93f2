// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations. Nothing here calls the library's
// basis enumeration, ladder operators, loss channel or SLD code, so the
// tests can compare the two paths.

#pragma once

#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Occ = std::vector<int>;

/// Every occupation vector over `modes` modes with `n` particles, found by
/// scanning all of {0..n}^modes (or {0,1}^modes for fermions).
std::vector<Occ> all_states(int modes, int n, bool fermionic);

/// Dense annihilation matrix of mode index `j` from `from` to `to`, with the
/// ascending-mode sign convention for fermions.
Eigen::MatrixXcd annihilation(const std::vector<Occ>& from, const std::vector<Occ>& to, int j, bool fermionic);

/// Dense Kraus channel rho -> sum_k a_k rho a_k^dag / N applied `lost` times.
/// `levels[i]` holds the states with N - i particles.
Eigen::MatrixXcd lose(const Eigen::MatrixXcd& rho, const std::vector<std::vector<Occ>>& levels, int lost,
                      bool fermionic);

/// SLD quantum Fisher information of a full density matrix under the
/// diagonal generator `l`.
double sld_qfi(const Eigen::MatrixXcd& rho, const Eigen::VectorXd& l);

/// Total angular momentum of each state for modes k_min, k_min + 1, ...
Eigen::VectorXd momenta(const std::vector<Occ>& states, int k_min);

/// C(n, k) as a double.
double binomial(int n, int k);

/// Lossy QFI of sum_m c_m |N-m, m> on modes k = 0, 1 using dense two-mode
/// ladder matrices and binomial weights.
double two_mode_lossy_qfi(const std::vector<double>& c, double eta);

/// Grid search over p_m = c_m^2 on the simplex: every point with spacing
/// `coarse`, then pairwise transfers of `fine` from the best point until no
/// transfer improves the value.
struct GridOptimum {
  std::vector<double> probabilities;
  double value = 0.0;
  long evaluations = 0;
};
GridOptimum grid_search_two_mode(int n, double eta, double coarse, double fine);

Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, Eigen::Index dim);

}  // namespace oracle
