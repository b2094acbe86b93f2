// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ringqfi/loss.hpp"

namespace ringqfi {

enum class ReferenceKind { fermionic, noon, unentangled, shot_noise, heisenberg };

std::string_view to_string(ReferenceKind kind);
ReferenceKind parse_reference_kind(std::string_view text);

/// Closed-form delta phi = 1/sqrt(F_Q): fermionic N^2 eta, NOON N^2 eta^N,
/// unentangled and shot noise N eta, Heisenberg 1/N. Entries with F_Q = 0
/// are nullopt.
std::vector<std::optional<double>> reference_curve(ReferenceKind kind, int n_particles,
                                                   std::span<const double> etas);

/// Real non-negative amplitudes c_m on |N-m, m> over modes k = 0, 1.
struct TwoModeInput {
  std::vector<double> coefficients;

  static TwoModeInput noon(int n_particles);
  static TwoModeInput unentangled(int n_particles);
};

/// Lossy QFI of two-mode inputs of fixed N, reusing one loss channel.
class TwoModeQfi {
 public:
  explicit TwoModeQfi(int n_particles);

  int particle_count() const noexcept { return n_; }
  /// Per-block QFI values for real or complex amplitudes.
  std::vector<double> block_values(std::span<const Complex> coefficients) const;
  double operator()(std::span<const double> coefficients, double eta) const;
  double operator()(std::span<const Complex> coefficients, double eta) const;

 private:
  int n_;
  BasisPtr basis_;
  LossChannel channel_;
};

struct OptimizerOptions {
  int multistarts = 32;
  /// Stop once no coefficient moves by more than this in one step.
  double tolerance = 1e-8;
  int max_iterations = 3000;
  double gradient_step = 1e-7;
  std::uint64_t seed = 0x2d0e;
  int threads = 1;
};

struct TwoModeOptimum {
  TwoModeInput input;
  double qfi = 0.0;
  double noon_qfi = 0.0;
  double unentangled_qfi = 0.0;
  int best_start = 0;
  long evaluations = 0;
};

/// Maximizes the lossy QFI over two-mode inputs by projected-gradient ascent
/// on the occupation probabilities p_m = c_m^2, from NOON, unentangled and
/// random Dirichlet starts. Throws CertificationError if the result does
/// not reach max(NOON, unentangled) - 1e-9.
TwoModeOptimum optimal_two_mode(int n_particles, double eta, const OptimizerOptions& options = {});

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace ringqfi
