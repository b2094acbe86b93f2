// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ringqfi/fock.hpp"
#include "ringqfi/operators.hpp"

namespace ringqfi {

/// Invalid or inconsistent run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class StateKind { tg, noon, unentangled, fermionic };

std::string_view to_string(StateKind kind);
StateKind parse_state_kind(std::string_view text);

enum class WindowPlacement { symmetric, centered };

std::string_view to_string(WindowPlacement placement);
WindowPlacement parse_window_placement(std::string_view text);

/// Everything a run depends on. Every field has a default; the key names
/// used by the config file and the command line are given in comments.
struct RunConfig {
  int n_particles = 5;  // N
  int modes = 18;       // M
  /// Placement of the M modes when k_min is not given.
  WindowPlacement window = WindowPlacement::symmetric;  // window
  std::optional<int> k_min;                              // k_min
  Statistics statistics = Statistics::bosonic;           // statistics
  std::optional<int> sector;                             // sector
  StateKind state = StateKind::tg;                       // state

  double g_tilde = 10.0;          // g_tilde
  std::optional<double> b_tilde;  // b_tilde, default g_tilde sqrt(N) / 200
  double omega = 3.141592653589793;  // omega
  bool balance_sectors = true;       // balance_sectors
  double delta_omega = 0.0;          // delta_omega

  double eta_min = 0.05;  // eta_min
  double eta_max = 1.0;   // eta_max
  int eta_points = 20;    // eta_points
  double phi = 0.0;       // phi

  std::uint64_t seed = 1;  // seed
  int threads = 0;         // threads, 0 = all hardware threads
  std::string out;         // out, empty = standard output
  std::string manifest;    // manifest, empty = <out>.json when out is set

  std::size_t dimension_cap = kDefaultDimensionCap;  // dimension_cap
  std::size_t dense_cap = 4096;                      // dense_cap
  double eigen_tolerance = 1e-10;                    // eigen_tolerance
  int max_restarts = 400;                            // max_restarts
  int multistarts = 32;                              // multistarts
  /// prepare fails with exit code 6 when the TG fidelity is lower.
  double min_fidelity = 0.0;  // min_fidelity

  /// Throws ConfigError on out-of-range or inconsistent values.
  void validate() const;

  ModeWindow mode_window() const;
  double barrier() const;
  HamiltonianParams hamiltonian() const;
  /// eta_points values from eta_min to eta_max inclusive, rounded to 1e-12.
  std::vector<double> eta_grid() const;
  /// Path of the manifest, or empty when none is written.
  std::string manifest_path() const;

  /// Every key with its resolved value, in key order.
  std::vector<std::pair<std::string, std::string>> canonical() const;
  /// 64-bit FNV-1a of the canonical listing without out and manifest, as
  /// 16 hex digits.
  std::string hash() const;
  nlohmann::json to_json() const;
};

}  // namespace ringqfi
