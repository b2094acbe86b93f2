// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ringqfi/run_config.hpp"
#include "ringqfi/state_vector.hpp"

namespace ringqfi {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitCertification = 4,
  kExitDegenerate = 5,
  kExitBelowThreshold = 6,
};

/// Manifest skeleton: tool version, command, resolved config and its hash.
nlohmann::json run_manifest(const RunConfig& config, std::string_view command);

/// Dimensions of the configured basis, total and per angular momentum
/// sector (or of the single configured sector).
nlohmann::json basis_summary(const RunConfig& config);

struct PreparedState {
  StateVector state;
  /// Populations, fidelity, spectrum data and timings.
  nlohmann::json diagnostics;
};

/// The configured input state on the configured window. NOON, unentangled
/// and TG states are bosonic and fermionic states fermionic, whatever
/// `statistics` says. The phase phi is applied last.
PreparedState prepare_state(const RunConfig& config, std::ostream& log);

struct SweepRow {
  double eta = 0.0;
  std::string state;
  double qfi = 0.0;
  std::optional<double> dphi;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  nlohmann::json manifest;
};

SweepResult run_sweep(const RunConfig& config, std::ostream& log);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct Figure2Row {
  double eta = 0.0;
  std::optional<double> fermionic;
  std::optional<double> tg;
  std::optional<double> noon;
  std::optional<double> unentangled;
  std::optional<double> opt2mode;
};

struct Figure2Result {
  std::vector<Figure2Row> rows;
  nlohmann::json manifest;
};

/// delta phi of the fermionic, TG, NOON, unentangled and optimal two-mode
/// inputs over the eta grid. The fermionic curve is simulated for even N
/// and taken from the closed form for odd N.
Figure2Result run_figure2(const RunConfig& config, std::ostream& log);
void write_figure2_csv(std::ostream& os, const std::vector<Figure2Row>& rows);

/// Parses arguments and runs one subcommand. Results go to `out` unless the
/// config names an output file; progress and errors go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ringqfi
