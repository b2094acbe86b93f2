// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ringqfi/commands.hpp"
#include "ringqfi/errors.hpp"

namespace ringqfi {

namespace {

// Enumerated keys are read as text and converted after parsing.
struct EnumText {
  std::string window = "symmetric";
  std::string statistics = "bosonic";
  std::string state = "tg";

  void apply(RunConfig& c) const {
    c.window = parse_window_placement(window);
    c.statistics = parse_statistics(statistics);
    c.state = parse_state_kind(state);
  }
};

void add_options(CLI::App& app, RunConfig& c, EnumText& e) {
  app.add_option("-N", c.n_particles, "particle number")->capture_default_str();
  app.add_option("-M", c.modes, "number of angular momentum modes")->capture_default_str();
  app.add_option("--window", e.window, "mode placement when k_min is unset")
      ->check(CLI::IsMember({"symmetric", "centered"}))
      ->capture_default_str();
  app.add_option("--k_min", c.k_min, "lowest mode of the window");
  app.add_option("--statistics", e.statistics, "statistics of the basis command")
      ->check(CLI::IsMember({"bosonic", "fermionic"}))
      ->capture_default_str();
  app.add_option("--sector", c.sector, "restrict the basis to total angular momentum K");
  app.add_option("--state", e.state, "input state")
      ->check(CLI::IsMember({"tg", "noon", "unentangled", "fermionic"}))
      ->capture_default_str();
  app.add_option("--g_tilde", c.g_tilde, "contact coupling g/(L E0)")->capture_default_str();
  app.add_option("--b_tilde", c.b_tilde, "barrier b/(L E0); default g_tilde sqrt(N)/200");
  app.add_option("--omega", c.omega, "stirring phase")->capture_default_str();
  app.add_option("--balance_sectors", c.balance_sectors,
                 "shift omega so the K=0 and K=N branches are degenerate at zero barrier")
      ->capture_default_str();
  app.add_option("--delta_omega", c.delta_omega, "kick phase of the diagonal generator")->capture_default_str();
  app.add_option("--eta_min", c.eta_min, "smallest surviving fraction")->capture_default_str();
  app.add_option("--eta_max", c.eta_max, "largest surviving fraction")->capture_default_str();
  app.add_option("--eta_points", c.eta_points, "grid points, inclusive")->capture_default_str();
  app.add_option("--phi", c.phi, "phase applied to prepared states")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for the eigensolver start block and optimizer starts")
      ->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--out", c.out, "output file; standard output when empty");
  app.add_option("--manifest", c.manifest, "manifest file; <out>.json when empty and out is set");
  app.add_option("--dimension_cap", c.dimension_cap, "largest basis allowed")->capture_default_str();
  app.add_option("--dense_cap", c.dense_cap, "largest dense eigenproblem allowed")->capture_default_str();
  app.add_option("--eigen_tolerance", c.eigen_tolerance, "relative eigen residual")->capture_default_str();
  app.add_option("--max_restarts", c.max_restarts, "eigensolver restart cap")->capture_default_str();
  app.add_option("--multistarts", c.multistarts, "two-mode optimizer starts")->capture_default_str();
  app.add_option("--min_fidelity", c.min_fidelity, "prepare fails below this TG fidelity")->capture_default_str();
}

// Writes to the configured file, or to `fallback` when none is set.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ConfigError(fmt::format("cannot open '{}' for writing", path));
  write(file);
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", path));
}

void emit_manifest(const RunConfig& config, const nlohmann::json& manifest) {
  const auto path = config.manifest_path();
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw ConfigError(fmt::format("cannot open '{}' for writing", path));
  file << manifest.dump(2) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Lossy rotation sensing with ring superposition states", "ringqfi");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file");
  app.allow_config_extras(false);
  RunConfig config;
  EnumText enums;
  add_options(app, config, enums);
  auto* basis = app.add_subcommand("basis", "print basis dimensions as JSON");
  auto* prepare = app.add_subcommand("prepare", "write an input state and its diagnostics");
  auto* sweep = app.add_subcommand("sweep", "lossy QFI of one state over the eta grid (CSV)");
  auto* figure2 = app.add_subcommand("figure2", "delta phi of all input states over the eta grid (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitConfig;
  }

  try {
    enums.apply(config);
    config.validate();
    if (basis->parsed()) {
      const auto summary = basis_summary(config);
      emit(config.out, out, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
    } else if (prepare->parsed()) {
      const auto prepared = prepare_state(config, err);
      emit(config.out, out, [&](std::ostream& os) { write_state(os, prepared.state); });
      auto manifest = run_manifest(config, "prepare");
      manifest["state"] = prepared.diagnostics;
      emit_manifest(config, manifest);
      if (config.state == StateKind::tg) {
        const double fidelity = prepared.diagnostics["tg"]["fidelity"].get<double>();
        if (fidelity < config.min_fidelity) {
          fmt::print(err, "error: TG fidelity {:.6f} below min_fidelity {}\n", fidelity, config.min_fidelity);
          return kExitBelowThreshold;
        }
      }
    } else if (sweep->parsed()) {
      const auto result = run_sweep(config, err);
      emit(config.out, out, [&](std::ostream& os) { write_sweep_csv(os, result.rows); });
      emit_manifest(config, result.manifest);
    } else if (figure2->parsed()) {
      const auto result = run_figure2(config, err);
      emit(config.out, out, [&](std::ostream& os) { write_figure2_csv(os, result.rows); });
      emit_manifest(config, result.manifest);
    }
  } catch (const DegenerateGroundStateError& e) {
    fmt::print(err, "warning: {}\n", e.what());
    return kExitDegenerate;
  } catch (const ConvergenceError& e) {
    fmt::print(err, "error: {} (residual {:.3e})\n", e.what(), e.achieved_residual());
    return kExitNonConvergence;
  } catch (const CertificationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitCertification;
  } catch (const DimensionCapError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const EmptySectorError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
  return kExitSuccess;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ringqfi");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ringqfi
