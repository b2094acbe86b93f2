// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/commands.hpp"

#include <chrono>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ringqfi/compare.hpp"
#include "ringqfi/parallel.hpp"
#include "ringqfi/qfi.hpp"
#include "ringqfi/states.hpp"

#ifndef RINGQFI_VERSION
#define RINGQFI_VERSION "0.0.0"
#endif

namespace ringqfi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json optional_number(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

EigenOptions eigen_options(const RunConfig& config) {
  EigenOptions opt;
  opt.tolerance = config.eigen_tolerance;
  opt.max_restarts = config.max_restarts;
  opt.seed = config.seed;
  opt.dense_cap = config.dense_cap;
  return opt;
}

TgOptions tg_options(const RunConfig& config) {
  TgOptions opt;
  opt.balance_sectors = config.balance_sectors;
  opt.eigen = eigen_options(config);
  opt.threads = config.threads;
  return opt;
}

nlohmann::json tg_report(const TgPreparation& prep, double seconds) {
  nlohmann::json j;
  j["dimension"] = prep.dimension;
  j["energy"] = prep.energy;
  j["gap"] = prep.gap;
  j["omega"] = prep.omega;
  j["population_zero"] = prep.population_zero;
  j["population_full"] = prep.population_full;
  j["fidelity"] = prep.fidelity;
  j["max_residual"] = prep.max_residual;
  j["restarts"] = prep.restarts;
  j["seconds"] = seconds;
  return j;
}

nlohmann::json sector_populations(const StateVector& psi) {
  std::map<int, double> pop;
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    pop[psi.basis().angular_momentum(i)] += std::norm(psi.amplitudes()(static_cast<Eigen::Index>(i)));
  }
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, p] : pop) {
    if (p > 1e-12) j[std::to_string(k)] = p;
  }
  return j;
}

std::optional<double> dphi_of(double qfi) {
  if (qfi > 0.0) return 1.0 / std::sqrt(qfi);
  return std::nullopt;
}

void write_cell(std::ostream& os, const std::optional<double>& x) {
  if (x) fmt::print(os, "{}", *x);
}

}  // namespace

nlohmann::json run_manifest(const RunConfig& config, std::string_view command) {
  nlohmann::json m;
  m["tool"] = "ringqfi";
  m["version"] = RINGQFI_VERSION;
  m["command"] = command;
  m["config"] = config.to_json();
  m["config_hash"] = config.hash();
  m["threads_used"] = resolve_threads(config.threads);
  return m;
}

nlohmann::json basis_summary(const RunConfig& config) {
  config.validate();
  const auto basis = FockBasis::build(config.mode_window(), config.n_particles, config.statistics, config.sector,
                                      config.dimension_cap);
  nlohmann::json j = basis.descriptor();
  j["unrestricted_dimension"] = unrestricted_dimension(config.modes, config.n_particles, config.statistics);
  nlohmann::json sectors = nlohmann::json::array();
  if (config.sector) {
    sectors.push_back({{"K", *config.sector}, {"dimension", basis.dimension()}});
  } else {
    for (const auto& [k, b] : sector_split(basis)) sectors.push_back({{"K", k}, {"dimension", b.dimension()}});
  }
  j["sectors"] = sectors;
  return j;
}

PreparedState prepare_state(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto window = config.mode_window();
  const int n = config.n_particles;
  const auto start = Clock::now();
  nlohmann::json d;
  d["state"] = to_string(config.state);

  auto bosons = [&] { return make_basis(window, n, Statistics::bosonic, std::nullopt, config.dimension_cap); };
  std::optional<StateVector> psi;
  switch (config.state) {
    case StateKind::tg: {
      const auto prep = tg_ground_state(window, n, config.hamiltonian(), tg_options(config));
      const double elapsed = seconds_since(start);
      fmt::print(log, "tg ground state: dimension {}, gap {:.3e}, fidelity {:.6f}, {} restarts, {:.1f} s\n",
                 prep.dimension, prep.gap, prep.fidelity, prep.restarts, elapsed);
      d["tg"] = tg_report(prep, elapsed);
      psi = prep.state;
      break;
    }
    case StateKind::noon: psi = noon_state(bosons()); break;
    case StateKind::unentangled: psi = unentangled_state(bosons()); break;
    case StateKind::fermionic: psi = fermionic_superposition(window, n, config.dimension_cap); break;
  }
  if (config.phi != 0.0) psi = evolve_phase(*psi, config.phi);

  d["basis"] = psi->basis().descriptor();
  d["support"] = psi->support_size(1e-14);
  d["qfi_pure"] = qfi_pure(*psi);
  d["sector_populations"] = sector_populations(*psi);
  d["phi"] = config.phi;
  d["seconds"] = seconds_since(start);
  return PreparedState{std::move(*psi), std::move(d)};
}

SweepResult run_sweep(const RunConfig& config, std::ostream& log) {
  const auto start = Clock::now();
  const auto prepared = prepare_state(config, log);
  const auto blocks_start = Clock::now();
  const LossyQfi engine(prepared.state, config.threads);
  const double blocks_seconds = seconds_since(blocks_start);
  fmt::print(log, "loss blocks: {} in {:.1f} s\n", engine.blocks().size(), blocks_seconds);

  SweepResult out;
  const std::string label(to_string(config.state));
  nlohmann::json reports = nlohmann::json::array();
  for (double eta : config.eta_grid()) {
    const auto report = engine.report(eta);
    out.rows.push_back(SweepRow{eta, label, report.total, report.delta_phi});
    reports.push_back(to_json(report));
  }
  out.manifest = run_manifest(config, "sweep");
  out.manifest["state"] = prepared.diagnostics;
  out.manifest["qfi"] = reports;
  out.manifest["timings"] = {{"prepare_s", prepared.diagnostics["seconds"]},
                             {"loss_blocks_s", blocks_seconds},
                             {"total_s", seconds_since(start)}};
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "eta,state,F_Q,dphi\n";
  for (const auto& r : rows) {
    fmt::print(os, "{},{},{},", r.eta, r.state, r.qfi);
    write_cell(os, r.dphi);
    os << '\n';
  }
}

Figure2Result run_figure2(const RunConfig& config, std::ostream& log) {
  config.validate();
  const int n = config.n_particles;
  if (n > 12) throw ConfigError("figure2 compares against the two-mode optimum, which needs N <= 12");
  const auto start = Clock::now();
  const auto etas = config.eta_grid();
  Figure2Result out;
  out.rows.resize(etas.size());
  for (std::size_t i = 0; i < etas.size(); ++i) out.rows[i].eta = etas[i];
  nlohmann::json& m = out.manifest = run_manifest(config, "figure2");
  nlohmann::json timings;

  // fermions
  auto t = Clock::now();
  if (n % 2 == 0) {
    const auto psi = fermionic_superposition(config.mode_window(), n, config.dimension_cap);
    const LossyQfi engine(psi, config.threads);
    for (auto& row : out.rows) row.fermionic = engine.report(row.eta).delta_phi;
    m["fermionic"] = {{"source", "simulated"}, {"basis", psi.basis().descriptor()}};
  } else {
    const auto curve = reference_curve(ReferenceKind::fermionic, n, etas);
    for (std::size_t i = 0; i < etas.size(); ++i) out.rows[i].fermionic = curve[i];
    m["fermionic"] = {{"source", "closed_form"}};
  }
  timings["fermionic_s"] = seconds_since(t);

  // TG ground state
  t = Clock::now();
  const auto prep = tg_ground_state(config.mode_window(), n, config.hamiltonian(), tg_options(config));
  const double solve_seconds = seconds_since(t);
  fmt::print(log, "tg ground state: dimension {}, gap {:.3e}, fidelity {:.6f}, {} restarts, {:.1f} s\n",
             prep.dimension, prep.gap, prep.fidelity, prep.restarts, solve_seconds);
  t = Clock::now();
  const LossyQfi tg(prep.state, config.threads);
  const double blocks_seconds = seconds_since(t);
  nlohmann::json tg_blocks = nlohmann::json::array();
  for (const auto& b : tg.blocks()) {
    tg_blocks.push_back({{"qfi", b.value}, {"span_rank", b.span_rank}, {"components", b.components}});
  }
  for (auto& row : out.rows) row.tg = tg.report(row.eta).delta_phi;
  m["tg"] = tg_report(prep, solve_seconds);
  m["tg"]["basis"] = prep.state.basis().descriptor();
  m["tg"]["qfi_pure"] = qfi_pure(prep.state);
  m["tg"]["blocks"] = tg_blocks;
  timings["tg_ground_state_s"] = solve_seconds;
  timings["tg_loss_blocks_s"] = blocks_seconds;

  // two-mode inputs
  t = Clock::now();
  const TwoModeQfi two_mode(n);
  const auto noon = TwoModeInput::noon(n).coefficients;
  const auto unent = TwoModeInput::unentangled(n).coefficients;
  for (auto& row : out.rows) {
    row.noon = dphi_of(two_mode(std::span<const double>(noon), row.eta));
    row.unentangled = dphi_of(two_mode(std::span<const double>(unent), row.eta));
  }

  OptimizerOptions opt;
  opt.multistarts = config.multistarts;
  opt.seed = config.seed;
  opt.threads = 1;
  std::vector<std::optional<TwoModeOptimum>> optima(etas.size());
  parallel_for(etas.size(), config.threads, [&](std::size_t i) {
    if (etas[i] > 0.0) optima[i] = optimal_two_mode(n, etas[i], opt);
  });
  nlohmann::json coefficients = nlohmann::json::array();
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!optima[i]) continue;
    out.rows[i].opt2mode = dphi_of(optima[i]->qfi);
    coefficients.push_back({{"eta", etas[i]},
                            {"coefficients", optima[i]->input.coefficients},
                            {"qfi", optima[i]->qfi},
                            {"noon_qfi", optima[i]->noon_qfi},
                            {"unentangled_qfi", optima[i]->unentangled_qfi},
                            {"best_start", optima[i]->best_start}});
  }
  m["optimal_two_mode"] = coefficients;
  timings["two_mode_s"] = seconds_since(t);
  fmt::print(log, "two-mode optimum: {} eta points in {:.1f} s\n", etas.size(), seconds_since(t));

  timings["total_s"] = seconds_since(start);
  m["timings"] = timings;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : out.rows) {
    rows.push_back({{"eta", r.eta},
                    {"dphi_fermionic", optional_number(r.fermionic)},
                    {"dphi_tg", optional_number(r.tg)},
                    {"dphi_noon", optional_number(r.noon)},
                    {"dphi_unentangled", optional_number(r.unentangled)},
                    {"dphi_opt2mode", optional_number(r.opt2mode)}});
  }
  m["rows"] = rows;
  return out;
}

void write_figure2_csv(std::ostream& os, const std::vector<Figure2Row>& rows) {
  os << "eta,dphi_fermionic,dphi_tg,dphi_noon,dphi_unentangled,dphi_opt2mode\n";
  for (const auto& r : rows) {
    fmt::print(os, "{}", r.eta);
    for (const auto* x : {&r.fermionic, &r.tg, &r.noon, &r.unentangled, &r.opt2mode}) {
      os << ',';
      write_cell(os, *x);
    }
    os << '\n';
  }
}

}  // namespace ringqfi
