// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/run_config.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ringqfi {

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::tg: return "tg";
    case StateKind::noon: return "noon";
    case StateKind::unentangled: return "unentangled";
    case StateKind::fermionic: return "fermionic";
  }
  return "unknown";
}

StateKind parse_state_kind(std::string_view text) {
  for (auto kind : {StateKind::tg, StateKind::noon, StateKind::unentangled, StateKind::fermionic}) {
    if (text == to_string(kind)) return kind;
  }
  throw ConfigError(fmt::format("unknown state '{}'", text));
}

std::string_view to_string(WindowPlacement placement) {
  return placement == WindowPlacement::symmetric ? "symmetric" : "centered";
}

WindowPlacement parse_window_placement(std::string_view text) {
  if (text == "symmetric") return WindowPlacement::symmetric;
  if (text == "centered") return WindowPlacement::centered;
  throw ConfigError(fmt::format("unknown window placement '{}'", text));
}

void RunConfig::validate() const {
  auto require = [](bool ok, std::string_view message) {
    if (!ok) throw ConfigError(std::string(message));
  };
  require(n_particles >= 1, "N must be at least 1");
  require(modes >= 1, "M must be at least 1");
  require(std::isfinite(g_tilde) && g_tilde >= 0.0, "g_tilde must be finite and non-negative");
  require(!b_tilde || (std::isfinite(*b_tilde) && *b_tilde >= 0.0), "b_tilde must be finite and non-negative");
  require(std::isfinite(omega), "omega must be finite");
  require(std::isfinite(delta_omega), "delta_omega must be finite");
  require(std::isfinite(phi), "phi must be finite");
  require(eta_min >= 0.0 && eta_max <= 1.0 && eta_min <= eta_max, "need 0 <= eta_min <= eta_max <= 1");
  require(eta_points >= 1, "eta_points must be at least 1");
  require(eta_points > 1 || eta_min == eta_max, "a single eta point needs eta_min == eta_max");
  require(threads >= 0, "threads must be non-negative");
  require(dimension_cap >= 1, "dimension_cap must be positive");
  require(dense_cap >= 1, "dense_cap must be positive");
  require(eigen_tolerance > 0.0 && eigen_tolerance < 1.0, "eigen_tolerance must lie in (0, 1)");
  require(max_restarts >= 1, "max_restarts must be positive");
  require(multistarts >= 2, "multistarts must be at least 2");
  require(min_fidelity >= 0.0 && min_fidelity <= 1.0, "min_fidelity must lie in [0, 1]");
  if (statistics == Statistics::fermionic) require(n_particles <= modes, "fermionic N cannot exceed M");
}

ModeWindow RunConfig::mode_window() const {
  if (k_min) return ModeWindow(*k_min, *k_min + modes - 1);
  return window == WindowPlacement::symmetric ? ModeWindow::reflection_symmetric(modes)
                                              : ModeWindow::centered(n_particles, modes);
}

double RunConfig::barrier() const {
  return b_tilde ? *b_tilde : g_tilde * std::sqrt(static_cast<double>(n_particles)) / 200.0;
}

HamiltonianParams RunConfig::hamiltonian() const {
  HamiltonianParams p;
  p.omega = omega;
  p.g_tilde = g_tilde;
  p.b_tilde = barrier();
  p.delta_omega = delta_omega;
  return p;
}

std::vector<double> RunConfig::eta_grid() const {
  std::vector<double> etas;
  etas.reserve(static_cast<std::size_t>(eta_points));
  for (int i = 0; i < eta_points; ++i) {
    const double t = eta_points == 1 ? 0.0 : static_cast<double>(i) / (eta_points - 1);
    etas.push_back(std::round((eta_min + t * (eta_max - eta_min)) * 1e12) / 1e12);
  }
  return etas;
}

std::string RunConfig::manifest_path() const {
  if (!manifest.empty()) return manifest;
  return out.empty() ? std::string() : out + ".json";
}

std::vector<std::pair<std::string, std::string>> RunConfig::canonical() const {
  auto num = [](double x) { return fmt::format("{}", x); };
  return {
      {"M", std::to_string(modes)},
      {"N", std::to_string(n_particles)},
      {"b_tilde", num(barrier())},
      {"balance_sectors", balance_sectors ? "true" : "false"},
      {"delta_omega", num(delta_omega)},
      {"dense_cap", std::to_string(dense_cap)},
      {"dimension_cap", std::to_string(dimension_cap)},
      {"eigen_tolerance", num(eigen_tolerance)},
      {"eta_max", num(eta_max)},
      {"eta_min", num(eta_min)},
      {"eta_points", std::to_string(eta_points)},
      {"g_tilde", num(g_tilde)},
      {"k_min", std::to_string(mode_window().k_min)},
      {"manifest", manifest},
      {"max_restarts", std::to_string(max_restarts)},
      {"min_fidelity", num(min_fidelity)},
      {"multistarts", std::to_string(multistarts)},
      {"omega", num(omega)},
      {"out", out},
      {"phi", num(phi)},
      {"sector", sector ? std::to_string(*sector) : std::string()},
      {"seed", std::to_string(seed)},
      {"state", std::string(to_string(state))},
      {"statistics", std::string(to_string(statistics))},
      {"threads", std::to_string(threads)},
  };
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [key, value] : canonical()) {
    // output locations do not change results
    if (key == "out" || key == "manifest") continue;
    for (unsigned char c : key + "=" + value + "\n") {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  }
  return fmt::format("{:016x}", h);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : canonical()) j[key] = value;
  return j;
}

}  // namespace ringqfi
