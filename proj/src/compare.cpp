// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/errors.hpp"
#include "ringqfi/parallel.hpp"
#include "ringqfi/qfi.hpp"
#include "ringqfi/states.hpp"

namespace ringqfi {

std::string_view to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::fermionic: return "fermionic";
    case ReferenceKind::noon: return "noon";
    case ReferenceKind::unentangled: return "unentangled";
    case ReferenceKind::shot_noise: return "shot_noise";
    case ReferenceKind::heisenberg: return "heisenberg";
  }
  return "unknown";
}

ReferenceKind parse_reference_kind(std::string_view text) {
  for (auto kind : {ReferenceKind::fermionic, ReferenceKind::noon, ReferenceKind::unentangled,
                    ReferenceKind::shot_noise, ReferenceKind::heisenberg}) {
    if (text == to_string(kind)) return kind;
  }
  throw std::invalid_argument(fmt::format("unknown reference curve '{}'", text));
}

std::vector<std::optional<double>> reference_curve(ReferenceKind kind, int n_particles,
                                                   std::span<const double> etas) {
  if (n_particles < 1) throw std::invalid_argument("reference curves need N >= 1");
  const double n = n_particles;
  std::vector<std::optional<double>> out;
  out.reserve(etas.size());
  for (double eta : etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument(fmt::format("eta={} outside [0, 1]", eta));
    double f = 0.0;
    switch (kind) {
      case ReferenceKind::fermionic: f = n * n * eta; break;
      case ReferenceKind::noon: f = n * n * std::pow(eta, n_particles); break;
      case ReferenceKind::unentangled:
      case ReferenceKind::shot_noise: f = n * eta; break;
      case ReferenceKind::heisenberg: f = n * n; break;
    }
    out.push_back(f > 0.0 ? std::optional<double>(1.0 / std::sqrt(f)) : std::nullopt);
  }
  return out;
}

TwoModeInput TwoModeInput::noon(int n_particles) {
  TwoModeInput in;
  in.coefficients.assign(static_cast<std::size_t>(n_particles + 1), 0.0);
  in.coefficients.front() += std::sqrt(0.5);
  in.coefficients.back() += std::sqrt(0.5);
  if (n_particles == 0) in.coefficients.front() = 1.0;
  return in;
}

TwoModeInput TwoModeInput::unentangled(int n_particles) {
  TwoModeInput in;
  for (int m = 0; m <= n_particles; ++m) {
    const double log_binom =
        std::lgamma(n_particles + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n_particles - m + 1.0);
    in.coefficients.push_back(std::exp(0.5 * (log_binom - n_particles * std::log(2.0))));
  }
  return in;
}

TwoModeQfi::TwoModeQfi(int n_particles)
    : n_(n_particles),
      basis_(make_basis(ModeWindow(0, 1), n_particles, Statistics::bosonic)),
      channel_(basis_) {}

std::vector<double> TwoModeQfi::block_values(std::span<const Complex> coefficients) const {
  const auto psi = two_mode_state(basis_, coefficients);
  const auto blocks = channel_.all_blocks(psi);
  std::vector<double> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(qfi_mixed_block(b).value);
  return out;
}

double TwoModeQfi::operator()(std::span<const Complex> coefficients, double eta) const {
  const auto w = loss_weights(n_, eta);
  // blocks with zero weight are skipped by truncating the loss chain
  int deepest = 0;
  for (int nu = 0; nu <= n_; ++nu) {
    if (w.weights[static_cast<std::size_t>(nu)] > 0.0) deepest = nu;
  }
  const auto psi = two_mode_state(basis_, coefficients);
  if (deepest == 0) return w.weights[0] * qfi_pure(psi);
  const auto blocks = channel_.all_blocks(psi);
  double total = 0.0;
  for (const auto& b : blocks) {
    const double g = w.weights[static_cast<std::size_t>(b.lost)];
    if (g > 0.0) total += g * qfi_mixed_block(b).value;
  }
  return total;
}

double TwoModeQfi::operator()(std::span<const double> coefficients, double eta) const {
  std::vector<Complex> c(coefficients.begin(), coefficients.end());
  return (*this)(std::span<const Complex>(c), eta);
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

namespace {

struct AscentResult {
  std::vector<double> probabilities;
  double value = 0.0;
  long evaluations = 0;
};

AscentResult projected_ascent(const TwoModeQfi& qfi, double eta, std::vector<double> p,
                              const OptimizerOptions& options) {
  AscentResult out;
  auto evaluate = [&](const std::vector<double>& probs) {
    ++out.evaluations;
    std::vector<double> c(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) c[i] = std::sqrt(std::max(probs[i], 0.0));
    return qfi(std::span<const double>(c), eta);
  };
  const std::size_t dim = p.size();
  double f = evaluate(p);
  double step = 0.1;
  std::vector<double> grad(dim);
  for (int it = 0; it < options.max_iterations; ++it) {
    const double h = options.gradient_step;
    for (std::size_t i = 0; i < dim; ++i) {
      auto up = p;
      auto down = p;
      up[i] += h;
      down[i] = std::max(down[i] - h, 0.0);
      grad[i] = (evaluate(up) - evaluate(down)) / (up[i] - down[i]);
    }
    // only the component tangent to the simplex matters
    const double mean = std::accumulate(grad.begin(), grad.end(), 0.0) / static_cast<double>(dim);
    for (auto& g : grad) g -= mean;

    bool accepted = false;
    std::vector<double> next;
    double f_next = f;
    while (step > 1e-16) {
      std::vector<double> trial(dim);
      for (std::size_t i = 0; i < dim; ++i) trial[i] = p[i] + step * grad[i];
      next = project_to_simplex(trial);
      double ascent = 0.0;
      for (std::size_t i = 0; i < dim; ++i) ascent += grad[i] * (next[i] - p[i]);
      f_next = evaluate(next);
      if (f_next > f && f_next >= f + 1e-4 * ascent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    double change = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      change = std::max(change, std::abs(std::sqrt(next[i]) - std::sqrt(std::max(p[i], 0.0))));
    }
    p = std::move(next);
    f = f_next;
    step = std::min(step * 2.0, 1.0);
    if (change < options.tolerance) break;
  }
  out.probabilities = std::move(p);
  out.value = f;
  return out;
}

}  // namespace

TwoModeOptimum optimal_two_mode(int n_particles, double eta, const OptimizerOptions& options) {
  if (n_particles < 1 || n_particles > 12) {
    throw std::invalid_argument(fmt::format("two-mode optimization supports 1 <= N <= 12, got {}", n_particles));
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument(fmt::format("eta={} outside (0, 1]", eta));
  const TwoModeQfi qfi(n_particles);
  const auto dim = static_cast<std::size_t>(n_particles + 1);

  std::vector<std::vector<double>> starts;
  auto squares = [](const TwoModeInput& in) {
    std::vector<double> p;
    for (double c : in.coefficients) p.push_back(c * c);
    return p;
  };
  starts.push_back(squares(TwoModeInput::noon(n_particles)));
  starts.push_back(squares(TwoModeInput::unentangled(n_particles)));
  std::mt19937_64 rng(options.seed);
  std::exponential_distribution<double> expo(1.0);
  while (static_cast<int>(starts.size()) < std::max(options.multistarts, 2)) {
    std::vector<double> p(dim);
    double total = 0.0;
    for (auto& x : p) {
      x = expo(rng);
      total += x;
    }
    for (auto& x : p) x /= total;
    starts.push_back(std::move(p));
  }

  std::vector<AscentResult> runs(starts.size());
  parallel_for(starts.size(), options.threads,
               [&](std::size_t i) { runs[i] = projected_ascent(qfi, eta, starts[i], options); });

  TwoModeOptimum out;
  out.noon_qfi = qfi(std::span<const double>(TwoModeInput::noon(n_particles).coefficients), eta);
  out.unentangled_qfi = qfi(std::span<const double>(TwoModeInput::unentangled(n_particles).coefficients), eta);
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.evaluations += runs[i].evaluations;
    if (runs[i].value > runs[best].value) best = i;
  }
  out.best_start = static_cast<int>(best);
  out.qfi = runs[best].value;
  for (double p : runs[best].probabilities) out.input.coefficients.push_back(std::sqrt(std::max(p, 0.0)));

  const double floor = std::max(out.noon_qfi, out.unentangled_qfi) - 1e-9;
  if (out.qfi < floor) {
    throw CertificationError(fmt::format("two-mode optimum {:.12g} below baseline {:.12g} at N={}, eta={}", out.qfi,
                                         floor, n_particles, eta));
  }
  return out;
}

}  // namespace ringqfi
