// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/loss.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/parallel.hpp"

namespace ringqfi {

LossWeights loss_weights(int n_particles, double eta) {
  if (n_particles < 0) throw std::invalid_argument("particle number must be non-negative");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument(fmt::format("eta={} outside [0, 1]", eta));
  LossWeights out;
  out.eta = eta;
  out.weights.resize(static_cast<std::size_t>(n_particles + 1));
  double binom = 1.0;  // C(N, nu)
  for (int nu = 0; nu <= n_particles; ++nu) {
    out.weights[static_cast<std::size_t>(nu)] =
        binom * std::pow(eta, n_particles - nu) * std::pow(1.0 - eta, nu);
    binom = binom * (n_particles - nu) / (nu + 1);
  }
  return out;
}

Eigen::MatrixXcd DensityBlock::dense() const {
  return vectors * weights.cast<Complex>().asDiagonal() * vectors.adjoint();
}

LossChannel::LossChannel(BasisPtr top, std::size_t dimension_cap) : top_(std::move(top)) {
  if (!top_) throw std::invalid_argument("loss channel needs a basis");
  const int n = top_->particle_count();
  levels_.push_back(top_);
  for (int lost = 1; lost <= n; ++lost) {
    levels_.push_back(make_basis(top_->window(), n - lost, top_->statistics(), std::nullopt, dimension_cap));
  }
  const auto& window = top_->window();
  ladders_.resize(static_cast<std::size_t>(n));
  for (int level = 0; level < n; ++level) {
    auto& row = ladders_[static_cast<std::size_t>(level)];
    row.reserve(static_cast<std::size_t>(window.mode_count()));
    for (int j = 0; j < window.mode_count(); ++j) {
      row.push_back(annihilate(levels_[static_cast<std::size_t>(level)],
                               levels_[static_cast<std::size_t>(level) + 1], window.momentum(j))
                        .matrix());
    }
  }
}

std::vector<LossChannel::Partial> LossChannel::next_level(const std::vector<Partial>& current, int level,
                                                          int threads) const {
  const auto& ops = ladders_.at(static_cast<std::size_t>(level));
  const int modes = static_cast<int>(ops.size());
  std::vector<std::vector<Partial>> children(current.size());
  parallel_for(current.size(), threads, [&](std::size_t i) {
    const Partial& parent = current[i];
    for (int mode = std::max(parent.last_mode, 0); mode < modes; ++mode) {
      Partial child;
      child.vector = ops[static_cast<std::size_t>(mode)] * parent.vector;
      if (child.vector.squaredNorm() == 0.0) continue;
      child.run = mode == parent.last_mode ? parent.run + 1 : 1;
      child.last_mode = mode;
      child.orderings = parent.orderings * (level + 1) / child.run;
      children[i].push_back(std::move(child));
    }
  });
  std::vector<Partial> out;
  for (auto& c : children) {
    for (auto& p : c) out.push_back(std::move(p));
  }
  return out;
}

DensityBlock LossChannel::to_block(const std::vector<Partial>& partials, int lost) const {
  std::vector<double> raw(partials.size());
  double total = 0.0;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    raw[i] = partials[i].orderings * partials[i].vector.squaredNorm();
    total += raw[i];
  }
  if (!(total > 0.0)) throw std::runtime_error("loss block has zero trace");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] / total >= kComponentPruneThreshold) kept.push_back(i);
  }
  DensityBlock block;
  block.lost = lost;
  block.basis = levels_.at(static_cast<std::size_t>(lost));
  block.weights.resize(static_cast<Eigen::Index>(kept.size()));
  block.vectors.resize(static_cast<Eigen::Index>(block.basis->dimension()), static_cast<Eigen::Index>(kept.size()));
  double kept_total = 0.0;
  for (std::size_t c = 0; c < kept.size(); ++c) kept_total += raw[kept[c]];
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const auto& p = partials[kept[c]];
    block.weights(static_cast<Eigen::Index>(c)) = raw[kept[c]] / kept_total;
    block.vectors.col(static_cast<Eigen::Index>(c)) = p.vector / p.vector.norm();
  }
  return block;
}

DensityBlock LossChannel::block(const StateVector& psi, int lost) const {
  if (lost < 0 || lost > particle_count()) {
    throw std::invalid_argument(fmt::format("cannot lose {} of {} particles", lost, particle_count()));
  }
  if (!psi.basis().same_space(*top_) || psi.basis().sector() != top_->sector()) {
    throw std::invalid_argument("state basis does not match the loss channel");
  }
  std::vector<Partial> level{{psi.amplitudes(), -1, 0, 1.0}};
  for (int j = 0; j < lost; ++j) level = next_level(level, j, 1);
  return to_block(level, lost);
}

std::vector<DensityBlock> LossChannel::all_blocks(const StateVector& psi, int threads) const {
  if (!psi.basis().same_space(*top_) || psi.basis().sector() != top_->sector()) {
    throw std::invalid_argument("state basis does not match the loss channel");
  }
  std::vector<DensityBlock> out;
  std::vector<Partial> level{{psi.amplitudes(), -1, 0, 1.0}};
  out.push_back(to_block(level, 0));
  for (int j = 0; j < particle_count(); ++j) {
    level = next_level(level, j, threads);
    out.push_back(to_block(level, j + 1));
  }
  return out;
}

DensityBlock apply_loss(const StateVector& psi, int lost) {
  if (lost < 0 || lost > psi.basis().particle_count()) {
    throw std::invalid_argument(
        fmt::format("cannot lose {} of {} particles", lost, psi.basis().particle_count()));
  }
  return LossChannel(psi.basis_ptr()).block(psi, lost);
}

MixedState lossy_state(const StateVector& psi, double eta, int threads) {
  MixedState out;
  out.weights = loss_weights(psi.basis().particle_count(), eta);
  const LossChannel channel(psi.basis_ptr());
  auto blocks = channel.all_blocks(psi, threads);
  for (auto& b : blocks) {
    if (out.weights.weights[static_cast<std::size_t>(b.lost)] > 0.0) out.blocks.push_back(std::move(b));
  }
  return out;
}

DensityBlock evolve_phase(const DensityBlock& block, double phi) {
  DensityBlock out = block;
  for (Eigen::Index i = 0; i < out.vectors.rows(); ++i) {
    out.vectors.row(i) *= std::polar(1.0, block.basis->angular_momentum(static_cast<std::size_t>(i)) * phi);
  }
  return out;
}

MixedState evolve_phase(const MixedState& state, double phi) {
  MixedState out;
  out.weights = state.weights;
  out.blocks.reserve(state.blocks.size());
  for (const auto& b : state.blocks) out.blocks.push_back(evolve_phase(b, phi));
  return out;
}

double mean_particle_number(const MixedState& state) {
  double total = 0.0;
  for (const auto& b : state.blocks) {
    Eigen::VectorXd counts(static_cast<Eigen::Index>(b.basis->dimension()));
    for (std::size_t i = 0; i < b.basis->dimension(); ++i) {
      const auto& n = b.basis->state(i);
      counts(static_cast<Eigen::Index>(i)) = std::accumulate(n.begin(), n.end(), 0);
    }
    double block_mean = 0.0;
    for (Eigen::Index c = 0; c < b.vectors.cols(); ++c) {
      block_mean += b.weights(c) * (b.vectors.col(c).cwiseAbs2().transpose() * counts)(0);
    }
    total += state.weights.weights[static_cast<std::size_t>(b.lost)] * block_mean;
  }
  return total;
}

}  // namespace ringqfi
