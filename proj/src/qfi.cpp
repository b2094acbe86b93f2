// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/qfi.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/parallel.hpp"
#include "ringqfi/spectrum.hpp"

namespace ringqfi {

namespace {

Eigen::VectorXd diagonal_generator(const SparseOperator& generator, const FockBasis& basis) {
  if (!generator.basis_in().same_space(basis) || generator.rows() != static_cast<Eigen::Index>(basis.dimension()) ||
      generator.cols() != generator.rows()) {
    throw std::invalid_argument("generator does not act on the state's basis");
  }
  if (!generator.is_diagonal()) throw std::invalid_argument("generator must be diagonal in the Fock basis");
  return generator.real_diagonal();
}

Eigen::VectorXd momenta(const FockBasis& basis) {
  Eigen::VectorXd l(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t i = 0; i < basis.dimension(); ++i) l(static_cast<Eigen::Index>(i)) = basis.angular_momentum(i);
  return l;
}

double variance_qfi(const Eigen::VectorXcd& amps, const Eigen::VectorXd& l) {
  const Eigen::VectorXd p = amps.cwiseAbs2();
  const double mean = p.dot(l);
  return 4.0 * p.dot((l.array() - mean).square().matrix());
}

BlockQfi block_qfi(const DensityBlock& block, const Eigen::VectorXd& l) {
  BlockQfi out;
  const Eigen::Index dim = block.vectors.rows();
  const Eigen::Index r = block.vectors.cols();
  out.components = static_cast<std::size_t>(r);
  if (r == 0) return out;

  Eigen::MatrixXcd rho;
  Eigen::MatrixXcd gen;
  if (2 * r >= dim) {
    rho = block.dense();
    gen = l.cast<Complex>().asDiagonal();
    out.span_rank = static_cast<std::size_t>(dim);
  } else {
    Eigen::MatrixXcd span(dim, 2 * r);
    span.leftCols(r) = block.vectors;
    span.rightCols(r) = l.cast<Complex>().asDiagonal() * block.vectors;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(span);
    qr.setThreshold(1e-12);
    const Eigen::Index rank = qr.rank();
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, rank);
    const Eigen::MatrixXcd coords = q.adjoint() * block.vectors;
    rho = coords * block.weights.cast<Complex>().asDiagonal() * coords.adjoint();
    gen = q.adjoint() * l.cast<Complex>().asDiagonal() * q;
    out.span_rank = static_cast<std::size_t>(rank);
    out.rank_deficient = rank < 2 * r;
  }
  rho = (0.5 * (rho + rho.adjoint())).eval();

  const auto eig = dense_eigendecomposition(rho);
  const Eigen::MatrixXcd g_eig = eig.eigenvectors.adjoint() * gen * eig.eigenvectors;
  const Eigen::VectorXd& lambda = eig.eigenvalues;
  double f = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < kSldEigenvalueFloor) ++out.null_eigenvalues;
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
      const double sum = lambda(i) + lambda(j);
      if (sum <= kSldEigenvalueFloor) continue;
      const double diff = lambda(i) - lambda(j);
      f += 2.0 * diff * diff / sum * std::norm(g_eig(i, j));
    }
  }
  out.value = f;
  return out;
}

void check_orthonormal(const std::vector<StateVector>& family) {
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a; b < family.size(); ++b) {
      const Complex overlap = family[a].amplitudes().dot(family[b].amplitudes());
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > 1e-10) {
        throw std::invalid_argument(fmt::format("measurement family is not orthonormal (<{}|{}> = {:.3e})", a, b,
                                                std::abs(overlap)));
      }
    }
  }
}

}  // namespace

double qfi_pure(const StateVector& psi) { return variance_qfi(psi.amplitudes(), momenta(psi.basis())); }

double qfi_pure(const StateVector& psi, const SparseOperator& generator) {
  return variance_qfi(psi.amplitudes(), diagonal_generator(generator, psi.basis()));
}

BlockQfi qfi_mixed_block(const DensityBlock& block, const SparseOperator& generator) {
  return block_qfi(block, diagonal_generator(generator, *block.basis));
}

BlockQfi qfi_mixed_block(const DensityBlock& block) { return block_qfi(block, momenta(*block.basis)); }

nlohmann::json to_json(const QfiReport& report) {
  nlohmann::json j;
  j["eta"] = report.eta;
  j["block_qfi"] = report.block_qfi;
  j["weights"] = report.weights;
  j["total"] = report.total;
  j["delta_phi"] = report.delta_phi ? nlohmann::json(*report.delta_phi) : nlohmann::json(nullptr);
  j["span_ranks"] = report.span_ranks;
  j["null_eigenvalues"] = report.null_eigenvalues;
  return j;
}

LossyQfi::LossyQfi(const StateVector& psi, int threads) {
  const LossChannel channel(psi.basis_ptr());
  const auto blocks = channel.all_blocks(psi, threads);
  blocks_.resize(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t i) { blocks_[i] = qfi_mixed_block(blocks[i]); });
}

QfiReport LossyQfi::report(double eta) const {
  const auto w = loss_weights(particle_count(), eta);
  QfiReport out;
  out.eta = eta;
  out.weights = w.weights;
  for (std::size_t nu = 0; nu < blocks_.size(); ++nu) {
    out.block_qfi.push_back(blocks_[nu].value);
    out.span_ranks.push_back(blocks_[nu].span_rank);
    out.total += w.weights[nu] * blocks_[nu].value;
    if (w.weights[nu] > 0.0) out.null_eigenvalues += blocks_[nu].null_eigenvalues;
  }
  if (out.total > 0.0) out.delta_phi = 1.0 / std::sqrt(out.total);
  return out;
}

QfiReport qfi_lossy(const StateVector& psi, double eta, int threads) {
  return LossyQfi(psi, threads).report(eta);
}

std::vector<QfiReport> qfi_lossy_grid(const StateVector& psi, std::span<const double> etas, int threads) {
  const LossyQfi engine(psi, threads);
  std::vector<QfiReport> out;
  out.reserve(etas.size());
  for (double eta : etas) out.push_back(engine.report(eta));
  return out;
}

double cfi_projective(const StateVector& psi, double eta, double phi, const MeasurementFamilies& families,
                      double generator_offset) {
  const int n = psi.basis().particle_count();
  const auto w = loss_weights(n, eta);
  const LossChannel channel(psi.basis_ptr());
  constexpr double kSkip = 1e-14;
  double total = 0.0;
  for (int nu = 0; nu <= n && static_cast<std::size_t>(nu) < families.size(); ++nu) {
    const auto& family = families[static_cast<std::size_t>(nu)];
    const double g = w.weights[static_cast<std::size_t>(nu)];
    if (family.empty() || g == 0.0) continue;
    const auto& basis = channel.basis_after(nu);
    for (const auto& x : family) {
      if (!x.basis().same_space(*basis) || x.dimension() != basis->dimension()) {
        throw std::invalid_argument(fmt::format("measurement family {} is not on the {}-particle basis", nu, n - nu));
      }
    }
    check_orthonormal(family);

    const DensityBlock block = evolve_phase(channel.block(psi, nu), phi);
    const Eigen::VectorXd l = momenta(*basis).array() + generator_offset;
    const Eigen::MatrixXcd l_vectors = l.cast<Complex>().asDiagonal() * block.vectors;

    double p_sum = 0.0;
    double dp_sum = 0.0;
    double fisher = 0.0;
    for (const auto& x : family) {
      const Eigen::VectorXcd proj = block.vectors.adjoint() * x.amplitudes();    // <u_i|x>
      const Eigen::VectorXcd proj_l = l_vectors.adjoint() * x.amplitudes();      // <u_i|L|x>
      double p = 0.0;
      Complex a(0.0, 0.0);  // <x|L rho|x>
      for (Eigen::Index i = 0; i < proj.size(); ++i) {
        p += block.weights(i) * std::norm(proj(i));
        a += block.weights(i) * std::conj(proj_l(i)) * proj(i);
      }
      const double dp = -2.0 * a.imag();
      p_sum += p;
      dp_sum += dp;
      if (p >= kSkip) fisher += dp * dp / p;
    }
    const double p_rest = 1.0 - p_sum;
    if (p_rest >= kSkip) fisher += dp_sum * dp_sum / p_rest;
    total += g * fisher;
  }
  return total;
}

std::vector<StateVector> occupation_measurement(const BasisPtr& basis) {
  std::vector<StateVector> out;
  out.reserve(basis->dimension());
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    out.emplace_back(basis, std::move(e));
  }
  return out;
}

}  // namespace ringqfi
