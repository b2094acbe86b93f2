// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/parallel.hpp"

namespace ringqfi {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Applies a single ladder operator in place. Returns the matrix element
// (sqrt factor times fermionic sign), or 0 when the result vanishes.
double ladder(Occupation& n, int mode, bool raise, Statistics stats) {
  auto& slot = n[static_cast<std::size_t>(mode)];
  double sign = 1.0;
  if (stats == Statistics::fermionic) {
    int below = 0;
    for (int j = 0; j < mode; ++j) below += n[static_cast<std::size_t>(j)];
    if (below % 2 != 0) sign = -1.0;
    if (raise) {
      if (slot != 0) return 0.0;
      slot = 1;
    } else {
      if (slot != 1) return 0.0;
      slot = 0;
    }
    return sign;
  }
  if (raise) {
    ++slot;
    return std::sqrt(static_cast<double>(slot));
  }
  if (slot == 0) return 0.0;
  const double amp = std::sqrt(static_cast<double>(slot));
  --slot;
  return amp;
}

SparseMatrix from_triplets(Eigen::Index rows, Eigen::Index cols, const std::vector<Triplet>& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

SparseOperator diagonal_operator(const BasisPtr& basis, const std::vector<double>& diag) {
  std::vector<Triplet> t;
  t.reserve(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] != 0.0) {
      t.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(diag[i], 0.0));
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  return SparseOperator(basis, basis, from_triplets(dim, dim, t), true);
}

void check_ladder_pair(const BasisPtr& upper, const BasisPtr& lower, int k) {
  if (!(upper->window() == lower->window()) || upper->statistics() != lower->statistics()) {
    throw std::invalid_argument("ladder operator bases differ in window or statistics");
  }
  if (upper->particle_count() != lower->particle_count() + 1) {
    throw std::invalid_argument("ladder operator bases must differ by one particle");
  }
  if (!upper->window().contains(k)) {
    throw std::out_of_range(fmt::format("mode k={} outside window [{}, {}]", k,
                                        upper->window().k_min, upper->window().k_max));
  }
}

}  // namespace

SparseOperator::SparseOperator(BasisPtr basis_in, BasisPtr basis_out, SparseMatrix matrix, bool hermitian)
    : in_(std::move(basis_in)), out_(std::move(basis_out)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (!in_ || !out_) throw std::invalid_argument("operator bases must be non-null");
  if (matrix_.rows() != static_cast<Eigen::Index>(out_->dimension()) ||
      matrix_.cols() != static_cast<Eigen::Index>(in_->dimension())) {
    throw std::invalid_argument("operator shape does not match its bases");
  }
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != matrix_.cols()) throw std::invalid_argument("operator/vector dimension mismatch");
  return matrix_ * v;
}

SparseOperator SparseOperator::adjoint() const {
  SparseMatrix adj = matrix_.adjoint();
  adj.makeCompressed();
  return SparseOperator(out_, in_, std::move(adj), hermitian_);
}

Eigen::MatrixXcd SparseOperator::dense() const { return Eigen::MatrixXcd(matrix_); }

bool SparseOperator::is_diagonal() const {
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      if (it.row() != it.col() && it.value() != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

Eigen::VectorXd SparseOperator::real_diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(std::min(matrix_.rows(), matrix_.cols()));
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      if (it.row() == it.col()) d(it.row()) += it.value().real();
    }
  }
  return d;
}

double SparseOperator::norm_bound() const {
  double best = 0.0;
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

void SparseOperator::write_coo(std::ostream& os) const {
  os << fmt::format("# {} {} {}\n", matrix_.rows(), matrix_.cols(), matrix_.nonZeros());
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      os << fmt::format("{} {} {:.17g} {:.17g}\n", it.row(), it.col(), it.value().real(), it.value().imag());
    }
  }
}

double HamiltonianParams::coupling_for(int mode_count) const {
  auto it = effective_coupling.find(mode_count);
  return it == effective_coupling.end() ? g_tilde : it->second;
}

bool HamiltonianParams::superposition_regime(int n_particles) const {
  const double scale = g_tilde * std::sqrt(static_cast<double>(n_particles)) / 2.0;
  return b_tilde > 0.0 && b_tilde <= 0.1 * scale;
}

bool HamiltonianParams::unentangled_regime(int n_particles) const {
  const double scale = g_tilde * std::sqrt(static_cast<double>(n_particles)) / 2.0;
  return b_tilde >= 10.0 * scale;
}

SparseOperator annihilate(const BasisPtr& basis_n, const BasisPtr& basis_n_minus_1, int k) {
  check_ladder_pair(basis_n, basis_n_minus_1, k);
  const int mode = basis_n->window().mode_index(k);
  std::vector<Triplet> t;
  t.reserve(basis_n->dimension());
  Occupation work;
  for (std::size_t c = 0; c < basis_n->dimension(); ++c) {
    work = basis_n->state(c);
    const double amp = ladder(work, mode, false, basis_n->statistics());
    if (amp == 0.0) continue;
    if (auto r = basis_n_minus_1->index_of(work)) {
      t.emplace_back(static_cast<int>(*r), static_cast<int>(c), Complex(amp, 0.0));
    }
  }
  return SparseOperator(basis_n, basis_n_minus_1,
                        from_triplets(static_cast<Eigen::Index>(basis_n_minus_1->dimension()),
                                      static_cast<Eigen::Index>(basis_n->dimension()), t));
}

SparseOperator create(const BasisPtr& basis_n_minus_1, const BasisPtr& basis_n, int k) {
  check_ladder_pair(basis_n, basis_n_minus_1, k);
  const int mode = basis_n->window().mode_index(k);
  std::vector<Triplet> t;
  t.reserve(basis_n_minus_1->dimension());
  Occupation work;
  for (std::size_t c = 0; c < basis_n_minus_1->dimension(); ++c) {
    work = basis_n_minus_1->state(c);
    const double amp = ladder(work, mode, true, basis_n->statistics());
    if (amp == 0.0) continue;
    if (auto r = basis_n->index_of(work)) {
      t.emplace_back(static_cast<int>(*r), static_cast<int>(c), Complex(amp, 0.0));
    }
  }
  return SparseOperator(basis_n_minus_1, basis_n,
                        from_triplets(static_cast<Eigen::Index>(basis_n->dimension()),
                                      static_cast<Eigen::Index>(basis_n_minus_1->dimension()), t));
}

SparseOperator angular_momentum(const BasisPtr& basis) {
  std::vector<double> diag(basis->dimension());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = basis->angular_momentum(i);
  return diagonal_operator(basis, diag);
}

SparseOperator build_hprime(const BasisPtr& basis, const HamiltonianParams& params) {
  const auto& window = basis->window();
  std::vector<double> single(static_cast<std::size_t>(window.mode_count()));
  for (int j = 0; j < window.mode_count(); ++j) {
    const double shift = window.momentum(j) - 0.5 + params.delta_omega / (2.0 * std::numbers::pi);
    single[static_cast<std::size_t>(j)] = params.e0 * shift * shift;
  }
  std::vector<double> diag(basis->dimension(), 0.0);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const auto& n = basis->state(i);
    for (std::size_t j = 0; j < single.size(); ++j) diag[i] += single[j] * n[j];
  }
  return diagonal_operator(basis, diag);
}

SparseOperator build_hamiltonian(const BasisPtr& basis, const HamiltonianParams& params, int threads) {
  const auto& window = basis->window();
  const int m = window.mode_count();
  const Statistics stats = basis->statistics();
  const double g = params.coupling_for(m);
  if (g < 0.0) throw std::invalid_argument("interaction strength must be non-negative");

  std::vector<double> kinetic(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double shift = window.momentum(j) - params.omega / (2.0 * std::numbers::pi);
    kinetic[static_cast<std::size_t>(j)] = params.e0 * shift * shift;
  }
  const double barrier = params.e0 * params.b_tilde;
  const double contact = 0.5 * params.e0 * g;

  const std::size_t dim = basis->dimension();
  // Upper-triangle entries (row <= col) of each column, merged per column.
  std::vector<std::vector<std::pair<int, Complex>>> columns(dim);

  parallel_for(dim, threads, [&](std::size_t c) {
    std::vector<std::pair<int, Complex>> acc;
    const Occupation& base = basis->state(c);
    auto emit = [&](const Occupation& target, double amp) {
      if (auto r = basis->index_of(target); r && *r <= c) {
        acc.emplace_back(static_cast<int>(*r), Complex(amp, 0.0));
      }
    };

    double diag = 0.0;
    for (int j = 0; j < m; ++j) diag += kinetic[static_cast<std::size_t>(j)] * base[static_cast<std::size_t>(j)];
    acc.emplace_back(static_cast<int>(c), Complex(diag, 0.0));

    Occupation one;
    Occupation two;
    if (barrier != 0.0) {
      for (int p = 0; p < m; ++p) {
        if (base[static_cast<std::size_t>(p)] == 0) continue;
        one = base;
        const double a = ladder(one, p, false, stats);
        for (int k1 = 0; k1 < m; ++k1) {
          two = one;
          const double b = ladder(two, k1, true, stats);
          if (b != 0.0) emit(two, barrier * a * b);
        }
      }
    }

    if (contact != 0.0) {
      // a+_{k1} a+_{k2} a_{p1} a_{p2} with k1 + k2 = p1 + p2
      Occupation three;
      for (int p2 = 0; p2 < m; ++p2) {
        if (base[static_cast<std::size_t>(p2)] == 0) continue;
        one = base;
        const double a2 = ladder(one, p2, false, stats);
        for (int p1 = 0; p1 < m; ++p1) {
          if (one[static_cast<std::size_t>(p1)] == 0) continue;
          two = one;
          const double a1 = ladder(two, p1, false, stats);
          if (a1 == 0.0) continue;
          const int total = p1 + p2;
          for (int k1 = std::max(0, total - (m - 1)); k1 <= std::min(m - 1, total); ++k1) {
            const int k2 = total - k1;
            three = two;
            const double c2 = ladder(three, k2, true, stats);
            if (c2 == 0.0) continue;
            const double c1 = ladder(three, k1, true, stats);
            if (c1 == 0.0) continue;
            emit(three, contact * a2 * a1 * c2 * c1);
          }
        }
      }
    }

    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    auto& out = columns[c];
    for (const auto& [row, value] : acc) {
      if (!out.empty() && out.back().first == row) {
        out.back().second += value;
      } else {
        out.emplace_back(row, value);
      }
    }
  });

  std::size_t count = 0;
  for (const auto& col : columns) count += 2 * col.size();
  std::vector<Triplet> t;
  t.reserve(count);
  for (std::size_t c = 0; c < dim; ++c) {
    for (const auto& [row, value] : columns[c]) {
      if (value == Complex(0.0, 0.0)) continue;
      if (static_cast<std::size_t>(row) == c) {
        t.emplace_back(row, static_cast<int>(c), Complex(value.real(), 0.0));
      } else {
        t.emplace_back(row, static_cast<int>(c), value);
        t.emplace_back(static_cast<int>(c), row, std::conj(value));
      }
    }
    columns[c].clear();
    columns[c].shrink_to_fit();
  }
  const auto n = static_cast<Eigen::Index>(dim);
  return SparseOperator(basis, basis, from_triplets(n, n, t), true);
}

}  // namespace ringqfi
