// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "oracles/oracles.hpp"
#include "ringqfi/operators.hpp"

using namespace ringqfi;

namespace {

// Permutation matrix taking oracle ordering to library ordinals.
Eigen::MatrixXcd reorder(const FockBasis& basis, const std::vector<oracle::Occ>& states) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.dimension()),
                                              static_cast<Eigen::Index>(states.size()));
  for (std::size_t s = 0; s < states.size(); ++s) {
    p(static_cast<Eigen::Index>(*basis.index_of(states[s])), static_cast<Eigen::Index>(s)) = 1.0;
  }
  return p;
}

// H from dense products of oracle ladder matrices, in library ordering.
Eigen::MatrixXcd dense_hamiltonian(const ModeWindow& w, int n, const HamiltonianParams& p, const FockBasis& basis) {
  const int m = w.mode_count();
  const auto s0 = oracle::all_states(m, n, false);
  const auto s1 = oracle::all_states(m, n - 1, false);
  const auto s2 = oracle::all_states(m, n - 2, false);
  std::vector<Eigen::MatrixXcd> a1, a2;
  for (int j = 0; j < m; ++j) {
    a1.push_back(oracle::annihilation(s0, s1, j, false));
    a2.push_back(oracle::annihilation(s1, s2, j, false));
  }
  const auto d = static_cast<Eigen::Index>(s0.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < m; ++j) {
    const double x = w.momentum(j) - p.omega / (2.0 * std::numbers::pi);
    h += p.e0 * x * x * a1[j].adjoint() * a1[j];
    for (int i = 0; i < m; ++i) h += p.b_tilde * a1[i].adjoint() * a1[j];
  }
  for (int k1 = 0; k1 < m; ++k1) {
    for (int k2 = 0; k2 < m; ++k2) {
      for (int q = -m; q <= m; ++q) {
        const int i3 = k1 - q;
        const int i4 = k2 + q;
        if (i3 < 0 || i3 >= m || i4 < 0 || i4 >= m) continue;
        h += 0.5 * p.g_tilde * a1[k1].adjoint() * a2[k2].adjoint() * a2[i3] * a1[i4];
      }
    }
  }
  const auto perm = reorder(basis, s0);
  return perm * h * perm.adjoint();
}

}  // namespace

TEST_CASE("single-particle two-mode Hamiltonian") {
  const double b = 0.37;
  HamiltonianParams p;
  p.omega = std::numbers::pi;
  p.b_tilde = b;
  const auto basis = make_basis(ModeWindow(0, 1), 1, Statistics::bosonic);
  const Eigen::MatrixXcd h = build_hamiltonian(basis, p).dense();
  Eigen::Matrix2cd expected;
  expected << 0.25 + b, b, b, 0.25 + b;
  CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Hamiltonian matches dense operator products") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (auto [lo, hi, n] : {std::tuple{-1, 1, 2}, std::tuple{-1, 2, 3}, std::tuple{-2, 2, 2}, std::tuple{0, 3, 4}}) {
    HamiltonianParams p;
    p.omega = 3.0 * u(rng);
    p.b_tilde = u(rng);
    p.g_tilde = u(rng);
    const auto basis = make_basis(ModeWindow(lo, hi), n, Statistics::bosonic);
    const Eigen::MatrixXcd h = build_hamiltonian(basis, p).dense();
    const Eigen::MatrixXcd ref = dense_hamiltonian(ModeWindow(lo, hi), n, p, *basis);
    CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("interaction element between |n_0 = 2> and |n_-1 = 1, n_1 = 1>") {
  HamiltonianParams p;
  p.g_tilde = 1.7;
  const ModeWindow w(-1, 1);
  const auto basis = make_basis(w, 2, Statistics::bosonic);
  const Eigen::MatrixXcd h = build_hamiltonian(basis, p).dense();
  const auto row = static_cast<Eigen::Index>(*basis->index_of({1, 0, 1}));
  const auto col = static_cast<Eigen::Index>(*basis->index_of({0, 2, 0}));
  // two orderings of a+_{-1} a+_{1} a_0 a_0, each sqrt(2), times g/2
  CHECK(std::abs(h(row, col) - Complex(std::sqrt(2.0) * 1.7, 0.0)) < 1e-14);
  const Eigen::MatrixXcd ref = dense_hamiltonian(w, 2, p, *basis);
  CHECK(std::abs(h(row, col) - ref(row, col)) < 1e-14);
}

TEST_CASE("Hamiltonian is exactly Hermitian") {
  HamiltonianParams p;
  p.omega = 2.3;
  p.b_tilde = 0.013;
  p.g_tilde = 7.1;
  const auto basis = make_basis(ModeWindow(-2, 3), 4, Statistics::bosonic);
  const auto h = build_hamiltonian(basis, p);
  const Eigen::MatrixXcd d = h.dense();
  CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.hermitian());
}

TEST_CASE("barrier is the only term that breaks angular momentum") {
  const auto basis = make_basis(ModeWindow(-1, 2), 3, Statistics::bosonic);
  const Eigen::MatrixXcd l = angular_momentum(basis).dense();
  HamiltonianParams p;
  p.g_tilde = 4.0;
  p.omega = 1.1;
  const Eigen::MatrixXcd h0 = build_hamiltonian(basis, p).dense();
  CHECK((h0 * l - l * h0).cwiseAbs().maxCoeff() < 1e-12);
  p.b_tilde = 0.2;
  const Eigen::MatrixXcd h1 = build_hamiltonian(basis, p).dense();
  CHECK((h1 * l - l * h1).norm() > 0.1);
}

TEST_CASE("number operator sums to N") {
  for (auto stats : {Statistics::bosonic, Statistics::fermionic}) {
    const ModeWindow w(-2, 2);
    const auto top = make_basis(w, 3, stats);
    const auto below = make_basis(w, 2, stats);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(top->dimension()),
                                                  static_cast<Eigen::Index>(top->dimension()));
    for (int k = w.k_min; k <= w.k_max; ++k) {
      const Eigen::MatrixXcd a = annihilate(top, below, k).dense();
      sum += a.adjoint() * a;
    }
    const auto id = Eigen::MatrixXcd::Identity(sum.rows(), sum.cols());
    CHECK((sum - 3.0 * id).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("fermionic anticommutation") {
  const ModeWindow w(0, 3);
  const auto b3 = make_basis(w, 3, Statistics::fermionic);
  const auto b2 = make_basis(w, 2, Statistics::fermionic);
  const auto b1 = make_basis(w, 1, Statistics::fermionic);
  const auto b2_id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(b2->dimension()),
                                                static_cast<Eigen::Index>(b2->dimension()));
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const Eigen::MatrixXcd aj_ak = annihilate(b2, b1, j).dense() * annihilate(b3, b2, k).dense();
      const Eigen::MatrixXcd ak_aj = annihilate(b2, b1, k).dense() * annihilate(b3, b2, j).dense();
      CHECK((aj_ak + ak_aj).cwiseAbs().maxCoeff() == 0.0);
      // {a_j, a_k^dagger} = delta_jk on the two-particle space
      const Eigen::MatrixXcd a = annihilate(b3, b2, j).dense() * create(b2, b3, k).dense() +
                                 create(b1, b2, k).dense() * annihilate(b2, b1, j).dense();
      CHECK((a - (j == k ? 1.0 : 0.0) * b2_id).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("ladder matrix elements") {
  const ModeWindow w(0, 1);
  const auto b2 = make_basis(w, 2, Statistics::bosonic);
  const auto b1 = make_basis(w, 1, Statistics::bosonic);
  const Eigen::MatrixXcd a0 = annihilate(b2, b1, 0).dense();
  const auto from = static_cast<Eigen::Index>(*b2->index_of({2, 0}));
  const auto to = static_cast<Eigen::Index>(*b1->index_of({1, 0}));
  CHECK(std::abs(a0(to, from) - std::sqrt(2.0)) < 1e-15);
  CHECK(a0.col(static_cast<Eigen::Index>(*b2->index_of({0, 2}))).norm() == 0.0);

  const auto f2 = make_basis(w, 2, Statistics::fermionic);
  const auto f1 = make_basis(w, 1, Statistics::fermionic);
  const Eigen::MatrixXcd a1 = annihilate(f2, f1, 1).dense();
  CHECK(a1(static_cast<Eigen::Index>(*f1->index_of({1, 0})), 0).real() == -1.0);

  CHECK_THROWS(annihilate(b2, b1, 5));
}

TEST_CASE("ladder operators match the oracle on random windows") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick_m(1, 5), pick_n(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = pick_m(rng);
    const int n = pick_n(rng);
    for (bool fermionic : {false, true}) {
      if (fermionic && n > m) continue;
      const auto stats = fermionic ? Statistics::fermionic : Statistics::bosonic;
      const ModeWindow w(-1, m - 2);
      const auto top = make_basis(w, n, stats);
      const auto below = make_basis(w, n - 1, stats);
      const auto s_top = oracle::all_states(m, n, fermionic);
      const auto s_below = oracle::all_states(m, n - 1, fermionic);
      const auto p_top = reorder(*top, s_top);
      const auto p_below = reorder(*below, s_below);
      for (int j = 0; j < m; ++j) {
        const Eigen::MatrixXcd ref = p_below * oracle::annihilation(s_top, s_below, j, fermionic) * p_top.adjoint();
        const auto a = annihilate(top, below, w.momentum(j));
        CHECK((a.dense() - ref).cwiseAbs().maxCoeff() == 0.0);
        CHECK((create(below, top, w.momentum(j)).dense() - ref.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("angular momentum operator") {
  const auto all_up = make_basis(ModeWindow(0, 1), 4, Statistics::bosonic, 4);
  CHECK(angular_momentum(all_up).dense()(0, 0).real() == 4.0);

  const auto sector = make_basis(ModeWindow(-2, 2), 3, Statistics::bosonic, 1);
  const Eigen::MatrixXcd l = angular_momentum(sector).dense();
  CHECK((l - Eigen::MatrixXcd::Identity(l.rows(), l.cols())).cwiseAbs().maxCoeff() == 0.0);

  const int n = 2;
  const auto fermi = make_basis(ModeWindow(-n, n), 2 * n, Statistics::fermionic);
  const auto sea = fermi->index_of({1, 1, 1, 1, 0});
  REQUIRE(sea.has_value());
  CHECK(angular_momentum(fermi).dense()(static_cast<Eigen::Index>(*sea), static_cast<Eigen::Index>(*sea)).real() ==
        -n);
}

TEST_CASE("H prime diagonal") {
  HamiltonianParams p;
  const auto one = make_basis(ModeWindow(0, 1), 1, Statistics::bosonic);
  const auto at0 = static_cast<Eigen::Index>(*one->index_of({1, 0}));
  CHECK(build_hprime(one, p).dense()(at0, at0).real() == doctest::Approx(0.25).epsilon(1e-15));
  p.delta_omega = std::numbers::pi;
  CHECK(std::abs(build_hprime(one, p).dense()(at0, at0)) < 1e-15);

  // (k - 1/2)^2 is symmetric under k -> 1 - k
  p.delta_omega = 0.0;
  const auto b = make_basis(ModeWindow(-1, 2), 2, Statistics::bosonic);
  const auto h = build_hprime(b, p);
  CHECK(h.is_diagonal());
  const auto diag = h.real_diagonal();
  for (std::size_t i = 0; i < b->dimension(); ++i) {
    auto mirrored = b->state(i);
    std::reverse(mirrored.begin(), mirrored.end());
    CHECK(diag(static_cast<Eigen::Index>(i)) ==
          doctest::Approx(diag(static_cast<Eigen::Index>(*b->index_of(mirrored)))).epsilon(1e-14));
  }
}

TEST_CASE("coordinate export") {
  HamiltonianParams p;
  p.b_tilde = 0.5;
  p.g_tilde = 1.0;
  const auto basis = make_basis(ModeWindow(-1, 1), 2, Statistics::bosonic);
  const auto h = build_hamiltonian(basis, p);
  std::ostringstream os;
  h.write_coo(os);
  std::istringstream is(os.str());
  std::string hash;
  long rows = 0, cols = 0, nnz = 0;
  is >> hash >> rows >> cols >> nnz;
  CHECK(hash == "#");
  CHECK(rows == 6);
  CHECK(cols == 6);
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(6, 6);
  long r, c, count = 0;
  double re, im;
  while (is >> r >> c >> re >> im) {
    rebuilt(r, c) = Complex(re, im);
    ++count;
  }
  CHECK(count == nnz);
  CHECK((rebuilt - h.dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("regime flags") {
  HamiltonianParams p;
  p.g_tilde = 10.0;
  p.b_tilde = 0.01;
  CHECK(p.superposition_regime(5));
  CHECK_FALSE(p.unentangled_regime(5));
  p.b_tilde = 200.0;
  CHECK(p.unentangled_regime(5));
  CHECK_FALSE(p.superposition_regime(5));
  p.b_tilde = 0.0;
  CHECK_FALSE(p.superposition_regime(5));
}
