// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "oracles/oracles.hpp"
#include "ringqfi/errors.hpp"
#include "ringqfi/qfi.hpp"
#include "ringqfi/states.hpp"

using namespace ringqfi;

namespace {

double mean_l(const StateVector& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    m += std::norm(s.amplitudes()(static_cast<Eigen::Index>(i))) * s.basis().angular_momentum(i);
  }
  return m;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(a.amplitudes().dot(b.amplitudes())); }

TgPreparation tg(int n, int m, double g, double b) {
  HamiltonianParams p;
  p.g_tilde = g;
  p.b_tilde = b;
  return tg_ground_state(ModeWindow::reflection_symmetric(m), n, p);
}

}  // namespace

TEST_CASE("fermionic superposition") {
  const auto s = fermionic_superposition(ModeWindow(-1, 1), 2);
  CHECK(s.support_size(1e-14) == 2);
  for (const Occupation& occ : {Occupation{1, 1, 0}, Occupation{0, 1, 1}}) {
    const auto i = static_cast<Eigen::Index>(*s.basis().index_of(occ));
    CHECK(std::abs(s.amplitudes()(i) - Complex(std::sqrt(0.5), 0.0)) < 1e-15);
  }
  for (int n : {2, 4, 6}) {
    const auto f = fermionic_superposition(ModeWindow(-n / 2 - 1, n / 2 + 2), n);
    CHECK(std::abs(mean_l(f)) < 1e-14);
    CHECK(std::abs(qfi_pure(f) - n * n) < 1e-12);
  }
  CHECK_THROWS(fermionic_superposition(ModeWindow(-3, 3), 3));
  CHECK_THROWS(fermionic_superposition(ModeWindow(-1, 1), 4));
}

TEST_CASE("two-mode canonical states") {
  const auto b5 = make_basis(ModeWindow(-1, 2), 5, Statistics::bosonic);
  const auto noon = noon_state(b5);
  CHECK(noon.support_size(1e-14) == 2);
  CHECK(std::abs(qfi_pure(noon) - 25.0) < 1e-12);
  CHECK(std::abs(qfi_pure(unentangled_state(b5)) - 5.0) < 1e-12);

  const auto b1 = make_basis(ModeWindow(0, 1), 1, Statistics::bosonic);
  CHECK((noon_state(b1).amplitudes() - unentangled_state(b1).amplitudes()).cwiseAbs().maxCoeff() < 1e-15);

  // binomial amplitudes on |N - m, m>
  const auto u = unentangled_state(make_basis(ModeWindow(0, 1), 4, Statistics::bosonic));
  for (int m = 0; m <= 4; ++m) {
    const auto i = static_cast<Eigen::Index>(*u.basis().index_of({4 - m, m}));
    CHECK(std::abs(u.amplitudes()(i).real() - std::sqrt(oracle::binomial(4, m) / 16.0)) < 1e-15);
  }

  CHECK_THROWS(noon_state(make_basis(ModeWindow(1, 3), 2, Statistics::bosonic)));
  CHECK_THROWS(noon_state(make_basis(ModeWindow(0, 2), 2, Statistics::fermionic)));
}

TEST_CASE("binary superposition") {
  const auto b = make_basis(ModeWindow(-2, 2), 3, Statistics::bosonic);
  const Occupation a{0, 1, 1, 1, 0};  // K = 0
  const Occupation c{0, 0, 0, 1, 2};  // K = 5
  const auto s = binary_superposition(b, a, c);
  CHECK(std::abs(qfi_pure(s) - 25.0) < 1e-12);
  CHECK_THROWS(binary_superposition(b, a, a));
}

TEST_CASE("phase evolution") {
  const int n = 4;
  const auto basis = make_basis(ModeWindow(0, 1), n, Statistics::bosonic);
  const auto noon = noon_state(basis);
  const double phi = 0.37;
  const auto turned = evolve_phase(noon, phi);
  const auto i0 = static_cast<Eigen::Index>(*basis->index_of({n, 0}));
  const auto in = static_cast<Eigen::Index>(*basis->index_of({0, n}));
  CHECK(std::abs(turned.amplitudes()(i0) - Complex(std::sqrt(0.5), 0.0)) < 1e-15);
  CHECK(std::abs(turned.amplitudes()(in) - std::sqrt(0.5) * std::polar(1.0, n * phi)) < 1e-15);

  CHECK((evolve_phase(noon, 0.0).amplitudes() - noon.amplitudes()).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(29);
  const auto big = make_basis(ModeWindow(-2, 3), 3, Statistics::bosonic);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector s(big, oracle::random_unit_vector(rng, static_cast<Eigen::Index>(big->dimension())));
    const double a = 0.1 * trial + 0.05;
    const double c = 1.3 - 0.07 * trial;
    const auto once = evolve_phase(s, a + c);
    const auto twice = evolve_phase(evolve_phase(s, a), c);
    CHECK((once.amplitudes() - twice.amplitudes()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(once.amplitudes().norm() - 1.0) < 1e-12);
    CHECK(std::abs(qfi_pure(once) - qfi_pure(s)) < 1e-10);
  }

  // an L eigenstate only picks up a global phase
  const auto sector = make_basis(ModeWindow(-2, 3), 3, Statistics::bosonic, 2);
  const StateVector eig(sector, oracle::random_unit_vector(rng, static_cast<Eigen::Index>(sector->dimension())));
  const auto moved = evolve_phase(eig, 0.9);
  CHECK(std::abs(fidelity(eig, moved) - 1.0) < 1e-14);
  CHECK(std::abs(qfi_pure(moved)) < 1e-12);
}

TEST_CASE("TG ground state in the superposition regime") {
  for (int n : {2, 3}) {
    const auto prep = tg(n, 5, 10.0, 0.01);
    CAPTURE(n);
    CHECK(prep.population_zero + prep.population_full >= 0.99);
    CHECK(std::abs(prep.population_zero - prep.population_full) < 0.01);
    CHECK(prep.fidelity >= 0.99);
    CHECK(qfi_pure(prep.state) >= 0.98 * n * n);
    CHECK(prep.gap > 0.0);
  }
}

TEST_CASE("zero barrier is degenerate") {
  try {
    tg(2, 5, 10.0, 0.0);
    FAIL("expected a degenerate ground state");
  } catch (const DegenerateGroundStateError& e) {
    CHECK(e.gap() < 1e-8);
  }
}

TEST_CASE("leakage out of K = 0, N shrinks with the barrier") {
  double previous = 1.0;
  for (double b : {0.3, 0.1, 0.03, 0.01, 0.003, 0.001}) {
    const auto prep = tg(2, 5, 10.0, b);
    const double leak = 1.0 - prep.population_zero - prep.population_full;
    CAPTURE(b);
    CHECK(leak < previous);
    previous = leak;
  }
}

TEST_CASE("strong barrier decouples the particles") {
  // With a repulsive barrier the single-particle ground state is
  // (|0> - |1>)/sqrt(2); the product state is the unentangled state up to
  // the rotation e^{i pi L}, which leaves every Fisher information unchanged.
  HamiltonianParams p;
  p.g_tilde = 0.1;
  p.b_tilde = 40.0;
  TgOptions opt;
  opt.balance_sectors = false;
  const auto window = ModeWindow::reflection_symmetric(4);
  const auto prep = tg_ground_state(window, 2, p, opt);
  const auto reference = evolve_phase(unentangled_state(prep.state.basis_ptr()), std::numbers::pi);
  CHECK(fidelity(prep.state, reference) >= 0.99);
  CHECK(p.unentangled_regime(2));
}

TEST_CASE("sector balancing") {
  HamiltonianParams p;
  p.g_tilde = 10.0;
  CHECK(std::abs(balanced_stirring_phase(ModeWindow::reflection_symmetric(8), 3, p) - std::numbers::pi) < 1e-10);
  // off-centre windows move the balance point but keep the two branches degenerate
  const ModeWindow skewed(-1, 4);
  p.omega = balanced_stirring_phase(skewed, 2, p);
  p.b_tilde = 0.0;
  const auto zero = make_basis(skewed, 2, Statistics::bosonic, 0);
  const auto full = make_basis(skewed, 2, Statistics::bosonic, 2);
  const auto e0 = ground_states(build_hamiltonian(zero, p), 1).eigenvalues[0];
  const auto e2 = ground_states(build_hamiltonian(full, p), 1).eigenvalues[0];
  CHECK(std::abs(e0 - e2) < 1e-9);
}
