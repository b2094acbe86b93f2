// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "oracles/oracles.hpp"
#include "ringqfi/analytic_fermion.hpp"
#include "ringqfi/qfi.hpp"
#include "ringqfi/states.hpp"

using namespace ringqfi;

TEST_CASE("table entries") {
  const auto t = fermion_qfi_exact(4, 0.3);
  CHECK(t.block_qfi[1] == 12.0);
  CHECK(std::abs(fermion_qfi_exact(2, 0.5).total - 2.0) < 1e-15);
  for (int n : {2, 8, 40}) CHECK(std::abs(fermion_qfi_exact(n, 1.0).total - n * n) < 1e-9);
  CHECK_THROWS(fermion_qfi_exact(3, 0.5));
  CHECK_THROWS(fermion_qfi_exact(0, 0.5));
  CHECK_THROWS(fermion_qfi_exact(4, 1.5));
}

TEST_CASE("binomial identity up to N = 100") {
  for (int n = 2; n <= 100; n += 2) {
    for (int i = 0; i <= 20; ++i) {
      const double eta = 0.05 * i;
      double direct = 0.0;
      for (int nu = 0; nu <= n; ++nu) {
        direct += oracle::binomial(n, nu) * std::pow(eta, n - nu) * std::pow(1.0 - eta, nu) * (n - nu) * n;
      }
      const auto t = fermion_qfi_exact(n, eta);
      CAPTURE(n);
      CAPTURE(eta);
      CHECK(std::abs(t.total - n * n * eta) <= 1e-10 * n * n);
      CHECK(std::abs(direct - n * n * eta) <= 1e-9 * n * n);
    }
  }
}

TEST_CASE("simulated fermions agree with the table") {
  for (int n : {2, 4}) {
    const LossyQfi engine(fermionic_superposition(ModeWindow(-n, n + 1), n));
    for (int i = 0; i <= 20; ++i) {
      const double eta = 0.05 * i;
      const auto sim = engine.report(eta);
      const auto table = fermion_qfi_exact(n, eta);
      CHECK(std::abs(sim.total - table.total) < 1e-10);
      for (int nu = 0; nu <= n; ++nu) {
        CHECK(std::abs(sim.block_qfi[static_cast<std::size_t>(nu)] - table.block_qfi[static_cast<std::size_t>(nu)]) <
              1e-10);
        CHECK(std::abs(sim.weights[static_cast<std::size_t>(nu)] - table.weights[static_cast<std::size_t>(nu)]) < 1e-14);
      }
    }
  }
}
