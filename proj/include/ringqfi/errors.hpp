// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ringqfi {

/// The (N, K) constraint admits no occupation vectors.
class EmptySectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A basis or dense matrix would exceed the configured size cap.
class DimensionCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped at its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), achieved_residual_(achieved_residual) {}

  double achieved_residual() const noexcept { return achieved_residual_; }

 private:
  double achieved_residual_;
};

/// The lowest eigenvalues are degenerate, so no single ground vector is
/// well defined.
class DegenerateGroundStateError : public std::runtime_error {
 public:
  DegenerateGroundStateError(const std::string& what, double gap)
      : std::runtime_error(what), gap_(gap) {}

  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

/// The input-state optimizer failed to beat its own baselines.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ringqfi
