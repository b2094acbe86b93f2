// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "ringqfi/fock.hpp"
#include "ringqfi/types.hpp"

namespace ringqfi {

inline constexpr double kNormTolerance = 1e-12;

/// Unit-norm amplitude vector over a Fock basis.
class StateVector {
 public:
  /// Throws std::invalid_argument unless | ||amplitudes|| - 1 | <= 1e-12.
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes);

  /// Rescales `amplitudes` to unit norm; throws on a zero vector.
  static StateVector normalized(BasisPtr basis, Eigen::VectorXcd amplitudes);

  const FockBasis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  /// Number of amplitudes with modulus above `threshold`.
  std::size_t support_size(double threshold = 0.0) const;

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
};

/// Text records: a "# basis <json descriptor>" line, a header line, then
/// one "ordinal,re,im" row per nonzero amplitude.
void write_state(std::ostream& os, const StateVector& state);

/// Reads the format written by write_state, rebuilding the basis from its
/// descriptor.
StateVector read_state(std::istream& is, std::size_t dimension_cap = kDefaultDimensionCap);

}  // namespace ringqfi
