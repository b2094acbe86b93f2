// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace ringqfi {

enum class Statistics { bosonic, fermionic };

std::string_view to_string(Statistics s);
Statistics parse_statistics(std::string_view text);

/// Contiguous range of angular-momentum quantum numbers k_min..k_max.
struct ModeWindow {
  int k_min = 0;
  int k_max = 0;

  ModeWindow() = default;
  ModeWindow(int lo, int hi);

  int mode_count() const noexcept { return k_max - k_min + 1; }
  bool contains(int k) const noexcept { return k >= k_min && k <= k_max; }
  int mode_index(int k) const noexcept { return k - k_min; }
  int momentum(int mode_index) const noexcept { return k_min + mode_index; }

  /// M modes placed around the band k = 0..N-1, with the surplus split
  /// as evenly as possible (the odd extra mode goes below).
  static ModeWindow centered(int n_particles, int mode_count);

  /// M modes mapped onto themselves by k -> 1 - k when M is even (the
  /// reflection that exchanges the K = 0 and K = N branches at a stirring
  /// phase of pi). Odd M is centered on k = 0.
  static ModeWindow reflection_symmetric(int mode_count);

  friend bool operator==(const ModeWindow&, const ModeWindow&) = default;
};

/// Occupation numbers n_k, indexed by mode_index(k).
using Occupation = std::vector<int>;

struct OccupationHash {
  std::size_t operator()(const Occupation& n) const noexcept;
};

inline constexpr std::size_t kDefaultDimensionCap = 500000;

/// Fixed-N Fock basis over a mode window, optionally restricted to one
/// total angular momentum sector K = sum_k k n_k.
///
/// States are enumerated in descending lexicographic order of the
/// occupation vector (lowest mode first), so ordinals are reproducible.
/// Instances are immutable after construction.
class FockBasis {
 public:
  static FockBasis build(ModeWindow window, int n_particles, Statistics statistics,
                         std::optional<int> sector = std::nullopt,
                         std::size_t dimension_cap = kDefaultDimensionCap);

  const ModeWindow& window() const noexcept { return window_; }
  int mode_count() const noexcept { return window_.mode_count(); }
  int particle_count() const noexcept { return n_particles_; }
  Statistics statistics() const noexcept { return statistics_; }
  std::optional<int> sector() const noexcept { return sector_; }
  std::size_t dimension() const noexcept { return states_.size(); }

  const Occupation& state(std::size_t ordinal) const { return states_.at(ordinal); }
  const std::vector<Occupation>& states() const noexcept { return states_; }

  /// Ordinal of an occupation vector, or nullopt if it is not in the basis.
  std::optional<std::size_t> index_of(const Occupation& n) const;

  /// Total angular momentum K of the state at `ordinal`.
  int angular_momentum(std::size_t ordinal) const { return momenta_.at(ordinal); }

  /// Same window, statistics and particle count (sector ignored).
  bool same_space(const FockBasis& other) const noexcept;

  nlohmann::json descriptor() const;

 private:
  friend std::map<int, FockBasis> sector_split(const FockBasis& basis);

  FockBasis(ModeWindow window, int n_particles, Statistics statistics,
            std::optional<int> sector, std::vector<Occupation> states);

  ModeWindow window_;
  int n_particles_ = 0;
  Statistics statistics_ = Statistics::bosonic;
  std::optional<int> sector_;
  std::vector<Occupation> states_;
  std::vector<int> momenta_;
  std::unordered_map<Occupation, std::size_t, OccupationHash> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr make_basis(ModeWindow window, int n_particles, Statistics statistics,
                    std::optional<int> sector = std::nullopt,
                    std::size_t dimension_cap = kDefaultDimensionCap);

/// Unrestricted dimension: C(N+M-1, M-1) for bosons, C(M, N) for fermions.
/// Saturates at SIZE_MAX.
std::size_t unrestricted_dimension(int mode_count, int n_particles, Statistics statistics);

/// Splits an unrestricted basis into its angular momentum sectors.
std::map<int, FockBasis> sector_split(const FockBasis& basis);

inline constexpr int kBasisFormatVersion = 1;

}  // namespace ringqfi
