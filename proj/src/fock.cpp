// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/fock.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "ringqfi/errors.hpp"

namespace ringqfi {

std::string_view to_string(Statistics s) {
  return s == Statistics::bosonic ? "bosonic" : "fermionic";
}

Statistics parse_statistics(std::string_view text) {
  if (text == "bosonic" || text == "boson" || text == "bosons") return Statistics::bosonic;
  if (text == "fermionic" || text == "fermion" || text == "fermions") return Statistics::fermionic;
  throw std::invalid_argument(fmt::format("unknown statistics '{}'", text));
}

ModeWindow::ModeWindow(int lo, int hi) : k_min(lo), k_max(hi) {
  if (hi < lo) {
    throw std::invalid_argument(fmt::format("mode window [{}, {}] is empty", lo, hi));
  }
}

ModeWindow ModeWindow::centered(int n_particles, int mode_count) {
  if (mode_count < 1) throw std::invalid_argument("mode count must be at least 1");
  const int surplus = mode_count - n_particles;
  // floor/ceil of surplus/2 for either sign
  const int lower = surplus >= 0 ? (surplus + 1) / 2 : -((-surplus) / 2);
  const int upper = surplus - lower;
  return ModeWindow(-lower, n_particles - 1 + upper);
}

ModeWindow ModeWindow::reflection_symmetric(int mode_count) {
  if (mode_count < 1) throw std::invalid_argument("mode count must be at least 1");
  if (mode_count % 2 == 0) return ModeWindow(1 - mode_count / 2, mode_count / 2);
  return ModeWindow(-(mode_count - 1) / 2, (mode_count - 1) / 2);
}

std::size_t OccupationHash::operator()(const Occupation& n) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : n) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t unrestricted_dimension(int mode_count, int n_particles, Statistics statistics) {
  if (n_particles < 0 || mode_count < 1) return 0;
  // C(n, r) with saturation
  auto choose = [](long long n, long long r) -> std::size_t {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    long double acc = 1.0L;
    unsigned long long exact = 1;
    bool overflow = false;
    for (long long i = 1; i <= r; ++i) {
      acc = acc * static_cast<long double>(n - r + i) / static_cast<long double>(i);
      if (!overflow) {
        // exact product stays integral at every step
        unsigned long long numer = exact;
        if (numer > std::numeric_limits<unsigned long long>::max() /
                        static_cast<unsigned long long>(n - r + i)) {
          overflow = true;
        } else {
          exact = numer * static_cast<unsigned long long>(n - r + i) / static_cast<unsigned long long>(i);
        }
      }
    }
    if (!overflow) return static_cast<std::size_t>(exact);
    if (acc >= static_cast<long double>(std::numeric_limits<std::size_t>::max())) {
      return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(acc);
  };
  if (statistics == Statistics::bosonic) return choose(n_particles + mode_count - 1, mode_count - 1);
  return choose(mode_count, n_particles);
}

namespace {

class Enumerator {
 public:
  Enumerator(const ModeWindow& window, int n_particles, Statistics statistics,
             std::optional<int> sector, std::size_t cap)
      : window_(window),
        m_(window.mode_count()),
        n_(n_particles),
        max_occ_(statistics == Statistics::fermionic ? 1 : n_particles),
        sector_(sector),
        cap_(cap),
        current_(static_cast<std::size_t>(window.mode_count()), 0) {}

  std::vector<Occupation> run() {
    recurse(0, n_, 0);
    return std::move(out_);
  }

 private:
  // Range of K achievable by placing `remaining` particles in modes >= mode.
  bool reachable(int mode, int remaining, long long k_needed) const {
    if (remaining == 0) return k_needed == 0;
    const int free_modes = m_ - mode;
    if (free_modes <= 0) return false;
    if (max_occ_ == 1) {
      if (remaining > free_modes) return false;
      long long lo = 0;
      long long hi = 0;
      for (int j = 0; j < remaining; ++j) {
        lo += window_.momentum(mode + j);
        hi += window_.momentum(m_ - 1 - j);
      }
      return k_needed >= lo && k_needed <= hi;
    }
    const long long lo = static_cast<long long>(remaining) * window_.momentum(mode);
    const long long hi = static_cast<long long>(remaining) * window_.k_max;
    return k_needed >= lo && k_needed <= hi;
  }

  void recurse(int mode, int remaining, long long k_so_far) {
    if (sector_ && !reachable(mode, remaining, *sector_ - k_so_far)) return;
    if (mode == m_ - 1) {
      if (remaining > max_occ_) return;
      current_[static_cast<std::size_t>(mode)] = remaining;
      if (out_.size() >= cap_) {
        throw DimensionCapError(fmt::format("Fock basis exceeds dimension cap {}", cap_));
      }
      out_.push_back(current_);
      current_[static_cast<std::size_t>(mode)] = 0;
      return;
    }
    for (int occ = std::min(remaining, max_occ_); occ >= 0; --occ) {
      current_[static_cast<std::size_t>(mode)] = occ;
      recurse(mode + 1, remaining - occ,
              k_so_far + static_cast<long long>(occ) * window_.momentum(mode));
    }
    current_[static_cast<std::size_t>(mode)] = 0;
  }

  ModeWindow window_;
  int m_;
  int n_;
  int max_occ_;
  std::optional<int> sector_;
  std::size_t cap_;
  Occupation current_;
  std::vector<Occupation> out_;
};

}  // namespace

FockBasis::FockBasis(ModeWindow window, int n_particles, Statistics statistics,
                     std::optional<int> sector, std::vector<Occupation> states)
    : window_(window),
      n_particles_(n_particles),
      statistics_(statistics),
      sector_(sector),
      states_(std::move(states)) {
  momenta_.reserve(states_.size());
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    int k_total = 0;
    for (int j = 0; j < window_.mode_count(); ++j) {
      k_total += window_.momentum(j) * states_[i][static_cast<std::size_t>(j)];
    }
    momenta_.push_back(k_total);
    index_.emplace(states_[i], i);
  }
}

FockBasis FockBasis::build(ModeWindow window, int n_particles, Statistics statistics,
                           std::optional<int> sector, std::size_t dimension_cap) {
  if (n_particles < 0) throw std::invalid_argument("particle number must be non-negative");
  if (window.mode_count() < 1) throw std::invalid_argument("mode window is empty");
  if (!sector) {
    const std::size_t dim = unrestricted_dimension(window.mode_count(), n_particles, statistics);
    if (dim > dimension_cap) {
      throw DimensionCapError(fmt::format("Fock basis dimension {} exceeds cap {}", dim, dimension_cap));
    }
  }
  auto states = Enumerator(window, n_particles, statistics, sector, dimension_cap).run();
  if (states.empty()) {
    throw EmptySectorError(fmt::format("no {} states with N={} in k=[{},{}]{}", to_string(statistics),
                                       n_particles, window.k_min, window.k_max,
                                       sector ? fmt::format(" and K={}", *sector) : std::string()));
  }
  return FockBasis(window, n_particles, statistics, sector, std::move(states));
}

BasisPtr make_basis(ModeWindow window, int n_particles, Statistics statistics,
                    std::optional<int> sector, std::size_t dimension_cap) {
  return std::make_shared<const FockBasis>(
      FockBasis::build(window, n_particles, statistics, sector, dimension_cap));
}

std::optional<std::size_t> FockBasis::index_of(const Occupation& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FockBasis::same_space(const FockBasis& other) const noexcept {
  return window_ == other.window_ && n_particles_ == other.n_particles_ &&
         statistics_ == other.statistics_;
}

nlohmann::json FockBasis::descriptor() const {
  nlohmann::json j;
  j["format_version"] = kBasisFormatVersion;
  j["k_min"] = window_.k_min;
  j["k_max"] = window_.k_max;
  j["N"] = n_particles_;
  j["statistics"] = std::string(to_string(statistics_));
  j["sector"] = sector_ ? nlohmann::json(*sector_) : nlohmann::json(nullptr);
  j["dimension"] = states_.size();
  return j;
}

std::map<int, FockBasis> sector_split(const FockBasis& basis) {
  if (basis.sector()) throw std::invalid_argument("sector_split needs an unrestricted basis");
  std::map<int, std::vector<Occupation>> grouped;
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    grouped[basis.angular_momentum(i)].push_back(basis.state(i));
  }
  std::map<int, FockBasis> out;
  for (auto& [k_total, states] : grouped) {
    // sub-sequences of an ordered enumeration keep the ordering
    out.emplace(k_total, FockBasis(basis.window(), basis.particle_count(), basis.statistics(),
                                   k_total, std::move(states)));
  }
  return out;
}

}  // namespace ringqfi
