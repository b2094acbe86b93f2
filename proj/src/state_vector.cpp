// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringqfi/state_vector.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace ringqfi {

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("state basis must be non-null");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dimension()) {
    throw std::invalid_argument("amplitude count does not match basis dimension");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument(fmt::format("state norm {:.17g} is not 1", norm));
  }
}

StateVector StateVector::normalized(BasisPtr basis, Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
  amplitudes /= norm;
  return StateVector(std::move(basis), std::move(amplitudes));
}

std::size_t StateVector::support_size(double threshold) const {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    if (std::abs(amplitudes_(i)) > threshold) ++count;
  }
  return count;
}

void write_state(std::ostream& os, const StateVector& state) {
  os << "# basis " << state.basis().descriptor().dump() << '\n';
  os << "ordinal,re,im\n";
  const auto& amps = state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (amps(i) == Complex(0.0, 0.0)) continue;
    os << fmt::format("{},{:.17g},{:.17g}\n", i, amps(i).real(), amps(i).imag());
  }
}

StateVector read_state(std::istream& is, std::size_t dimension_cap) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# basis ", 0) != 0) {
    throw std::runtime_error("state file is missing its basis descriptor");
  }
  const auto desc = nlohmann::json::parse(line.substr(8));
  if (desc.at("format_version").get<int>() != kBasisFormatVersion) {
    throw std::runtime_error("unsupported basis format version");
  }
  std::optional<int> sector;
  if (!desc.at("sector").is_null()) sector = desc.at("sector").get<int>();
  auto basis = make_basis(ModeWindow(desc.at("k_min").get<int>(), desc.at("k_max").get<int>()),
                          desc.at("N").get<int>(),
                          parse_statistics(desc.at("statistics").get<std::string>()), sector, dimension_cap);
  if (basis->dimension() != desc.at("dimension").get<std::size_t>()) {
    throw std::runtime_error("basis descriptor dimension does not match enumeration");
  }
  if (!std::getline(is, line) || line != "ordinal,re,im") {
    throw std::runtime_error("state file is missing its column header");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    const auto ordinal = std::stoull(field);
    std::getline(row, field, ',');
    const double re = std::stod(field);
    std::getline(row, field, ',');
    const double im = std::stod(field);
    if (ordinal >= basis->dimension()) throw std::runtime_error("state ordinal out of range");
    amps(static_cast<Eigen::Index>(ordinal)) = {re, im};
  }
  return StateVector(std::move(basis), std::move(amps));
}

}  // namespace ringqfi
