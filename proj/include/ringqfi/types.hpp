// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace ringqfi {

using Complex = std::complex<double>;

}  // namespace ringqfi
