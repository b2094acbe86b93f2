// Copyright 2026 The ringqfi Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "ringqfi/commands.hpp"

int main(int argc, char** argv) { return ringqfi::run_cli(argc, argv, std::cout, std::cerr); }
