// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "sketchcomm/cli.hpp"

int main(int argc, char** argv) { return sketchcomm::cli::run(argc, argv, std::cout, std::cerr); }
