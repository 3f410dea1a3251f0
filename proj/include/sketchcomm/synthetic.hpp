// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "sketchcomm/matrix.hpp"

namespace sketchcomm {

// Deterministic test inputs drawn from the counter-based generator.

/// Entries uniform in [0, 1).
DenseMatrix synthetic_uniform(std::size_t rows, std::size_t cols, std::uint64_t key);
/// (U + Uᵀ)/2 for a uniform n x n U; symmetric to the last bit.
DenseMatrix synthetic_symmetric(std::size_t n, std::uint64_t key);
/// m points in d dimensions with standard normal coordinates (rows are points).
DenseMatrix gaussian_points(std::size_t m, std::size_t d, std::uint64_t key);
/// G Gᵀ for a Gaussian n x rank G: symmetric positive semidefinite of the given rank.
DenseMatrix synthetic_lowrank_spsd(std::size_t n, std::size_t rank, std::uint64_t key);

}  // namespace sketchcomm
