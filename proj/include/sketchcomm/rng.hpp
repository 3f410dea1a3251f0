// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "sketchcomm/matrix.hpp"

namespace sketchcomm {

// Counter-based generation of the sketching matrix Ω. Entry (i, j) of an
// n x r matrix is a pure function of (key, distribution, j * n + i), so any
// rank can materialize any sub-block without talking to anyone.

enum class Distribution { uniform, gaussian };

struct SketchSeed {
  std::uint64_t key = 0;
  Distribution distribution = Distribution::gaussian;
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox-4x32 with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Uniform double in [0, 1) drawn from counter `index` under `key`.
double uniform_at(std::uint64_t key, std::uint64_t index) noexcept;

/// Value of the entry with global column-major index `index`. Gaussian
/// entries pair up as (2t, 2t + 1) through Box–Muller; the even entry takes
/// the cosine branch and the odd one the sine branch.
double sketch_entry(const SketchSeed& seed, std::uint64_t index) noexcept;

/// Block [row_start, row_start + row_count) x [col_start, col_start + col_count)
/// of the total_rows x total_cols matrix Ω(seed).
DenseMatrix gen_block(const SketchSeed& seed, std::size_t total_rows, std::size_t total_cols,
                      std::size_t row_start, std::size_t row_count, std::size_t col_start,
                      std::size_t col_count);

/// Accepts decimal or 0x-prefixed hexadecimal.
std::uint64_t parse_seed(std::string_view text);

Distribution parse_distribution(std::string_view text);
std::string_view to_string(Distribution d) noexcept;

}  // namespace sketchcomm
