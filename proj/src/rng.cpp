// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/rng.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sketchcomm {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline std::uint64_t raw64(std::uint64_t key, std::uint64_t index) noexcept {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32), 0u, 0u};
  const PhiloxKey k{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, k);
  return static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
}

// (0, 1], safe for log.
inline double open_uniform_at(std::uint64_t key, std::uint64_t index) noexcept {
  return static_cast<double>((raw64(key, index) >> 11) + 1) * kTwoPow53Inv;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

double uniform_at(std::uint64_t key, std::uint64_t index) noexcept {
  return static_cast<double>(raw64(key, index) >> 11) * kTwoPow53Inv;
}

double sketch_entry(const SketchSeed& seed, std::uint64_t index) noexcept {
  if (seed.distribution == Distribution::uniform) return uniform_at(seed.key, index);
  const std::uint64_t pair = index >> 1;
  const double u1 = open_uniform_at(seed.key, 2 * pair);
  const double u2 = uniform_at(seed.key, 2 * pair + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1u) ? radius * std::sin(angle) : radius * std::cos(angle);
}

DenseMatrix gen_block(const SketchSeed& seed, std::size_t total_rows, std::size_t total_cols,
                      std::size_t row_start, std::size_t row_count, std::size_t col_start,
                      std::size_t col_count) {
  if (row_start + row_count > total_rows || col_start + col_count > total_cols ||
      row_start + row_count < row_start || col_start + col_count < col_start) {
    throw std::invalid_argument(
        "gen_block: block rows [" + std::to_string(row_start) + ", " +
        std::to_string(row_start + row_count) + ") x cols [" + std::to_string(col_start) + ", " +
        std::to_string(col_start + col_count) + ") exceeds the " + std::to_string(total_rows) +
        "x" + std::to_string(total_cols) + " extent");
  }
  DenseMatrix out(row_count, col_count);
  for (std::size_t j = 0; j < col_count; ++j) {
    const std::uint64_t base = static_cast<std::uint64_t>(col_start + j) * total_rows + row_start;
    for (std::size_t i = 0; i < row_count; ++i) out(i, j) = sketch_entry(seed, base + i);
  }
  return out;
}

std::uint64_t parse_seed(std::string_view text) {
  std::string_view digits = text;
  int base = 10;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("invalid seed '" + std::string(text) +
                                "': expected a 64-bit unsigned decimal or 0x-hex value");
  }
  return value;
}

Distribution parse_distribution(std::string_view text) {
  if (text == "uniform") return Distribution::uniform;
  if (text == "gaussian") return Distribution::gaussian;
  throw std::invalid_argument("unknown distribution '" + std::string(text) +
                              "' (expected uniform or gaussian)");
}

std::string_view to_string(Distribution d) noexcept {
  return d == Distribution::uniform ? "uniform" : "gaussian";
}

}  // namespace sketchcomm
