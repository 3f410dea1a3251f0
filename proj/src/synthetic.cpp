// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/synthetic.hpp"

#include "sketchcomm/linalg.hpp"
#include "sketchcomm/rng.hpp"

namespace sketchcomm {

DenseMatrix synthetic_uniform(std::size_t rows, std::size_t cols, std::uint64_t key) {
  return gen_block(SketchSeed{key, Distribution::uniform}, rows, cols, 0, rows, 0, cols);
}

DenseMatrix synthetic_symmetric(std::size_t n, std::uint64_t key) {
  const DenseMatrix u = synthetic_uniform(n, n, key);
  DenseMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = 0.5 * (u(i, j) + u(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

DenseMatrix gaussian_points(std::size_t m, std::size_t d, std::uint64_t key) {
  return gen_block(SketchSeed{key, Distribution::gaussian}, m, d, 0, m, 0, d);
}

DenseMatrix synthetic_lowrank_spsd(std::size_t n, std::size_t rank, std::uint64_t key) {
  return kernel_linear(gaussian_points(n, rank, key));
}

}  // namespace sketchcomm
