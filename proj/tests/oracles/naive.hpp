// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Reference implementations written independently of the library code they
// check: plain triple loops and per-entry generator calls.

#include <cstddef>

#include "sketchcomm/matrix.hpp"
#include "sketchcomm/rng.hpp"

namespace oracle {

using sketchcomm::DenseMatrix;

/// C(i, j) = Σ_l A(i, l)·B(l, j), l ascending from 0.0.
inline DenseMatrix naive_gemm(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  }
  return c;
}

/// C(i, j) = Σ_l A(l, i)·B(l, j).
inline DenseMatrix naive_gemm_tn(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < a.rows(); ++l) s += a(l, i) * b(l, j);
      c(i, j) = s;
    }
  }
  return c;
}

/// Ω built entry by entry from the counter index j·rows + i.
inline DenseMatrix full_omega(const sketchcomm::SketchSeed& seed, std::size_t rows,
                              std::size_t cols) {
  DenseMatrix omega(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) omega(i, j) = sketchcomm::sketch_entry(seed, j * rows + i);
  return omega;
}

struct SerialNystrom {
  DenseMatrix omega;
  DenseMatrix b;
  DenseMatrix c;
};

/// Dense serial pipeline: B = A Ω, C = Ωᵀ B.
inline SerialNystrom serial_nystrom(const DenseMatrix& a, const sketchcomm::SketchSeed& seed,
                                    std::size_t r) {
  SerialNystrom out{full_omega(seed, a.cols(), r), {}, {}};
  out.b = naive_gemm(a, out.omega);
  out.c = naive_gemm_tn(out.omega, out.b);
  return out;
}

}  // namespace oracle
