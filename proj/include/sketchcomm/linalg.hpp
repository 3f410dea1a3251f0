// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "sketchcomm/matrix.hpp"

namespace sketchcomm {

enum class Transpose { no, yes };

/// Classical product op(A) * B where op(A) is A or Aᵀ.
///
/// Every output entry is accumulated over the inner index in ascending order
/// starting from zero, so row or column blocks of a product are bit-identical
/// to the corresponding block of the full product.
DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b,
                 Transpose transpose_a = Transpose::no);

/// Gram matrix of the rows of `points` under the inner product.
DenseMatrix kernel_linear(const DenseMatrix& points);

/// exp(−‖xᵢ − xⱼ‖² / (2σ²)) over the rows of `points`.
DenseMatrix kernel_rbf(const DenseMatrix& points, double sigma);

/// ‖X‖_F / √m for an m-point set, the scale-aware bandwidth.
double rbf_sigma_frobenius(const DenseMatrix& points);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column t pairs with values[t]
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of (M + Mᵀ)/2. Iterates until the
/// off-diagonal Frobenius norm drops below 1e-14 ‖M‖_F.
SymmetricEigen symmetric_eigen(const DenseMatrix& m);

/// Pseudoinverse of a symmetric (semi-)definite matrix. Eigenvalues with
/// |λ| ≤ tol · max|λ| are treated as zero.
DenseMatrix pseudoinverse_spsd(const DenseMatrix& m, double tol);

/// B · C† · Bᵀ.
DenseMatrix nystrom_reconstruct(const DenseMatrix& b, const DenseMatrix& c, double tol);

/// ‖A − B C† Bᵀ‖_F / ‖A‖_F.
double nystrom_error(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                     double tol);

}  // namespace sketchcomm
