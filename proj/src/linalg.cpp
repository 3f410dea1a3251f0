// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sketchcomm {

namespace {

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const DenseMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square, got " + shape(m));
  }
}

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-14;

}  // namespace

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b, Transpose transpose_a) {
  if (transpose_a == Transpose::no) {
    if (a.cols() != b.rows()) {
      throw std::invalid_argument("gemm: inner dimensions differ (" + shape(a) + " * " +
                                  shape(b) + ")");
    }
    const std::size_t m = a.rows();
    const std::size_t inner = a.cols();
    const std::size_t n = b.cols();
    DenseMatrix c(m, n);
    for (std::size_t j = 0; j < n; ++j) {
      double* cj = c.data().data() + j * m;
      for (std::size_t l = 0; l < inner; ++l) {
        const double blj = b(l, j);
        const double* al = a.data().data() + l * m;
        for (std::size_t i = 0; i < m; ++i) cj[i] += al[i] * blj;
      }
    }
    return c;
  }

  if (a.rows() != b.rows()) {
    throw std::invalid_argument("gemm: inner dimensions differ (" + shape(a) + "ᵀ * " +
                                shape(b) + ")");
  }
  const std::size_t inner = a.rows();
  const std::size_t m = a.cols();
  const std::size_t n = b.cols();
  DenseMatrix c(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* bj = b.data().data() + j * inner;
    for (std::size_t i = 0; i < m; ++i) {
      const double* ai = a.data().data() + i * inner;
      double sum = 0.0;
      for (std::size_t l = 0; l < inner; ++l) sum += ai[l] * bj[l];
      c(i, j) = sum;
    }
  }
  return c;
}

DenseMatrix kernel_linear(const DenseMatrix& points) {
  if (points.empty()) throw std::invalid_argument("kernel_linear: empty point set");
  const std::size_t m = points.rows();
  const std::size_t d = points.cols();
  DenseMatrix k(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      double sum = 0.0;
      for (std::size_t l = 0; l < d; ++l) sum += points(i, l) * points(j, l);
      k(i, j) = sum;
      k(j, i) = sum;
    }
  }
  return k;
}

DenseMatrix kernel_rbf(const DenseMatrix& points, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("kernel_rbf: sigma must be positive and finite");
  }
  if (points.empty()) throw std::invalid_argument("kernel_rbf: empty point set");
  const std::size_t m = points.rows();
  const std::size_t d = points.cols();
  const double scale = 1.0 / (2.0 * sigma * sigma);
  DenseMatrix k(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    k(j, j) = 1.0;
    for (std::size_t i = 0; i < j; ++i) {
      double dist2 = 0.0;
      for (std::size_t l = 0; l < d; ++l) {
        const double diff = points(i, l) - points(j, l);
        dist2 += diff * diff;
      }
      const double v = std::exp(-dist2 * scale);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

double rbf_sigma_frobenius(const DenseMatrix& points) {
  if (points.rows() == 0) throw std::invalid_argument("rbf_sigma_frobenius: empty point set");
  return frobenius_norm(points) / std::sqrt(static_cast<double>(points.rows()));
}

SymmetricEigen symmetric_eigen(const DenseMatrix& m) {
  require_square(m, "symmetric_eigen");
  const std::size_t n = m.rows();
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  DenseMatrix v = DenseMatrix::identity(n);

  const double threshold = kJacobiTolerance * frobenius_norm(a);
  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= threshold) break;
    if (sweep == kMaxJacobiSweeps) {
      throw std::runtime_error("symmetric_eigen: Jacobi did not converge in " +
                               std::to_string(kMaxJacobiSweeps) + " sweeps");
    }

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        double* colp = a.data().data() + p * n;
        double* colq = a.data().data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = colp[k];
          const double akq = colq[k];
          colp[k] = c * akp - s * akq;
          colq[k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        double* vp = v.data().data() + p * n;
        double* vq = v.data().data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  out.sweeps = sweep;
  for (std::size_t t = 0; t < n; ++t) {
    out.values[t] = a(order[t], order[t]);
    auto src = v.column(order[t]);
    std::copy(src.begin(), src.end(), out.vectors.data().begin() + t * n);
  }
  return out;
}

DenseMatrix pseudoinverse_spsd(const DenseMatrix& m, double tol) {
  require_square(m, "pseudoinverse_spsd");
  if (!(tol >= 0.0)) throw std::invalid_argument("pseudoinverse_spsd: tol must be >= 0");
  const std::size_t n = m.rows();
  const SymmetricEigen eig = symmetric_eigen(m);

  double largest = 0.0;
  for (double lambda : eig.values) largest = std::max(largest, std::abs(lambda));
  const double cutoff = tol * largest;

  // Scaled copies of the retained eigenvectors: w_t = q_t / λ_t.
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < n; ++t)
    if (std::abs(eig.values[t]) > cutoff && eig.values[t] != 0.0) kept.push_back(t);

  DenseMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      double sum = 0.0;
      for (std::size_t t : kept) sum += eig.vectors(i, t) * eig.vectors(j, t) / eig.values[t];
      out(i, j) = sum;
      out(j, i) = sum;
    }
  }
  return out;
}

DenseMatrix nystrom_reconstruct(const DenseMatrix& b, const DenseMatrix& c, double tol) {
  if (c.rows() != b.cols() || c.cols() != b.cols()) {
    throw std::invalid_argument("nystrom_reconstruct: core is " + shape(c) + ", sketch is " +
                                shape(b));
  }
  const DenseMatrix core_inv = pseudoinverse_spsd(c, tol);
  const DenseMatrix bc = gemm(b, core_inv);
  // (B C†) Bᵀ as a transposed product so both operands are read by column.
  return gemm(bc.transposed(), b.transposed(), Transpose::yes);
}

double nystrom_error(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                     double tol) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || c.rows() != b.cols() ||
      c.cols() != b.cols()) {
    throw std::invalid_argument("nystrom_error: incompatible shapes A " + shape(a) + ", B " +
                                shape(b) + ", C " + shape(c));
  }
  const DenseMatrix approx = nystrom_reconstruct(b, c, tol);
  return relative_frobenius_error(approx, a);
}

}  // namespace sketchcomm
