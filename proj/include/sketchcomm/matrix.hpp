// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sketchcomm {

/// Column-major dense matrix of doubles. Element (i, j) lives at offset
/// j * rows + i.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of a column-major buffer; throws if the length is not
  /// rows * cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Row-wise literal, convenient in tests: {{1, 2}, {3, 4}}.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> column(std::size_t j) const noexcept {
    return std::span<const double>(data_).subspan(j * rows_, rows_);
  }

  /// Releases the underlying buffer, leaving an empty 0x0 matrix.
  std::vector<double> release() && noexcept;

  DenseMatrix transposed() const;

  /// Bitwise-style equality on shape and values.
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double frobenius_norm(const DenseMatrix& m);

/// ‖a − b‖_F / ‖b‖_F; returns ‖a‖_F when b is the zero matrix.
double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b);

/// True when both matrices have identical shape and identical bit patterns.
bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace sketchcomm
