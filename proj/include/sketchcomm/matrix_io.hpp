// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sketchcomm/matrix.hpp"

namespace sketchcomm {

// Binary layout: two little-endian uint64 (rows, cols) followed by rows*cols
// little-endian IEEE-754 doubles in column-major order.
// CSV layout: one matrix row per line, comma separated, no header.
enum class MatrixFormat { binary, csv };

class MatrixIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ".csv" (case-insensitive) selects CSV; everything else is binary.
MatrixFormat format_from_path(const std::filesystem::path& path);

DenseMatrix read_matrix_binary(std::istream& in, const std::string& name = "<stream>");
void write_matrix_binary(std::ostream& out, const DenseMatrix& m);

/// Parse errors name the offending line.
DenseMatrix read_matrix_csv(std::istream& in, const std::string& name = "<stream>");
void write_matrix_csv(std::ostream& out, const DenseMatrix& m);

DenseMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
DenseMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m, MatrixFormat format);
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);

}  // namespace sketchcomm
