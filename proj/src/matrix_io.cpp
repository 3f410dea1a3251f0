// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/matrix_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace sketchcomm {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return out;
  } else {
    return v;
  }
}

void write_u64(std::ostream& out, std::uint64_t v) {
  v = to_little_endian(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

bool read_u64(std::istream& in, std::uint64_t& v) {
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) return false;
  v = to_little_endian(v);
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

MatrixFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? MatrixFormat::csv : MatrixFormat::binary;
}

DenseMatrix read_matrix_binary(std::istream& in, const std::string& name) {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  if (!read_u64(in, rows) || !read_u64(in, cols)) {
    throw MatrixIoError(name + ": truncated header (expected two uint64 counts)");
  }
  if (cols != 0 && rows > std::numeric_limits<std::uint64_t>::max() / cols / sizeof(double)) {
    throw MatrixIoError(name + ": header dimensions overflow");
  }
  std::vector<double> data(rows * cols);
  for (std::size_t t = 0; t < data.size(); ++t) {
    std::uint64_t bits = 0;
    if (!read_u64(in, bits)) {
      throw MatrixIoError(name + ": truncated payload, read " + std::to_string(t) + " of " +
                          std::to_string(data.size()) + " values");
    }
    data[t] = std::bit_cast<double>(bits);
  }
  return DenseMatrix(rows, cols, std::move(data));
}

void write_matrix_binary(std::ostream& out, const DenseMatrix& m) {
  write_u64(out, m.rows());
  write_u64(out, m.cols());
  for (double v : m.data()) write_u64(out, std::bit_cast<std::uint64_t>(v));
}

DenseMatrix read_matrix_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    std::vector<double> row;
    std::size_t field_no = 0;
    while (true) {
      ++field_no;
      const auto comma = view.find(',');
      std::string_view field = trim(view.substr(0, comma));
      double value = 0.0;
      const auto* first = field.data();
      const auto* last = field.data() + field.size();
      if (!field.empty() && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (field.empty() || ec != std::errc() || ptr != last) {
        throw MatrixIoError(name + ":" + std::to_string(line_no) + ": field " +
                            std::to_string(field_no) + " is not a number: '" +
                            std::string(field) + "'");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      view.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw MatrixIoError(name + ":" + std::to_string(line_no) + ": expected " +
                          std::to_string(rows.front().size()) + " fields, found " +
                          std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  DenseMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][j];
  return out;
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& m) {
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, m(i, j));
      if (j) out.put(',');
      out.write(buf, ptr - buf);
    }
    out.put('\n');
  }
}

DenseMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  std::ifstream in(path, format == MatrixFormat::binary ? std::ios::binary : std::ios::in);
  if (!in) throw MatrixIoError(path.string() + ": cannot open for reading");
  return format == MatrixFormat::binary ? read_matrix_binary(in, path.string())
                                        : read_matrix_csv(in, path.string());
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  return read_matrix(path, format_from_path(path));
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m, MatrixFormat format) {
  std::ofstream out(path, format == MatrixFormat::binary ? std::ios::binary : std::ios::out);
  if (!out) throw MatrixIoError(path.string() + ": cannot open for writing");
  if (format == MatrixFormat::binary) {
    write_matrix_binary(out, m);
  } else {
    write_matrix_csv(out, m);
  }
  if (!out) throw MatrixIoError(path.string() + ": write failed");
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  write_matrix(path, m, format_from_path(path));
}

}  // namespace sketchcomm
