// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sketchcomm/fabric.hpp"
#include "sketchcomm/grid_spec.hpp"
#include "sketchcomm/matrix.hpp"

namespace sketchcomm {

/// Which grid axes tile a matrix and which axis splits each tile.
///   a_style: tile (i, j) of size rows/p1 x cols/p2, split across k
///   b_style: tile (i, k) of size rows/p1 x cols/p3, split across j
///   c_style: tile (j, k) of size rows/p2 x cols/p3, split across i
/// A tile's column-major vector is cut into equal contiguous segments; the
/// member with split coordinate s owns segment s. That is exactly the
/// segment order of reduce-scatter and the concatenation order of
/// all-gather along the split fiber.
enum class BlockRole { a_style, b_style, c_style };

struct LocalSlot {
  int rank = 0;
  std::size_t offset = 0;
};

class DistLayout {
 public:
  /// Throws std::invalid_argument when the grid does not split the matrix
  /// evenly.
  DistLayout(std::size_t rows, std::size_t cols, GridSpec grid, BlockRole role);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const GridSpec& grid() const noexcept { return grid_; }
  BlockRole role() const noexcept { return role_; }

  std::size_t tile_rows() const noexcept { return tile_rows_; }
  std::size_t tile_cols() const noexcept { return tile_cols_; }
  /// Words each rank owns.
  std::size_t local_size() const noexcept { return segment_; }

  /// Global (row, col) of local element `offset` on `rank`.
  std::pair<std::size_t, std::size_t> global_index(int rank, std::size_t offset) const;
  LocalSlot owner(std::size_t row, std::size_t col) const;

  /// Tile coordinates (row block, col block) and split coordinate of a rank.
  struct TilePosition {
    int row_block = 0;
    int col_block = 0;
    int split = 0;
  };
  TilePosition position_of(int rank) const;

  friend bool operator==(const DistLayout&, const DistLayout&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  GridSpec grid_;
  BlockRole role_;
  int row_axis_ = 0;
  int col_axis_ = 1;
  int split_axis_ = 2;
  std::size_t tile_rows_ = 0;
  std::size_t tile_cols_ = 0;
  std::size_t segment_ = 0;
};

/// One rank's share of a distributed matrix.
struct DistMatrix {
  DistLayout layout;
  int rank = 0;
  std::vector<double> local;
};

/// Local extraction; no communication.
DistMatrix scatter_matrix(const DenseMatrix& global, const DistLayout& layout, int rank);

/// Reassembles the global matrix on every rank. Verification only: the
/// traffic is excluded from the cost report.
DenseMatrix gather_matrix(Communicator& comm, const DistMatrix& dist);

}  // namespace sketchcomm
