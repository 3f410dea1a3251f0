// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/dist_matrix.hpp"

#include <stdexcept>
#include <string>

namespace sketchcomm {

namespace {

const char* role_name(BlockRole role) {
  switch (role) {
    case BlockRole::a_style: return "A-style";
    case BlockRole::b_style: return "B-style";
    case BlockRole::c_style: return "C-style";
  }
  return "?";
}

}  // namespace

DistLayout::DistLayout(std::size_t rows, std::size_t cols, GridSpec grid, BlockRole role)
    : rows_(rows), cols_(cols), grid_(grid), role_(role) {
  switch (role) {
    case BlockRole::a_style: row_axis_ = 0; col_axis_ = 1; split_axis_ = 2; break;
    case BlockRole::b_style: row_axis_ = 0; col_axis_ = 2; split_axis_ = 1; break;
    case BlockRole::c_style: row_axis_ = 1; col_axis_ = 2; split_axis_ = 0; break;
  }
  const auto pr = static_cast<std::size_t>(grid_.dim(row_axis_));
  const auto pc = static_cast<std::size_t>(grid_.dim(col_axis_));
  const auto ps = static_cast<std::size_t>(grid_.dim(split_axis_));
  const std::string what = std::string(role_name(role)) + " layout of a " +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           " matrix on grid " + grid_.to_string();
  if (rows % pr != 0 || cols % pc != 0) {
    throw std::invalid_argument(what + ": grid dims " + std::to_string(pr) + " and " +
                                std::to_string(pc) + " must divide the matrix dims");
  }
  tile_rows_ = rows / pr;
  tile_cols_ = cols / pc;
  const std::size_t tile = tile_rows_ * tile_cols_;
  if (tile % ps != 0) {
    throw std::invalid_argument(what + ": tile of " + std::to_string(tile) +
                                " words does not split across " + std::to_string(ps) + " ranks");
  }
  segment_ = tile / ps;
}

DistLayout::TilePosition DistLayout::position_of(int rank) const {
  const GridCoord c = grid_.coord_of(rank);
  const int axes[3] = {c.i, c.j, c.k};
  return TilePosition{axes[row_axis_], axes[col_axis_], axes[split_axis_]};
}

std::pair<std::size_t, std::size_t> DistLayout::global_index(int rank, std::size_t offset) const {
  if (offset >= segment_) throw std::out_of_range("DistLayout: local offset out of range");
  const TilePosition pos = position_of(rank);
  const std::size_t t = static_cast<std::size_t>(pos.split) * segment_ + offset;
  return {static_cast<std::size_t>(pos.row_block) * tile_rows_ + t % tile_rows_,
          static_cast<std::size_t>(pos.col_block) * tile_cols_ + t / tile_rows_};
}

LocalSlot DistLayout::owner(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("DistLayout: element out of range");
  const std::size_t t = (col % tile_cols_) * tile_rows_ + row % tile_rows_;
  int axes[3] = {0, 0, 0};
  axes[row_axis_] = static_cast<int>(row / tile_rows_);
  axes[col_axis_] = static_cast<int>(col / tile_cols_);
  axes[split_axis_] = static_cast<int>(t / segment_);
  return LocalSlot{grid_.rank_of({axes[0], axes[1], axes[2]}), t % segment_};
}

DistMatrix scatter_matrix(const DenseMatrix& global, const DistLayout& layout, int rank) {
  if (global.rows() != layout.rows() || global.cols() != layout.cols()) {
    throw std::invalid_argument("scatter_matrix: matrix is " + std::to_string(global.rows()) +
                                "x" + std::to_string(global.cols()) + ", layout expects " +
                                std::to_string(layout.rows()) + "x" +
                                std::to_string(layout.cols()));
  }
  DistMatrix out{layout, rank, std::vector<double>(layout.local_size())};
  for (std::size_t o = 0; o < out.local.size(); ++o) {
    const auto [i, j] = layout.global_index(rank, o);
    out.local[o] = global(i, j);
  }
  return out;
}

DenseMatrix gather_matrix(Communicator& comm, const DistMatrix& dist) {
  const DistLayout& layout = dist.layout;
  if (layout.grid().size() != comm.world_size()) {
    throw std::invalid_argument("gather_matrix: layout grid " + layout.grid().to_string() +
                                " does not span the world of " +
                                std::to_string(comm.world_size()));
  }
  if (dist.local.size() != layout.local_size()) {
    throw std::invalid_argument("gather_matrix: local block has the wrong size");
  }
  MeterPause pause(comm);
  const std::vector<double> all =
      comm.all_gather(dist.local, Group::world(comm.world_size()), "gather");
  DenseMatrix out(layout.rows(), layout.cols());
  const std::size_t seg = layout.local_size();
  for (int r = 0; r < comm.world_size(); ++r) {
    for (std::size_t o = 0; o < seg; ++o) {
      const auto [i, j] = layout.global_index(r, o);
      out(i, j) = all[static_cast<std::size_t>(r) * seg + o];
    }
  }
  return out;
}

}  // namespace sketchcomm
