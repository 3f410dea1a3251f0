// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "sketchcomm/group.hpp"

namespace sketchcomm {

struct GridCoord {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

/// p1 x p2 x p3 processor grid. Rank ↔ (i, j, k) is row-major:
/// rank = (i * p2 + j) * p3 + k.
class GridSpec {
 public:
  GridSpec(int p1, int p2, int p3);

  int p1() const noexcept { return dims_[0]; }
  int p2() const noexcept { return dims_[1]; }
  int p3() const noexcept { return dims_[2]; }
  int dim(int axis) const { return dims_.at(axis); }
  const std::array<int, 3>& dims() const noexcept { return dims_; }
  int size() const noexcept { return dims_[0] * dims_[1] * dims_[2]; }

  GridCoord coord_of(int rank) const;
  int rank_of(GridCoord c) const;

  /// Ranks (i, j, 0..p3−1), ordered by k.
  Group fiber_k(int i, int j) const;
  /// Ranks (i, 0..p2−1, k), ordered by j.
  Group fiber_j(int i, int k) const;
  /// Ranks (0..p1−1, j, k), ordered by i.
  Group fiber_i(int j, int k) const;

  std::string to_string() const;  // e.g. "4x2x1"

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::array<int, 3> dims_;
};

/// Every ordered (p1, p2, p3) with p1·p2·p3 = P, lexicographically.
std::vector<GridSpec> factor_triples(int world_size);

/// Parses "4x2x1" or "4,2,1".
GridSpec parse_grid(const std::string& text);

}  // namespace sketchcomm
