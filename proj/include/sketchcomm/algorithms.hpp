// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sketchcomm/dist_matrix.hpp"
#include "sketchcomm/fabric.hpp"
#include "sketchcomm/grid_spec.hpp"
#include "sketchcomm/rng.hpp"

namespace sketchcomm {

// Cost-report call sites used by the algorithms.
namespace sites {
inline constexpr const char* allgather_a = "allgather-A";
inline constexpr const char* reduce_scatter_b = "reduce-scatter-B";
inline constexpr const char* redistribute_b = "redistribute-B";
inline constexpr const char* allgather_b = "allgather-B";
inline constexpr const char* reduce_scatter_c = "reduce-scatter-C";
}  // namespace sites

/// Per-rank wall-clock seconds by phase name.
using PhaseTimes = std::map<std::string, double>;

namespace phases {
inline constexpr const char* generate_omega = "generate-omega";
inline constexpr const char* allgather_a = "allgather-A";
inline constexpr const char* first_multiply = "first-multiply";
inline constexpr const char* reduce_scatter_b = "reduce-scatter-B";
inline constexpr const char* all_to_all = "all-to-all";
inline constexpr const char* unpack = "unpack";
inline constexpr const char* allgather_b = "allgather-B";
inline constexpr const char* second_multiply = "second-multiply";
inline constexpr const char* reduce_scatter_c = "reduce-scatter-C";
}  // namespace phases

/// Layout checks without constructing anything; true when the grid divides
/// every dimension and every tile splits evenly across its fiber.
bool rand_matmul_runnable(std::size_t n1, std::size_t n2, std::size_t r, const GridSpec& grid);
bool nystrom_runnable(std::size_t n, std::size_t r, const GridSpec& first, const GridSpec& second);

/// B = A Ω(seed) with A distributed a_style on its grid; B comes back
/// b_style on the same grid. One all-gather of A along k, one local
/// multiply, one reduce-scatter along j.
DistMatrix rand_matmul(Communicator& comm, const DistMatrix& a, const SketchSeed& seed,
                       std::size_t r, PhaseTimes* times = nullptr);

struct NystromOptions {
  /// Reuse the first multiply's Ω block for the second multiply when both
  /// blocks cover the same index range.
  bool reuse_omega = false;
  PhaseTimes* times = nullptr;
};

struct NystromOutput {
  DistMatrix b;  // b_style on the second grid
  DistMatrix c;  // c_style on the second grid
  bool omega_reused = false;
};

/// B = A Ω on the first grid (A a_style), redistribution of B when the grids
/// differ, then C = Ωᵀ B on the second grid.
NystromOutput nystrom(Communicator& comm, const DistMatrix& a, const SketchSeed& seed,
                      std::size_t r, const GridSpec& second, const NystromOptions& options = {});

/// Moves a b_style matrix onto another grid's b_style layout: pack by
/// destination, all-to-all over the world, unpack into column-major tiles.
/// Returns the input unchanged without communicating when the grids agree.
DistMatrix redistribute(Communicator& comm, const DistMatrix& b, const GridSpec& target,
                        PhaseTimes* times = nullptr);

}  // namespace sketchcomm
