// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "sketchcomm/linalg.hpp"

namespace sketchcomm {

namespace {

class PhaseClock {
 public:
  PhaseClock(PhaseTimes* times, const char* phase)
      : times_(times), phase_(phase), start_(std::chrono::steady_clock::now()) {}
  ~PhaseClock() {
    if (!times_) return;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    (*times_)[phase_] += dt.count();
  }
  PhaseClock(const PhaseClock&) = delete;
  PhaseClock& operator=(const PhaseClock&) = delete;

 private:
  PhaseTimes* times_;
  const char* phase_;
  std::chrono::steady_clock::time_point start_;
};

bool splits(std::size_t dim, int q) { return dim % static_cast<std::size_t>(q) == 0; }

void require_world(const Communicator& comm, const GridSpec& grid, const char* who) {
  if (grid.size() != comm.world_size()) {
    throw std::invalid_argument(std::string(who) + ": grid " + grid.to_string() + " has " +
                                std::to_string(grid.size()) + " ranks, world has " +
                                std::to_string(comm.world_size()));
  }
}

struct OmegaBlock {
  std::size_t row_start;
  std::size_t col_start;
  DenseMatrix block;
};

// Shared first half of both algorithms: B̂ = A Ω reduced onto the b_style
// layout of A's grid. The Ω block is returned for optional reuse.
DistMatrix sketch_product(Communicator& comm, const DistMatrix& a, const SketchSeed& seed,
                          std::size_t r, PhaseTimes* times, OmegaBlock* omega_out) {
  const DistLayout& la = a.layout;
  const GridSpec& grid = la.grid();
  if (la.role() != BlockRole::a_style) {
    throw std::invalid_argument("sketch: input must be distributed A-style");
  }
  if (a.rank != comm.rank() || a.local.size() != la.local_size()) {
    throw std::invalid_argument("sketch: local block does not belong to this rank's layout");
  }
  require_world(comm, grid, "sketch");
  const std::size_t n1 = la.rows();
  const std::size_t n2 = la.cols();
  if (!rand_matmul_runnable(n1, n2, r, grid)) {
    throw std::invalid_argument("sketch: grid " + grid.to_string() + " cannot split A (" +
                                std::to_string(n1) + "x" + std::to_string(n2) + ") and B (" +
                                std::to_string(n1) + "x" + std::to_string(r) + ") evenly");
  }
  const GridCoord c = grid.coord_of(comm.rank());
  const std::size_t rows_i = n1 / grid.p1();
  const std::size_t inner_j = n2 / grid.p2();
  const std::size_t cols_k = r / grid.p3();

  std::vector<double> a_tile;
  {
    PhaseClock clock(times, phases::allgather_a);
    a_tile = comm.all_gather(a.local, grid.fiber_k(c.i, c.j), sites::allgather_a);
  }
  OmegaBlock omega{c.j * inner_j, c.k * cols_k, DenseMatrix()};
  {
    PhaseClock clock(times, phases::generate_omega);
    omega.block = gen_block(seed, n2, r, omega.row_start, inner_j, omega.col_start, cols_k);
  }
  DenseMatrix partial;
  {
    PhaseClock clock(times, phases::first_multiply);
    partial = gemm(DenseMatrix(rows_i, inner_j, std::move(a_tile)), omega.block);
  }
  std::vector<double> local;
  {
    PhaseClock clock(times, phases::reduce_scatter_b);
    local = comm.reduce_scatter(partial.data(), grid.fiber_j(c.i, c.k), sites::reduce_scatter_b);
  }
  if (omega_out) *omega_out = std::move(omega);
  return DistMatrix{DistLayout(n1, r, grid, BlockRole::b_style), comm.rank(), std::move(local)};
}

}  // namespace

bool rand_matmul_runnable(std::size_t n1, std::size_t n2, std::size_t r, const GridSpec& grid) {
  if (!splits(n1, grid.p1()) || !splits(n2, grid.p2()) || !splits(r, grid.p3())) return false;
  const std::size_t a_tile = (n1 / grid.p1()) * (n2 / grid.p2());
  const std::size_t b_tile = (n1 / grid.p1()) * (r / grid.p3());
  return splits(a_tile, grid.p3()) && splits(b_tile, grid.p2());
}

bool nystrom_runnable(std::size_t n, std::size_t r, const GridSpec& first,
                      const GridSpec& second) {
  if (first.size() != second.size()) return false;
  if (!rand_matmul_runnable(n, n, r, first)) return false;
  if (!splits(n, second.p1()) || !splits(r, second.p2()) || !splits(r, second.p3())) return false;
  const std::size_t b_tile = (n / second.p1()) * (r / second.p3());
  const std::size_t c_tile = (r / second.p2()) * (r / second.p3());
  return splits(b_tile, second.p2()) && splits(c_tile, second.p1());
}

DistMatrix rand_matmul(Communicator& comm, const DistMatrix& a, const SketchSeed& seed,
                       std::size_t r, PhaseTimes* times) {
  return sketch_product(comm, a, seed, r, times, nullptr);
}

DistMatrix redistribute(Communicator& comm, const DistMatrix& b, const GridSpec& target,
                        PhaseTimes* times) {
  const DistLayout& from = b.layout;
  if (from.role() != BlockRole::b_style) {
    throw std::invalid_argument("redistribute: input must be distributed B-style");
  }
  if (from.grid() == target) return b;
  require_world(comm, target, "redistribute");
  const DistLayout to(from.rows(), from.cols(), target, BlockRole::b_style);
  if (to.local_size() != from.local_size()) {
    throw std::invalid_argument("redistribute: per-rank sizes differ (" +
                                std::to_string(from.local_size()) + " vs " +
                                std::to_string(to.local_size()) + ")");
  }
  const auto world = Group::world(comm.world_size());
  const std::size_t p = static_cast<std::size_t>(comm.world_size());

  std::vector<std::vector<double>> received;
  {
    PhaseClock clock(times, phases::all_to_all);
    // Pack: per destination, ordered by the destination's local offset.
    std::vector<std::vector<std::pair<std::size_t, double>>> buckets(p);
    for (std::size_t o = 0; o < b.local.size(); ++o) {
      const auto [i, j] = from.global_index(comm.rank(), o);
      const LocalSlot slot = to.owner(i, j);
      buckets[static_cast<std::size_t>(slot.rank)].emplace_back(slot.offset, b.local[o]);
    }
    std::vector<std::vector<double>> chunks(p);
    for (std::size_t d = 0; d < p; ++d) {
      auto& bucket = buckets[d];
      std::sort(bucket.begin(), bucket.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      chunks[d].reserve(bucket.size());
      for (const auto& entry : bucket) chunks[d].push_back(entry.second);
    }
    received = comm.all_to_all(std::move(chunks), world, sites::redistribute_b);
  }

  PhaseClock clock(times, phases::unpack);
  std::vector<double> local(to.local_size());
  std::vector<std::size_t> cursor(p, 0);
  for (std::size_t t = 0; t < local.size(); ++t) {
    const auto [i, j] = to.global_index(comm.rank(), t);
    const auto src = static_cast<std::size_t>(from.owner(i, j).rank);
    if (cursor[src] >= received[src].size()) {
      throw FabricError("redistribute: rank " + std::to_string(src) + " sent too few words");
    }
    local[t] = received[src][cursor[src]++];
  }
  for (std::size_t s = 0; s < p; ++s) {
    if (cursor[s] != received[s].size()) {
      throw FabricError("redistribute: rank " + std::to_string(s) + " sent too many words");
    }
  }
  return DistMatrix{to, comm.rank(), std::move(local)};
}

NystromOutput nystrom(Communicator& comm, const DistMatrix& a, const SketchSeed& seed,
                      std::size_t r, const GridSpec& second, const NystromOptions& options) {
  const DistLayout& la = a.layout;
  if (la.rows() != la.cols()) {
    throw std::invalid_argument("nystrom: A must be square, got " + std::to_string(la.rows()) +
                                "x" + std::to_string(la.cols()));
  }
  const std::size_t n = la.rows();
  if (!nystrom_runnable(n, r, la.grid(), second)) {
    throw std::invalid_argument("nystrom: grids " + la.grid().to_string() + " / " +
                                second.to_string() + " cannot split n=" + std::to_string(n) +
                                ", r=" + std::to_string(r) + " evenly");
  }
  require_world(comm, second, "nystrom");
  PhaseTimes* times = options.times;

  OmegaBlock first_omega;
  DistMatrix b_hat = sketch_product(comm, a, seed, r, times, &first_omega);
  DistMatrix b = redistribute(comm, b_hat, second, times);

  const GridCoord c = second.coord_of(comm.rank());
  const std::size_t rows_i = n / second.p1();
  const std::size_t cols_j = r / second.p2();
  const std::size_t cols_k = r / second.p3();
  const std::size_t row_start = c.i * rows_i;
  const std::size_t col_start = c.j * cols_j;

  NystromOutput out{std::move(b), DistMatrix{DistLayout(r, r, second, BlockRole::c_style), 0, {}},
                    false};
  DenseMatrix omega;
  if (options.reuse_omega && first_omega.row_start == row_start &&
      first_omega.col_start == col_start && first_omega.block.rows() == rows_i &&
      first_omega.block.cols() == cols_j) {
    omega = std::move(first_omega.block);
    out.omega_reused = true;
  } else {
    PhaseClock clock(times, phases::generate_omega);
    omega = gen_block(seed, n, r, row_start, rows_i, col_start, cols_j);
  }

  std::vector<double> b_tile;
  {
    PhaseClock clock(times, phases::allgather_b);
    b_tile = comm.all_gather(out.b.local, second.fiber_j(c.i, c.k), sites::allgather_b);
  }
  DenseMatrix partial;
  {
    PhaseClock clock(times, phases::second_multiply);
    partial = gemm(omega, DenseMatrix(rows_i, cols_k, std::move(b_tile)), Transpose::yes);
  }
  {
    PhaseClock clock(times, phases::reduce_scatter_c);
    out.c.local =
        comm.reduce_scatter(partial.data(), second.fiber_i(c.j, c.k), sites::reduce_scatter_c);
  }
  out.c.rank = comm.rank();
  return out;
}

}  // namespace sketchcomm
