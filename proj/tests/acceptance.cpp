// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/naive.hpp"
#include "oracles/optimizer.hpp"
#include "sketchcomm/algorithms.hpp"
#include "sketchcomm/dist_matrix.hpp"
#include "sketchcomm/fabric.hpp"
#include "sketchcomm/grids.hpp"
#include "sketchcomm/linalg.hpp"
#include "sketchcomm/rng.hpp"
#include "sketchcomm/synthetic.hpp"

using namespace sketchcomm;

namespace {

// Pinned tolerances.
constexpr double kOptimizerRelTol = 1e-9;
constexpr double kFeasibilityTol = 1e-9;
constexpr double kSerialRelTol = 1e-12;
constexpr double kRecoveryTol = 1e-8;
constexpr double kPinvTol = 1e-12;
constexpr double kUniformMeanTol = 0.002;
constexpr double kUniformVarTol = 0.002;
constexpr double kGaussianMeanTol = 0.005;
constexpr double kGaussianVarTol = 0.01;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<void(Outcome&)> body;
};

const Backend kBackends[] = {Backend::threaded, Backend::lockstep};

std::string dims(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t p) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
         ",P=" + std::to_string(p) + ")";
}

bool same_bits(const DenseMatrix& a, const DenseMatrix& b) { return bitwise_equal(a, b); }

struct SketchRun {
  DenseMatrix b;
  CostReport report;
};

SketchRun run_sketch(const DenseMatrix& a, const SketchSeed& seed, std::size_t r,
                     const GridSpec& grid, Backend backend) {
  const DistLayout la(a.rows(), a.cols(), grid, BlockRole::a_style);
  auto out = run_spmd(grid.size(), backend, [&](Communicator& comm) {
    const DistMatrix b = rand_matmul(comm, scatter_matrix(a, la, comm.rank()), seed, r);
    return gather_matrix(comm, b);
  });
  return SketchRun{std::move(out.results[0]), std::move(out.report)};
}

struct NystromRun {
  DenseMatrix b;
  DenseMatrix c;
  CostReport report;
};

NystromRun run_nystrom(const DenseMatrix& a, const SketchSeed& seed, std::size_t r,
                       const GridSpec& first, const GridSpec& second, Backend backend,
                       bool gather = true) {
  const DistLayout la(a.rows(), a.cols(), first, BlockRole::a_style);
  struct Local {
    DenseMatrix b, c;
  };
  auto out = run_spmd(first.size(), backend, [&](Communicator& comm) {
    const NystromOutput res = nystrom(comm, scatter_matrix(a, la, comm.rank()), seed, r, second);
    if (!gather) return Local{};
    return Local{gather_matrix(comm, res.b), gather_matrix(comm, res.c)};
  });
  return NystromRun{std::move(out.results[0].b), std::move(out.results[0].c),
                    std::move(out.report)};
}

// Selected grids when they split the problem evenly, otherwise the cheapest
// runnable pair.
std::optional<std::pair<GridSpec, GridSpec>> runnable_nystrom_grids(std::int64_t n, std::int64_t r,
                                                                    std::int64_t p,
                                                                    NystromVariant variant) {
  const GridPairChoice choice = select_grids_nystrom(n, r, p, variant);
  if (nystrom_runnable(n, r, choice.first, choice.second)) return std::pair{choice.first, choice.second};
  std::optional<std::pair<GridSpec, GridSpec>> best;
  Rational best_cost;
  for (const GridSpec& a : factor_triples(static_cast<int>(p))) {
    for (const GridSpec& b : factor_triples(static_cast<int>(p))) {
      if (variant == NystromVariant::noredist && !(a == b)) continue;
      if (!nystrom_runnable(n, r, a, b)) continue;
      const Rational c = model_cost_nystrom(n, r, a, b).exact_bandwidth;
      if (!best || c < best_cost) {
        best = std::pair{a, b};
        best_cost = c;
      }
    }
  }
  return best;
}

std::uint64_t as_words(const Rational& q) {
  return q.is_integer() && q.num() >= 0 ? static_cast<std::uint64_t>(q.num()) : ~0ull;
}

// ---------------------------------------------------------------- 1

void zero_communication(Outcome& o) {
  int instances = 0;
  const SketchSeed seed{101, Distribution::gaussian};
  for (std::int64_t n1 : {16, 24, 32, 48, 64}) {
    for (std::int64_t p : {1, 2, 4, 8, 16}) {
      if (p > n1 || n1 % p != 0 || instances == 20) continue;
      const std::int64_t n2 = 32, r = 8;
      const DenseMatrix a = synthetic_uniform(n1, n2, static_cast<std::uint64_t>(n1 * 100 + p));
      const Backend backend = instances % 2 ? Backend::threaded : Backend::lockstep;
      const SketchRun run = run_sketch(a, seed, r, GridSpec(static_cast<int>(p), 1, 1), backend);
      const BoundResult lb = lb_randmatmul(n1, n2, r, p);
      o.require(run.report.critical_path_words() == 0,
                "measured words nonzero at " + dims(n1, n2, r, p));
      o.require(run.report.max_model_bandwidth() == 0, "model words nonzero at " + dims(n1, n2, r, p));
      o.require(compare(Rational(0), lb.exact_words) == 0, "W nonzero at " + dims(n1, n2, r, p));
      ++instances;
    }
  }
  o.require(instances == 20, "only " + std::to_string(instances) + " instances");
  o.detail << instances << " instances, all zero";
}

// ---------------------------------------------------------------- 2

void lower_bound_tightness(Outcome& o) {
  int per_case[4] = {0, 0, 0, 0};
  const SketchSeed seed{202, Distribution::gaussian};
  for (std::int64_t n1 : {2, 4, 8, 16}) {
    for (std::int64_t n2 : {8, 16, 32, 64}) {
      for (std::int64_t r : {2, 4, 8}) {
        if (r >= n2) continue;
        for (std::int64_t p : {1, 2, 4, 8, 16, 32, 64}) {
          const GridChoice choice = select_grid_randmatmul(n1, n2, r, p);
          if (!choice.from_formula) continue;
          if (!rand_matmul_runnable(n1, n2, r, choice.grid)) continue;
          const CostPrediction pred = predicted_cost_randmatmul(n1, n2, r, choice.grid);
          const BoundResult lb = lb_randmatmul(n1, n2, r, p);
          o.require(compare(pred.exact_bandwidth, lb.exact_words) == 0,
                    "predicted " + pred.exact_bandwidth.to_string() + " != W at " +
                        dims(n1, n2, r, p));
          const DenseMatrix a = synthetic_uniform(n1, n2, static_cast<std::uint64_t>(n1 + n2 + r + p));
          const SketchRun run = run_sketch(a, seed, r, choice.grid, Backend::lockstep);
          for (int rank = 0; rank < choice.grid.size(); ++rank) {
            o.require(run.report.rank_totals(rank).model_bandwidth == as_words(pred.exact_bandwidth),
                      "report model total differs from prediction at " + dims(n1, n2, r, p));
          }
          ++per_case[choice.case_id];
        }
      }
    }
  }
  const int total = per_case[1] + per_case[2] + per_case[3];
  o.require(total >= 30, "fewer than 30 instances");
  o.require(per_case[1] > 0 && per_case[2] > 0 && per_case[3] > 0, "a case is not covered");
  o.detail << total << " instances (case1=" << per_case[1] << " case2=" << per_case[2]
           << " case3=" << per_case[3] << "), gap 0 and report == prediction";
}

// ---------------------------------------------------------------- 3

void optimizer_agreement(Outcome& o) {
  std::mt19937_64 gen(303);
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
  };
  double worst_rel = 0.0, worst_violation = -1.0;
  for (int t = 0; t < 50; ++t) {
    const std::int64_t n1 = draw(1, 4096), n2 = draw(2, 4096), r = draw(1, n2 - 1),
                       p = draw(1, 8192);
    const auto x = solve_opt_randmatmul(n1, n2, r, p);
    const double obj = x[0] + x[1];
    const double ref = oracle::search_randmatmul(n1, n2, r, p).objective;
    const double rel = std::abs(obj - ref) / ref;
    const double v = randmatmul_constraint_violation(n1, n2, r, p, x);
    worst_rel = std::max(worst_rel, rel);
    worst_violation = std::max(worst_violation, v);
    o.require(rel <= kOptimizerRelTol, "randmatmul objective mismatch at " + dims(n1, n2, r, p));
    o.require(v <= kFeasibilityTol, "randmatmul optimizer infeasible at " + dims(n1, n2, r, p));
  }
  for (int t = 0; t < 50; ++t) {
    const std::int64_t n = draw(2, 4096), r = draw(1, n - 1), p = draw(1, 32768);
    const auto x = solve_opt_nystrom(n, r, p);
    const double obj = x[0] + x[1] + x[2];
    const double ref = oracle::search_nystrom(n, r, p).objective;
    const double rel = std::abs(obj - ref) / ref;
    const double v = nystrom_constraint_violation(n, r, p, x);
    worst_rel = std::max(worst_rel, rel);
    worst_violation = std::max(worst_violation, v);
    o.require(rel <= kOptimizerRelTol, "nystrom objective mismatch at " + dims(n, n, r, p));
    o.require(v <= kFeasibilityTol, "nystrom optimizer infeasible at " + dims(n, n, r, p));
  }
  o.detail << "50+50 instances, worst relative objective gap " << worst_rel
           << ", worst constraint shortfall " << std::max(0.0, worst_violation);
}

// ---------------------------------------------------------------- 4

void nystrom_gap_bounds(Outcome& o) {
  struct Instance {
    std::int64_t n, r, p;
  };
  std::vector<Instance> instances;
  for (std::int64_t n : {16, 64, 256})
    for (std::int64_t r : {2, 4, 8})
      for (std::int64_t p = 1; p <= 4096; p *= 2) instances.push_back({n, r, p});
  // Case-4 instances whose product-consistent grids divide the problem.
  instances.push_back({24, 8, 384});
  instances.push_back({12, 4, 192});
  int per_case[5] = {0, 0, 0, 0, 0};
  for (const auto& [n, r, p] : instances) {
    const GridPairChoice choice = select_grids_nystrom(n, r, p, NystromVariant::redist);
    if (!grids_divide_nystrom(n, r, choice.first, choice.second)) continue;
    const Rational cost =
        predicted_cost_nystrom(n, r, choice.first, choice.second, NystromVariant::redist)
            .exact_bandwidth;
    const BoundResult lb = lb_nystrom(n, r, p);
    bool ok = false;
    switch (lb.case_id) {
      case 1:
      case 2:
        ok = compare(cost - Rational(n * r, p), lb.exact_words) <= 0;
        break;
      case 3: ok = compare(cost - Rational(r), lb.exact_words) <= 0; break;
      default: {
        // cost − (a + b√q) ≤ √q  ⇔  cost − a ≤ (b + 1)√q, with q = nr(n+r)/P.
        const Surd& w = lb.exact_words;
        ok = w.radicand == Rational(n * r * (n + r), p) &&
             compare(cost - w.a, Surd{Rational(0), w.b + Rational(1), w.radicand}) <= 0;
        break;
      }
    }
    o.require(compare(cost, lb.exact_words) >= 0, "prediction below the bound at " + dims(n, n, r, p));
    o.require(ok, "gap exceeds the case bound at " + dims(n, n, r, p));
    ++per_case[lb.case_id];
  }
  o.require(per_case[1] && per_case[2] && per_case[3] && per_case[4], "a case is not covered");
  o.detail << "case1=" << per_case[1] << " case2=" << per_case[2] << " case3=" << per_case[3]
           << " case4=" << per_case[4] << " divisible instances within bounds";
}

// ---------------------------------------------------------------- 5

void serial_equivalence(Outcome& o) {
  double worst = 0.0;
  int runs = 0;
  struct Shape {
    std::int64_t n, r;
  };
  for (const auto& [n, r] : {Shape{512, 64}, Shape{96, 16}}) {
    const SketchSeed seed{static_cast<std::uint64_t>(505 + n), Distribution::gaussian};
    const DenseMatrix a = synthetic_symmetric(n, static_cast<std::uint64_t>(n));
    const auto serial = oracle::serial_nystrom(a, seed, r);
    for (std::int64_t p : {1, 2, 4, 8, 16}) {
      const std::string at = dims(n, n, r, p);
      const GridChoice g = select_grid_randmatmul(n, n, r, p);
      if (!rand_matmul_runnable(n, n, r, g.grid)) {
        o.require(false, "no runnable sketch grid at " + at);
        continue;
      }
      std::optional<DenseMatrix> first_b;
      for (Backend backend : kBackends) {
        const SketchRun run = run_sketch(a, seed, r, g.grid, backend);
        const double e = relative_frobenius_error(run.b, serial.b);
        worst = std::max(worst, e);
        o.require(e <= kSerialRelTol, "rand_matmul mismatch at " + at);
        if (first_b) o.require(same_bits(*first_b, run.b), "backends differ (rand_matmul) at " + at);
        first_b = run.b;
        ++runs;
      }
      for (NystromVariant variant : {NystromVariant::redist, NystromVariant::noredist}) {
        const auto grids = runnable_nystrom_grids(n, r, p, variant);
        if (!grids) {
          o.require(false, "no runnable nystrom grids at " + at);
          continue;
        }
        std::optional<NystromRun> first;
        for (Backend backend : kBackends) {
          NystromRun run = run_nystrom(a, seed, r, grids->first, grids->second, backend);
          const double eb = relative_frobenius_error(run.b, serial.b);
          const double ec = relative_frobenius_error(run.c, serial.c);
          worst = std::max({worst, eb, ec});
          o.require(eb <= kSerialRelTol && ec <= kSerialRelTol,
                    "nystrom " + std::string(to_string(variant)) + " mismatch at " + at);
          if (first) {
            o.require(same_bits(first->b, run.b) && same_bits(first->c, run.c),
                      "backends differ (nystrom) at " + at);
          } else {
            first = std::move(run);
          }
          ++runs;
        }
      }
    }
  }
  o.detail << runs << " runs, worst relative Frobenius error " << worst
           << ", backends bit-identical";
}

// ---------------------------------------------------------------- 6

void exact_rank_recovery(Outcome& o) {
  const std::int64_t n = 400, r = 40, p = 4;
  const DenseMatrix a = synthetic_lowrank_spsd(n, 20, 606);
  const auto grids = runnable_nystrom_grids(n, r, p, NystromVariant::redist);
  if (!grids) {
    o.require(false, "no runnable grids");
    return;
  }
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const NystromRun run = run_nystrom(a, SketchSeed{seed * 7919, Distribution::gaussian}, r,
                                       grids->first, grids->second, Backend::lockstep);
    const double e = nystrom_error(a, run.b, run.c, kPinvTol);
    worst = std::max(worst, e);
    o.require(e <= kRecoveryTol, "seed " + std::to_string(seed) + " error " + std::to_string(e));
  }
  o.detail << "5 seeds, worst error " << worst;
}

// ---------------------------------------------------------------- 7

void error_vs_rank(Outcome& o) {
  const std::size_t n = 1000, dim = 16;
  const DenseMatrix x = gaussian_points(n, dim, 707);
  const DenseMatrix a = kernel_rbf(x, rbf_sigma_frobenius(x));
  const SketchSeed seed{7070, Distribution::gaussian};
  double previous = 0.0;
  std::ostringstream errs;
  for (std::int64_t r : {50, 200, 400}) {
    const auto grids = runnable_nystrom_grids(n, r, 2, NystromVariant::redist);
    if (!grids) {
      o.require(false, "no runnable grids for r=" + std::to_string(r));
      return;
    }
    const NystromRun run = run_nystrom(a, seed, r, grids->first, grids->second, Backend::lockstep);
    const double e = nystrom_error(a, run.b, run.c, kPinvTol);
    if (r != 50) o.require(e < previous, "error did not decrease at r=" + std::to_string(r));
    errs << (r == 50 ? "" : ", ") << "r=" << r << ": " << e;
    previous = e;
  }
  o.detail << errs.str();
}

// ---------------------------------------------------------------- 8

void crossover(Outcome& o) {
  const std::int64_t n = 4096, r = 64;
  std::optional<std::int64_t> flip;
  for (std::int64_t p = 2; p <= 4096; p *= 2) {
    const GridSpec row(static_cast<int>(p), 1, 1), col(1, 1, static_cast<int>(p));
    const Rational redist = model_cost_nystrom(n, r, row, col).exact_bandwidth;
    const Rational noredist = model_cost_nystrom(n, r, row, row).exact_bandwidth;
    o.require(redist == Rational(n * r, p), "redist curve is not nr/P at P=" + std::to_string(p));
    o.require(noredist == Rational(r * r) - Rational(r * r, p),
              "noredist curve is not r^2 - r^2/P at P=" + std::to_string(p));
    if (!flip && redist < noredist) flip = p;
  }
  o.require(flip && *flip * 2 >= n / r && *flip <= 2 * (n / r), "crossover outside [n/2r, 2n/r]");

  // Measured runs on the points where both layouts divide the problem.
  const DenseMatrix a = synthetic_symmetric(n, 808);
  const SketchSeed seed{8080, Distribution::uniform};
  int measured = 0;
  for (std::int64_t p = 2; p <= r; p *= 2) {
    const GridSpec row(static_cast<int>(p), 1, 1), col(1, 1, static_cast<int>(p));
    for (bool redist : {true, false}) {
      const GridSpec& second = redist ? col : row;
      const std::string at = std::string(redist ? "redist" : "noredist") + " P=" + std::to_string(p);
      if (!nystrom_runnable(n, r, row, second)) {
        o.require(false, "not runnable: " + at);
        continue;
      }
      const NystromRun run = run_nystrom(a, seed, r, row, second, Backend::lockstep, false);
      const CostPrediction pred = predicted_cost_nystrom(
          n, r, row, second, redist ? NystromVariant::redist : NystromVariant::noredist);
      for (int rank = 0; rank < p; ++rank) {
        const CostTotals t = run.report.rank_totals(rank);
        o.require(t.model_bandwidth == as_words(pred.exact_bandwidth), "model != predicted: " + at);
        for (const std::string& site : run.report.sites()) {
          const CostTotals s = run.report.site_totals(rank, site);
          // All-to-all moves everything except the block a rank keeps.
          const std::uint64_t kept =
              site == sites::redistribute_b ? static_cast<std::uint64_t>(n * r / (p * p)) : 0;
          o.require(s.words_sent + kept == s.model_bandwidth &&
                        s.words_received + kept == s.model_bandwidth,
                    "measured words do not track the model at " + site + ", " + at);
        }
      }
      ++measured;
    }
  }
  o.detail << "model curves cross at P=" << (flip ? std::to_string(*flip) : "none") << " (n/r="
           << n / r << "); " << measured << " measured runs track the model exactly";
}

// ---------------------------------------------------------------- 9

void rng_block_consistency(Outcome& o) {
  const std::size_t rows = 128, cols = 32;
  std::mt19937_64 gen(909);
  for (int trial = 0; trial < 1000; ++trial) {
    const SketchSeed seed{gen(), trial % 2 ? Distribution::gaussian : Distribution::uniform};
    const DenseMatrix full = gen_block(seed, rows, cols, 0, rows, 0, cols);
    auto cuts = [&](std::size_t extent) {
      std::vector<std::size_t> c{0, extent};
      const int extra = std::uniform_int_distribution<int>(0, 6)(gen);
      for (int i = 0; i < extra; ++i)
        c.push_back(std::uniform_int_distribution<std::size_t>(1, extent - 1)(gen));
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      return c;
    };
    const auto rc = cuts(rows), cc = cuts(cols);
    DenseMatrix assembled(rows, cols);
    for (std::size_t bi = 0; bi + 1 < rc.size(); ++bi) {
      for (std::size_t bj = 0; bj + 1 < cc.size(); ++bj) {
        const DenseMatrix block =
            gen_block(seed, rows, cols, rc[bi], rc[bi + 1] - rc[bi], cc[bj], cc[bj + 1] - cc[bj]);
        for (std::size_t j = 0; j < block.cols(); ++j)
          for (std::size_t i = 0; i < block.rows(); ++i) assembled(rc[bi] + i, cc[bj] + j) = block(i, j);
      }
    }
    if (!same_bits(assembled, full)) {
      o.require(false, "partition " + std::to_string(trial) + " differs");
      return;
    }
  }
  constexpr std::uint64_t samples = 1000000;
  double us = 0, us2 = 0, gs = 0, gs2 = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double u = sketch_entry({9090, Distribution::uniform}, i);
    const double g = sketch_entry({9090, Distribution::gaussian}, i);
    us += u;
    us2 += u * u;
    gs += g;
    gs2 += g * g;
  }
  const double umean = us / samples, uvar = us2 / samples - umean * umean;
  const double gmean = gs / samples, gvar = gs2 / samples - gmean * gmean;
  o.require(std::abs(umean - 0.5) < kUniformMeanTol && std::abs(uvar - 1.0 / 12) < kUniformVarTol,
            "uniform moments off");
  o.require(std::abs(gmean) <= kGaussianMeanTol && std::abs(gvar - 1.0) <= kGaussianVarTol,
            "gaussian moments off");
  o.detail << "1000 partitions bit-exact; uniform mean " << umean << " var " << uvar
           << "; gaussian mean " << gmean << " var " << gvar;
}

// ---------------------------------------------------------------- 10

void projection_inequality(Outcome& o) {
  std::mt19937_64 gen(1010);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LatticePoint> v;
    const double keep = std::uniform_real_distribution<double>(0.02, 1.0)(gen);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k)
          if (std::uniform_real_distribution<double>(0.0, 1.0)(gen) < keep) v.push_back({i, j, k});
    const ProjectionVerdict pv = projection_inequality_oracle(v);
    o.require(pv.holds, "random subset " + std::to_string(trial) + " violates the inequality");
  }
  int boxes = 0;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      for (int c = 1; c <= 6; ++c) {
        std::vector<LatticePoint> v;
        for (int i = 0; i < a; ++i)
          for (int j = 0; j < b; ++j)
            for (int k = 0; k < c; ++k) v.push_back({i, j, k});
        const ProjectionVerdict pv = projection_inequality_oracle(v);
        o.require(pv.holds && pv.points == static_cast<std::size_t>(a * b * c),
                  "box " + std::to_string(a) + "x" + std::to_string(b) + "x" + std::to_string(c));
        ++boxes;
      }
  o.detail << "200 random subsets and " << boxes << " boxes";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "zero-communication case", 1.0, zero_communication},
      {2, "lower-bound tightness", 10.0, lower_bound_tightness},
      {3, "optimizer oracle agreement", 30.0, optimizer_agreement},
      {4, "nystrom gap bounds", 5.0, nystrom_gap_bounds},
      {5, "serial-oracle equivalence", 60.0, serial_equivalence},
      {6, "exact-rank recovery", 30.0, exact_rank_recovery},
      {7, "error decreases with rank", 60.0, error_vs_rank},
      {8, "redist/noredist crossover", 30.0, crossover},
      {9, "rng block consistency", 10.0, rng_block_consistency},
      {10, "projection inequality", 1.0, projection_inequality},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.time_limit_s, "; exceeded the " + std::to_string(c.time_limit_s) + " s limit");
    if (!o.pass) ++failed;
    std::printf("%s %2d %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
