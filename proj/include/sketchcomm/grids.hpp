// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sketchcomm/grid_spec.hpp"
#include "sketchcomm/rational.hpp"

namespace sketchcomm {

// Communication lower bounds, the closed-form minimizers behind them,
// per-grid cost predictions and grid selection for
//   B = A Ω            (A n1 x n2, Ω n2 x r random)
//   B = A Ω, C = Ωᵀ B  (A n x n symmetric, Ω n x r random)

enum class NystromVariant { redist, noredist };

std::string_view to_string(NystromVariant v) noexcept;
NystromVariant parse_variant(std::string_view text);

struct BoundResult {
  /// Words some processor must communicate: accessed − owned, never negative.
  double words = 0.0;
  Surd exact_words;
  /// Sum of the optimizer coordinates (words the processor must touch).
  double accessed = 0.0;
  /// Words the processor may own at start and end.
  Rational owned;
  /// 1-based case of the piecewise bound.
  int case_id = 0;
  std::vector<double> optimizer;
};

/// Case 1: P ≤ n1. Case 2: n1 < P ≤ n1·n2/r. Case 3: beyond.
int randmatmul_case(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p);
/// Case 1: P ≤ r. Case 2: r < P ≤ n. Case 3: n < P ≤ n(n+r)/r. Case 4: beyond.
int nystrom_case(std::int64_t n, std::int64_t r, std::int64_t p);

/// min x1 + x2  s.t.  x1·x2 ≥ n1·n2·r/P,  x1 ≥ n1·n2/P,  x2 ≥ n1·r/P.
std::array<double, 2> solve_opt_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                           std::int64_t p);
/// min x1 + x2 + x3  s.t.  x1·x2 ≥ n²r/P,  x2·x3 ≥ nr²/P,
///                         x1 ≥ n²/P,  x2 ≥ nr/P,  x3 ≥ r²/P.
std::array<double, 3> solve_opt_nystrom(std::int64_t n, std::int64_t r, std::int64_t p);

/// Largest relative constraint violation of x (≤ 0 means feasible).
double randmatmul_constraint_violation(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                       std::int64_t p, std::span<const double> x);
double nystrom_constraint_violation(std::int64_t n, std::int64_t r, std::int64_t p,
                                    std::span<const double> x);

/// Requires n2 > r ≥ 1 and P ≥ 1.
BoundResult lb_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p);
/// Requires n > r ≥ 1 and P ≥ 1. `words` is W − (n² + nr + r²)/P.
BoundResult lb_nystrom(std::int64_t n, std::int64_t r, std::int64_t p);

struct CostTerm {
  std::string name;
  Rational words;
  std::uint64_t latency = 0;
};

struct CostPrediction {
  double bandwidth_words = 0.0;
  Rational exact_bandwidth;
  std::uint64_t latency_messages = 0;
  std::vector<CostTerm> breakdown;
};

/// Whether (p1, p2, p3) divide (n1, n2, r).
bool grid_divides_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                             const GridSpec& grid);
/// Whether Π divides (n, n, r) and Ψ divides (n, r, r).
bool grids_divide_nystrom(std::int64_t n, std::int64_t r, const GridSpec& first,
                          const GridSpec& second);

/// Cost-model formula without the divisibility requirement; used when
/// ranking grids that cannot split the problem evenly.
CostPrediction model_cost_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                     const GridSpec& grid);
/// all-gather A + reduce-scatter B. Throws unless the grid divides the problem.
CostPrediction predicted_cost_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                         const GridSpec& grid);

CostPrediction model_cost_nystrom(std::int64_t n, std::int64_t r, const GridSpec& first,
                                  const GridSpec& second);
/// all-gather A, reduce-scatter B̂, redistribution (nr/P words, P − 1
/// messages, only when the grids differ), all-gather B, reduce-scatter C.
/// Throws on non-divisible grids, or on differing grids under noredist.
CostPrediction predicted_cost_nystrom(std::int64_t n, std::int64_t r, const GridSpec& first,
                                      const GridSpec& second, NystromVariant variant);

struct GridChoice {
  GridSpec grid;
  int case_id = 0;
  /// False when the closed-form grid was unusable and the factor-triple
  /// search picked the grid instead.
  bool from_formula = true;
  std::string note;
};

struct GridPairChoice {
  GridSpec first;
  GridSpec second;
  int case_id = 0;
  bool from_formula = true;
  std::string note;
};

GridChoice select_grid_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                  std::int64_t p);
GridPairChoice select_grids_nystrom(std::int64_t n, std::int64_t r, std::int64_t p,
                                    NystromVariant variant);

using LatticePoint = std::array<std::int64_t, 3>;

struct ProjectionVerdict {
  std::size_t points = 0;
  std::size_t ij = 0;
  std::size_t jk = 0;
  std::size_t ki = 0;
  bool holds = true;
};

/// Checks |V| ≤ |φij||φjk|, |V| ≤ |φjk||φki| and |V| ≤ |φki||φij|.
ProjectionVerdict projection_inequality_oracle(std::span<const LatticePoint> points);

}  // namespace sketchcomm
