// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/grids.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "sketchcomm/cost.hpp"

namespace sketchcomm {

namespace {

void require_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p) {
  if (n1 < 1 || n2 < 1 || r < 1 || p < 1) {
    throw std::invalid_argument("randmatmul bound: n1, n2, r and P must all be >= 1");
  }
  if (r >= n2) {
    throw std::invalid_argument("randmatmul bound: requires r < n2 (got r=" + std::to_string(r) +
                                ", n2=" + std::to_string(n2) + ")");
  }
}

void require_nystrom(std::int64_t n, std::int64_t r, std::int64_t p) {
  if (n < 1 || r < 1 || p < 1) {
    throw std::invalid_argument("nystrom bound: n, r and P must all be >= 1");
  }
  if (r >= n) {
    throw std::invalid_argument("nystrom bound: requires r < n (got r=" + std::to_string(r) +
                                ", n=" + std::to_string(n) + ")");
  }
}

int checked_int(std::int64_t p) {
  if (p < 1 || p > (1 << 24)) throw std::invalid_argument("P out of supported range");
  return static_cast<int>(p);
}

// (1 − 1/q)·words
Rational collective_share(std::int64_t q, const Rational& words) {
  return Rational(q - 1, q) * words;
}

bool divides(std::int64_t d, std::int64_t n) { return n % d == 0; }

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

// Relative shortfall of lhs ≥ rhs.
double shortfall(double lhs, double rhs) { return (rhs - lhs) / rhs; }

// Exact square root of a rational as an integer, if it is one.
std::optional<std::int64_t> integral_sqrt(const Rational& q) {
  auto s = exact_sqrt(q);
  if (!s || !s->is_integer()) return std::nullopt;
  return s->num();
}

std::optional<std::int64_t> integral(const Rational& q) {
  if (!q.is_integer()) return std::nullopt;
  return q.num();
}

}  // namespace

std::string_view to_string(NystromVariant v) noexcept {
  return v == NystromVariant::redist ? "redist" : "noredist";
}

NystromVariant parse_variant(std::string_view text) {
  if (text == "redist") return NystromVariant::redist;
  if (text == "noredist") return NystromVariant::noredist;
  throw std::invalid_argument("unknown variant '" + std::string(text) +
                              "' (expected redist or noredist)");
}

int randmatmul_case(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p) {
  require_randmatmul(n1, n2, r, p);
  if (p <= n1) return 1;
  if (p * r <= n1 * n2) return 2;
  return 3;
}

int nystrom_case(std::int64_t n, std::int64_t r, std::int64_t p) {
  require_nystrom(n, r, p);
  if (p <= r) return 1;
  if (p <= n) return 2;
  if (p * r <= n * (n + r)) return 3;
  return 4;
}

std::array<double, 2> solve_opt_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                           std::int64_t p) {
  const double P = static_cast<double>(p);
  const double N1 = static_cast<double>(n1);
  const double N2 = static_cast<double>(n2);
  const double R = static_cast<double>(r);
  switch (randmatmul_case(n1, n2, r, p)) {
    case 1: return {N1 * N2 / P, N1 * R / P};
    case 2: return {N1 * N2 / P, R};
    default: {
      const double x = std::sqrt(N1 * N2 * R / P);
      return {x, x};
    }
  }
}

std::array<double, 3> solve_opt_nystrom(std::int64_t n, std::int64_t r, std::int64_t p) {
  const double P = static_cast<double>(p);
  const double N = static_cast<double>(n);
  const double R = static_cast<double>(r);
  switch (nystrom_case(n, r, p)) {
    case 1: return {N * N / P, N * R / P, R * R / P};
    case 2: return {N * N / P, N * R / P, R};
    case 3: return {N * N / P, R, N * R / P};
    default: {
      const double t = std::sqrt(N * R / ((N + R) * P));
      return {N * t, (N + R) * t, R * t};
    }
  }
}

double randmatmul_constraint_violation(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                       std::int64_t p, std::span<const double> x) {
  if (x.size() != 2) throw std::invalid_argument("randmatmul: optimizer has 2 coordinates");
  const double P = static_cast<double>(p);
  const double N1 = static_cast<double>(n1);
  const double N2 = static_cast<double>(n2);
  const double R = static_cast<double>(r);
  return std::max({shortfall(x[0] * x[1], N1 * N2 * R / P), shortfall(x[0], N1 * N2 / P),
                   shortfall(x[1], N1 * R / P)});
}

double nystrom_constraint_violation(std::int64_t n, std::int64_t r, std::int64_t p,
                                    std::span<const double> x) {
  if (x.size() != 3) throw std::invalid_argument("nystrom: optimizer has 3 coordinates");
  const double P = static_cast<double>(p);
  const double N = static_cast<double>(n);
  const double R = static_cast<double>(r);
  return std::max({shortfall(x[0] * x[1], N * N * R / P), shortfall(x[1] * x[2], N * R * R / P),
                   shortfall(x[0], N * N / P), shortfall(x[1], N * R / P),
                   shortfall(x[2], R * R / P)});
}

BoundResult lb_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p) {
  BoundResult out;
  out.case_id = randmatmul_case(n1, n2, r, p);
  const auto x = solve_opt_randmatmul(n1, n2, r, p);
  out.optimizer.assign(x.begin(), x.end());
  out.accessed = sum(x);
  out.owned = Rational(n1 * n2 + n1 * r, p);
  switch (out.case_id) {
    case 1: out.exact_words = Surd::of(Rational(0)); break;
    case 2: out.exact_words = Surd::of(Rational(r) - Rational(n1 * r, p)); break;
    default:
      out.exact_words = Surd{-out.owned, Rational(2), Rational(n1 * n2 * r, p)};
      break;
  }
  out.words = out.exact_words.to_double();
  return out;
}

BoundResult lb_nystrom(std::int64_t n, std::int64_t r, std::int64_t p) {
  BoundResult out;
  out.case_id = nystrom_case(n, r, p);
  const auto x = solve_opt_nystrom(n, r, p);
  out.optimizer.assign(x.begin(), x.end());
  out.accessed = sum(x);
  out.owned = Rational(n * n + n * r + r * r, p);
  switch (out.case_id) {
    case 1: out.exact_words = Surd::of(Rational(0)); break;
    case 2:
    case 3: out.exact_words = Surd::of(Rational(r) - Rational(r * r, p)); break;
    default:
      out.exact_words = Surd{-out.owned, Rational(2), Rational(n * r * (n + r), p)};
      break;
  }
  out.words = out.exact_words.to_double();
  return out;
}

bool grid_divides_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                             const GridSpec& grid) {
  return divides(grid.p1(), n1) && divides(grid.p2(), n2) && divides(grid.p3(), r);
}

bool grids_divide_nystrom(std::int64_t n, std::int64_t r, const GridSpec& first,
                          const GridSpec& second) {
  return grid_divides_randmatmul(n, n, r, first) && divides(second.p1(), n) &&
         divides(second.p2(), r) && divides(second.p3(), r);
}

CostPrediction model_cost_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                     const GridSpec& grid) {
  const std::int64_t p1 = grid.p1(), p2 = grid.p2(), p3 = grid.p3();
  CostPrediction out;
  out.breakdown.push_back(CostTerm{"allgather-A",
                                   collective_share(p3, Rational(n1 * n2, p1 * p2)),
                                   ceil_log2(static_cast<std::uint64_t>(p3))});
  out.breakdown.push_back(CostTerm{"reduce-scatter-B",
                                   collective_share(p2, Rational(n1 * r, p1 * p3)),
                                   ceil_log2(static_cast<std::uint64_t>(p2))});
  for (const auto& t : out.breakdown) {
    out.exact_bandwidth += t.words;
    out.latency_messages += t.latency;
  }
  out.bandwidth_words = out.exact_bandwidth.to_double();
  return out;
}

CostPrediction predicted_cost_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                         const GridSpec& grid) {
  if (!grid_divides_randmatmul(n1, n2, r, grid)) {
    throw std::invalid_argument("grid " + grid.to_string() + " does not divide (n1, n2, r) = (" +
                                std::to_string(n1) + ", " + std::to_string(n2) + ", " +
                                std::to_string(r) + ")");
  }
  return model_cost_randmatmul(n1, n2, r, grid);
}

CostPrediction model_cost_nystrom(std::int64_t n, std::int64_t r, const GridSpec& first,
                                  const GridSpec& second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("nystrom grids " + first.to_string() + " and " +
                                second.to_string() + " have different sizes");
  }
  const std::int64_t p1 = first.p1(), p2 = first.p2(), p3 = first.p3();
  const std::int64_t q1 = second.p1(), q2 = second.p2(), q3 = second.p3();
  const std::int64_t P = first.size();
  auto lg = [](std::int64_t q) { return ceil_log2(static_cast<std::uint64_t>(q)); };
  CostPrediction out;
  out.breakdown.push_back(
      CostTerm{"allgather-A", collective_share(p3, Rational(n * n, p1 * p2)), lg(p3)});
  out.breakdown.push_back(
      CostTerm{"reduce-scatter-B", collective_share(p2, Rational(n * r, p1 * p3)), lg(p2)});
  if (first != second) {
    out.breakdown.push_back(
        CostTerm{"redistribute-B", Rational(n * r, P), static_cast<std::uint64_t>(P - 1)});
  }
  out.breakdown.push_back(
      CostTerm{"allgather-B", collective_share(q2, Rational(n * r, q1 * q3)), lg(q2)});
  out.breakdown.push_back(
      CostTerm{"reduce-scatter-C", collective_share(q1, Rational(r * r, q2 * q3)), lg(q1)});
  for (const auto& t : out.breakdown) {
    out.exact_bandwidth += t.words;
    out.latency_messages += t.latency;
  }
  out.bandwidth_words = out.exact_bandwidth.to_double();
  return out;
}

CostPrediction predicted_cost_nystrom(std::int64_t n, std::int64_t r, const GridSpec& first,
                                      const GridSpec& second, NystromVariant variant) {
  if (variant == NystromVariant::noredist && first != second) {
    throw std::invalid_argument("noredist requires identical grids, got " + first.to_string() +
                                " and " + second.to_string());
  }
  if (!grids_divide_nystrom(n, r, first, second)) {
    throw std::invalid_argument("grids " + first.to_string() + " / " + second.to_string() +
                                " do not divide (n, r) = (" + std::to_string(n) + ", " +
                                std::to_string(r) + ")");
  }
  return model_cost_nystrom(n, r, first, second);
}

GridChoice select_grid_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r,
                                  std::int64_t p) {
  const int P = checked_int(p);
  const int case_id = randmatmul_case(n1, n2, r, p);

  std::optional<std::array<std::int64_t, 3>> formula;
  switch (case_id) {
    case 1: formula = std::array<std::int64_t, 3>{p, 1, 1}; break;
    case 2:
      if (auto p2 = integral(Rational(p, n1))) formula = std::array<std::int64_t, 3>{n1, *p2, 1};
      break;
    default: {
      auto p2 = integral_sqrt(Rational(p * n2, r * n1));
      auto p3 = integral_sqrt(Rational(p * r, n1 * n2));
      if (p2 && p3) formula = std::array<std::int64_t, 3>{n1, *p2, *p3};
      break;
    }
  }
  if (formula && (*formula)[0] * (*formula)[1] * (*formula)[2] == p) {
    GridSpec g(static_cast<int>((*formula)[0]), static_cast<int>((*formula)[1]),
               static_cast<int>((*formula)[2]));
    if (grid_divides_randmatmul(n1, n2, r, g)) return GridChoice{g, case_id, true, ""};
  }

  // Exhaustive search: divisible grids first, then lowest model cost, then
  // lexicographically smallest dims.
  std::optional<GridSpec> best;
  bool best_divides = false;
  Rational best_cost;
  for (const GridSpec& g : factor_triples(P)) {
    const bool d = grid_divides_randmatmul(n1, n2, r, g);
    const Rational c = model_cost_randmatmul(n1, n2, r, g).exact_bandwidth;
    if (!best || (d && !best_divides) || (d == best_divides && c < best_cost)) {
      best = g;
      best_divides = d;
      best_cost = c;
    }
  }
  std::string note = "case " + std::to_string(case_id) +
                     " closed-form grid is not an integral divisor of the problem; chose " +
                     best->to_string() + " by factor-triple search";
  if (!best_divides) note += " (no factor triple divides the problem)";
  return GridChoice{*best, case_id, false, note};
}

GridPairChoice select_grids_nystrom(std::int64_t n, std::int64_t r, std::int64_t p,
                                    NystromVariant variant) {
  const int P = checked_int(p);
  const int case_id = nystrom_case(n, r, p);

  if (variant == NystromVariant::noredist) {
    const GridChoice base = select_grid_randmatmul(n, n, r, p);
    if (grids_divide_nystrom(n, r, base.grid, base.grid)) {
      return GridPairChoice{base.grid, base.grid, case_id, base.from_formula, base.note};
    }
    std::optional<GridSpec> best;
    bool best_divides = false;
    Rational best_cost;
    for (const GridSpec& g : factor_triples(P)) {
      const bool d = grids_divide_nystrom(n, r, g, g);
      const Rational c = model_cost_nystrom(n, r, g, g).exact_bandwidth;
      if (!best || (d && !best_divides) || (d == best_divides && c < best_cost)) {
        best = g;
        best_divides = d;
        best_cost = c;
      }
    }
    std::string note = "sketch grid " + base.grid.to_string() +
                       " does not divide the second product; chose " + best->to_string() +
                       " by factor-triple search";
    if (!best_divides) note += " (no factor triple divides the problem)";
    return GridPairChoice{*best, *best, case_id, false, note};
  }

  using Dims = std::array<std::int64_t, 3>;
  std::optional<std::pair<Dims, Dims>> formula;
  std::string note;
  switch (case_id) {
    case 1: formula = std::pair{Dims{p, 1, 1}, Dims{1, 1, p}}; break;
    case 2:
      if (auto q1 = integral(Rational(p, r))) formula = std::pair{Dims{p, 1, 1}, Dims{*q1, 1, r}};
      break;
    case 3: {
      auto p2 = integral(Rational(p, n));
      auto q1 = integral(Rational(n, r));
      if (p2 && q1) formula = std::pair{Dims{n, *p2, 1}, Dims{*q1, *p2, r}};
      break;
    }
    default: {
      // q1 as printed carries an extra factor n/r, so the pair fails the
      // product check below and the search decides.
      auto p2 = integral_sqrt(Rational((n + r) * p, n * r));
      auto p3 = integral_sqrt(Rational(r * p, n * (n + r)));
      auto root = exact_sqrt(Rational(n * p, r * (n + r)));
      std::optional<std::int64_t> q1;
      if (root) q1 = integral(*root * Rational(n, r));
      if (p2 && p3 && q1) formula = std::pair{Dims{n, *p2, *p3}, Dims{*q1, *p2, r}};
      break;
    }
  }
  if (formula) {
    const auto& [a, b] = *formula;
    if (a[0] * a[1] * a[2] == p && b[0] * b[1] * b[2] == p) {
      GridSpec first(static_cast<int>(a[0]), static_cast<int>(a[1]), static_cast<int>(a[2]));
      GridSpec second(static_cast<int>(b[0]), static_cast<int>(b[1]), static_cast<int>(b[2]));
      if (grids_divide_nystrom(n, r, first, second)) {
        return GridPairChoice{first, second, case_id, true, ""};
      }
      note = "case " + std::to_string(case_id) + " closed-form grids " + first.to_string() +
             " / " + second.to_string() + " do not divide the problem";
    } else {
      note = "case " + std::to_string(case_id) + " closed-form grids have products " +
             std::to_string(a[0] * a[1] * a[2]) + " and " + std::to_string(b[0] * b[1] * b[2]) +
             ", not P=" + std::to_string(p);
    }
  } else {
    note = "case " + std::to_string(case_id) + " closed-form grids are not integral";
  }

  const auto triples = factor_triples(P);
  std::optional<std::pair<GridSpec, GridSpec>> best;
  bool best_divides = false;
  Rational best_cost;
  for (const GridSpec& a : triples) {
    for (const GridSpec& b : triples) {
      const bool d = grids_divide_nystrom(n, r, a, b);
      if (best_divides && !d) continue;
      const Rational c = model_cost_nystrom(n, r, a, b).exact_bandwidth;
      if (!best || (d && !best_divides) || (d == best_divides && c < best_cost)) {
        best = std::pair{a, b};
        best_divides = d;
        best_cost = c;
      }
    }
  }
  note += "; chose " + best->first.to_string() + " / " + best->second.to_string() +
          " by factor-triple search";
  if (!best_divides) note += " (no pair of factor triples divides the problem)";
  return GridPairChoice{best->first, best->second, case_id, false, note};
}

ProjectionVerdict projection_inequality_oracle(std::span<const LatticePoint> points) {
  std::set<LatticePoint> v(points.begin(), points.end());
  std::set<std::pair<std::int64_t, std::int64_t>> ij, jk, ki;
  for (const auto& p : v) {
    ij.emplace(p[0], p[1]);
    jk.emplace(p[1], p[2]);
    ki.emplace(p[2], p[0]);
  }
  ProjectionVerdict out;
  out.points = v.size();
  out.ij = ij.size();
  out.jk = jk.size();
  out.ki = ki.size();
  out.holds = out.points <= out.ij * out.jk && out.points <= out.jk * out.ki &&
              out.points <= out.ki * out.ij;
  return out;
}

}  // namespace sketchcomm
