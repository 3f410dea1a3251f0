// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

namespace {

constexpr int kPoints = 200;
constexpr int kRefinements = 80;

// Minimizes f over [lo, hi] by grid search on log-spaced points, narrowing
// the bracket to the neighbours of the best point each round.
double minimize_1d(const std::function<double(double)>& f, double lo, double hi) {
  if (hi <= lo) return lo;
  double best_x = lo;
  double best_f = f(lo);
  for (int round = 0; round < kRefinements; ++round) {
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    const double step = (lhi - llo) / (kPoints - 1);
    int best_i = 0;
    double round_f = f(lo);
    for (int i = 0; i < kPoints; ++i) {
      const double x = i == kPoints - 1 ? hi : std::exp(llo + step * i);
      const double v = f(x);
      if (v < round_f) {
        round_f = v;
        best_i = i;
      }
    }
    const double x_best = best_i == kPoints - 1 ? hi : std::exp(llo + step * best_i);
    if (round_f < best_f) {
      best_f = round_f;
      best_x = x_best;
    }
    const double new_lo = std::exp(llo + step * std::max(0, best_i - 1));
    const double new_hi = std::exp(llo + step * std::min(kPoints - 1, best_i + 1));
    if (!(new_hi > new_lo) || (new_hi - new_lo) <= 1e-15 * new_hi) break;
    lo = std::max(lo, new_lo);
    hi = std::min(hi, new_hi);
  }
  return best_x;
}

}  // namespace

SearchResult search_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p) {
  const double P = static_cast<double>(p);
  const double area = static_cast<double>(n1) * n2 * r / P;
  const double a = static_cast<double>(n1) * n2 / P;
  const double b = static_cast<double>(n1) * r / P;
  auto x2_of = [&](double x1) { return std::max(b, area / x1); };
  auto f = [&](double x1) { return x1 + x2_of(x1); };
  // Past area/b the second coordinate sits at its floor and the objective only grows.
  const double hi = std::max(a, area / b) * 1.5;
  const double x1 = minimize_1d(f, a, hi);
  return SearchResult{f(x1), {x1, x2_of(x1)}};
}

SearchResult search_nystrom(std::int64_t n, std::int64_t r, std::int64_t p) {
  const double P = static_cast<double>(p);
  const double N = static_cast<double>(n);
  const double R = static_cast<double>(r);
  auto x1_of = [&](double x2) { return std::max(N * N / P, N * N * R / (P * x2)); };
  auto x3_of = [&](double x2) { return std::max(R * R / P, N * R * R / (P * x2)); };
  auto f = [&](double x2) { return x1_of(x2) + x2 + x3_of(x2); };
  const double lo = N * R / P;
  const double hi = std::max({lo, N, R}) * 1.5;
  const double x2 = minimize_1d(f, lo, hi);
  return SearchResult{f(x2), {x1_of(x2), x2, x3_of(x2)}};
}

}  // namespace oracle
