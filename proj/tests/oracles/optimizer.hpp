// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

struct SearchResult {
  double objective = 0.0;
  std::vector<double> x;
};

// Numerical minimizers of the two lower-bound programs. For a fixed value of
// the searched coordinate every other coordinate is pushed to the smallest
// value its constraints allow, which leaves a one-dimensional problem. That
// is searched on a 200-point logarithmic grid that is repeatedly narrowed
// around the best point.

/// min x1 + x2 s.t. x1 x2 ≥ n1 n2 r/P, x1 ≥ n1 n2/P, x2 ≥ n1 r/P.
SearchResult search_randmatmul(std::int64_t n1, std::int64_t n2, std::int64_t r, std::int64_t p);

/// min x1 + x2 + x3 s.t. x1 x2 ≥ n²r/P, x2 x3 ≥ n r²/P, x1 ≥ n²/P, x2 ≥ nr/P, x3 ≥ r²/P.
SearchResult search_nystrom(std::int64_t n, std::int64_t r, std::int64_t p);

}  // namespace oracle
