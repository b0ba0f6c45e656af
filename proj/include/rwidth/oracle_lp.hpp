#pragma once

#include "rwidth/solvers.hpp"
#include "rwidth/types.hpp"

namespace rwidth {

struct DantzigOracleResult {
  bool feasible;
  Vector x;        // exact minimizer (lexicographically smallest among ties)
  double objective;
};

// Exact tiny-scale Dantzig solution by exhaustive enumeration of the basic
// feasible points of the split-variable LP: every vertex is pinned by a
// support set S, an equally sized set of active constraint rows T, and the
// active sides; the square subsystem G[T,S] x_S = b_T +/- lambda determines
// it. Cost grows combinatorially; restricted to n <= 8.
DantzigOracleResult oracle_dantzig_lp(const SensingMatrix& phi,
                                      const Vector& y, double lambda);

}  // namespace rwidth
