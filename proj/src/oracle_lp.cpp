#include "rwidth/oracle_lp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "rwidth/space.hpp"

namespace rwidth {

namespace {

// All size-s index subsets of {0..n-1}, in lexicographic order.
void subsets(Index n, Index s, std::vector<std::vector<Index>>& out) {
  std::vector<Index> cur(std::size_t(s));
  // iterative combination walk
  for (Index i = 0; i < s; ++i) cur[std::size_t(i)] = i;
  if (s == 0) {
    out.push_back({});
    return;
  }
  while (true) {
    out.push_back(cur);
    Index i = s - 1;
    while (i >= 0 && cur[std::size_t(i)] == n - s + i) --i;
    if (i < 0) break;
    ++cur[std::size_t(i)];
    for (Index j = i + 1; j < s; ++j)
      cur[std::size_t(j)] = cur[std::size_t(j - 1)] + 1;
  }
}

bool lex_less(const Vector& a, const Vector& b, double tol) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return false;
}

}  // namespace

DantzigOracleResult oracle_dantzig_lp(const SensingMatrix& phi,
                                      const Vector& y, double lambda) {
  const Index n = phi.cols();
  require(n <= 8, "oracle restricted to n <= 8");
  require(lambda > 0.0, "lambda must be positive");
  require(phi.rows() == y.size(), "dimension mismatch");

  const Matrix gram = phi.entries().transpose() * phi.entries();
  const Vector b = phi.entries().transpose() * y;
  const double scale = std::max({1.0, dual_norm(b), lambda});
  const double feas_tol = 1e-9 * scale;
  const double obj_tie = 1e-9;

  DantzigOracleResult best{false, Vector::Zero(n),
                           std::numeric_limits<double>::infinity()};
  auto consider = [&](const Vector& x) {
    if (dual_norm(gram * x - b) > lambda + feas_tol) return;
    double obj = sharp_norm(x);
    if (!best.feasible || obj < best.objective - obj_tie) {
      best = {true, x, obj};
    } else if (obj <= best.objective + obj_tie) {
      if (lex_less(x, best.x, 1e-12)) best.x = x;
      best.objective = std::min(best.objective, obj);
    }
  };

  consider(Vector::Zero(n));

  for (Index s = 1; s <= n; ++s) {
    std::vector<std::vector<Index>> supps, rows;
    subsets(n, s, supps);
    rows = supps;
    const Index nsigns = Index(1) << s;
    Matrix m(s, s);
    Vector rhs(s);
    for (const auto& supp : supps) {
      for (const auto& act : rows) {
        for (Index ti = 0; ti < s; ++ti)
          for (Index si = 0; si < s; ++si)
            m(ti, si) = gram(act[std::size_t(ti)], supp[std::size_t(si)]);
        Eigen::FullPivLU<Matrix> lu(m);
        if (!lu.isInvertible()) continue;
        for (Index mask = 0; mask < nsigns; ++mask) {
          for (Index ti = 0; ti < s; ++ti) {
            double side = (mask >> ti) & 1 ? 1.0 : -1.0;
            rhs[ti] = b[act[std::size_t(ti)]] + lambda * side;
          }
          Vector xs = lu.solve(rhs);
          if (!xs.allFinite()) continue;
          Vector x = Vector::Zero(n);
          for (Index si = 0; si < s; ++si) x[supp[std::size_t(si)]] = xs[si];
          consider(x);
        }
      }
    }
  }

  if (!best.feasible) best.objective = std::numeric_limits<double>::quiet_NaN();
  return best;
}

}  // namespace rwidth
