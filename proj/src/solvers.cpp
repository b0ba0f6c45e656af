#include "rwidth/solvers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "rwidth/rng.hpp"
#include "rwidth/space.hpp"

namespace rwidth {

namespace {

// Largest squared singular value by power iteration on Phi^T Phi.
double power_iteration_norm_sq(const Matrix& a) {
  const Index n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;
  Rng rng(0x5eedULL ^ (std::uint64_t(a.rows()) << 32) ^ std::uint64_t(n));
  Vector v = rng.gaussian_vector(n);
  if (v.norm() == 0.0) v = Vector::Ones(n);
  v /= v.norm();
  double rayleigh = (a * v).squaredNorm();
  for (int it = 0; it < 10000; ++it) {
    Vector w = a.transpose() * (a * v);
    double wn = w.norm();
    if (wn == 0.0) return 0.0;  // v in the null space; a may still be 0
    v = w / wn;
    double next = (a * v).squaredNorm();
    if (std::abs(next - rayleigh) <= 1e-13 * std::max(1.0, next) && it > 2) {
      rayleigh = next;
      break;
    }
    rayleigh = next;
  }
  return rayleigh;
}

double dantzig_feasibility(const Matrix& gram, const Vector& b,
                           const Vector& x) {
  return dual_norm(gram * x - b);
}

}  // namespace

SensingMatrix::SensingMatrix(Matrix entries) : entries_(std::move(entries)) {
  require(entries_.rows() >= 1 && entries_.cols() >= 1,
          "sensing matrix must be at least 1x1");
  require(all_finite(entries_), "sensing matrix entries must be finite");
  spectral_norm_sq_ = power_iteration_norm_sq(entries_);
}

double SensingMatrix::spectral_norm() const {
  return std::sqrt(spectral_norm_sq_);
}

void validate(const SolverOptions& opts) {
  require(opts.max_iters >= 1, "max_iters must be >= 1");
  require(opts.tol_kkt > 0.0 && opts.tol_kkt < 1.0, "tol_kkt must be in (0,1)");
  require(opts.tol_obj > 0.0 && opts.tol_obj < 1.0, "tol_obj must be in (0,1)");
}

Vector soft_threshold(const Vector& v, double t) {
  require(t >= 0.0, "threshold must be nonnegative");
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    double m = std::abs(v[i]) - t;
    out[i] = m > 0.0 ? (v[i] > 0.0 ? m : -m) : 0.0;
  }
  return out;
}

double lasso_objective(const SensingMatrix& phi, const Vector& y,
                       double lambda, const Vector& x) {
  return 0.5 * (phi.entries() * x - y).squaredNorm() + lambda * sharp_norm(x);
}

OptimalityReport optimality_report(Model model, const SensingMatrix& phi,
                                   const Vector& y, double lambda,
                                   const Vector& x, double support_tol) {
  require(phi.rows() == y.size() && phi.cols() == x.size(),
          "dimension mismatch");
  OptimalityReport rep{};
  rep.model = model;
  rep.iterations = 0;
  if (model == Model::lasso) {
    Vector g = phi.entries().transpose() * (y - phi.entries() * x);
    rep.dual_feas_margin = lambda - dual_norm(g);
    double xmax = dual_norm(x);
    double stat = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) > support_tol * xmax && x[i] != 0.0)
        stat = std::max(stat, std::abs(g[i] - lambda * (x[i] > 0 ? 1. : -1.)));
    }
    rep.support_stationarity = stat;
    rep.objective = lasso_objective(phi, y, lambda, x);
  } else {
    Vector r = phi.entries().transpose() * (phi.entries() * x - y);
    rep.dual_feas_margin = lambda - dual_norm(r);
    rep.support_stationarity = 0.0;
    rep.objective = sharp_norm(x);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lasso

namespace {

struct LassoKkt {
  double residual;  // relative to lambda
  bool ok;
};

LassoKkt lasso_kkt(const Matrix& a, const Vector& y, double lambda,
                   const Vector& x, double tol) {
  Vector g = a.transpose() * (y - a * x);
  double dual_excess = std::max(0.0, dual_norm(g) - lambda);
  double xmax = dual_norm(x);
  double stat = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > tol * xmax && x[i] != 0.0)
      stat = std::max(stat, std::abs(g[i] - lambda * (x[i] > 0 ? 1. : -1.)));
  }
  double res = std::max(dual_excess, stat) / lambda;
  return {res, res <= tol};
}

}  // namespace

SolveResult solve_lasso(const SensingMatrix& phi, const Vector& y,
                        double lambda, const SolverOptions& opts,
                        const Vector* warm_start) {
  validate(opts);
  require(lambda > 0.0, "lambda must be positive");
  require(phi.rows() == y.size(), "dimension mismatch");
  require(all_finite(y), "y must be finite");
  const Matrix& a = phi.entries();
  const Index n = phi.cols();

  auto finish = [&](Vector x, int iters, double res, bool ok) {
    OptimalityReport rep =
        optimality_report(Model::lasso, phi, y, lambda, x, opts.tol_kkt);
    rep.iterations = iters;
    return SolveResult{std::move(x), rep, ok, res};
  };

  Vector x = Vector::Zero(n);
  double fx = lasso_objective(phi, y, lambda, x);
  if (warm_start != nullptr) {
    require(warm_start->size() == n, "warm start dimension mismatch");
    double fw = lasso_objective(phi, y, lambda, *warm_start);
    if (fw < fx) {
      x = *warm_start;
      fx = fw;
    }
  }

  double lip = phi.spectral_norm_sq();
  if (lip == 0.0)  // Phi = 0: objective is 1/2|y|^2 + lambda |x|_1
    return finish(Vector::Zero(n), 0, 0.0, true);

  {
    LassoKkt k0 = lasso_kkt(a, y, lambda, x, opts.tol_kkt);
    if (k0.ok) return finish(x, 0, k0.residual, true);
  }

  Vector z = x;  // extrapolated point
  Vector x_prev = x;
  double t = 1.0;
  double best_res = std::numeric_limits<double>::infinity();
  Vector best_x = x;
  int stall = 0;

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    Vector g = a.transpose() * (a * z - y);
    Vector xc = soft_threshold(z - g / lip, lambda / lip);
    double fc = lasso_objective(phi, y, lambda, xc);

    if (fc > fx) {
      // Safeguard: plain proximal step from the last accepted iterate.
      Vector gx = a.transpose() * (a * x - y);
      xc = soft_threshold(x - gx / lip, lambda / lip);
      fc = lasso_objective(phi, y, lambda, xc);
      int grow = 0;
      while (fc > fx && grow < 60) {
        lip *= 2.0;  // step was too long for the local curvature
        xc = soft_threshold(x - gx / lip, lambda / lip);
        fc = lasso_objective(phi, y, lambda, xc);
        ++grow;
      }
      t = 1.0;
      z = xc;
    } else {
      double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      z = xc + ((t - 1.0) / t_next) * (xc - x);
      t = t_next;
    }

    x_prev.swap(x);
    x = xc;
    if (opts.objective_trace != nullptr) opts.objective_trace->push_back(fc);

    LassoKkt k = lasso_kkt(a, y, lambda, x, opts.tol_kkt);
    if (k.residual < best_res) {
      best_res = k.residual;
      best_x = x;
    }
    if (k.ok) return finish(x, iter, k.residual, true);

    if (std::abs(fx - fc) <= opts.tol_obj * std::max(1.0, std::abs(fc)))
      ++stall;
    else
      stall = 0;
    fx = fc;
    if (stall >= 50) break;  // objective flat but KKT unmet: give up early
  }
  return finish(best_x, opts.max_iters, best_res, false);
}

// ---------------------------------------------------------------------------
// Dantzig selector
//
// Primal:  min |x|_1  s.t.  |G x - b|_inf <= lambda,  G = Phi^T Phi, b = Phi^T y
// Dual:    max -<p, b> - lambda |p|_1  s.t.  |G p|_inf <= 1
// The gap between a feasible primal/dual pair bounds the objective error.

namespace {

struct DualEval {
  double value;
};

double dantzig_dual_value(const Matrix& gram, const Vector& b, double lambda,
                          const Vector& p) {
  double feas = dual_norm(gram * p);
  Vector q = feas > 1.0 ? Vector(p / feas) : p;
  return -q.dot(b) - lambda * sharp_norm(q);
}

// Pull an almost-feasible point back inside the constraint box by blending
// toward a strictly feasible anchor (the least-squares solution, whose
// residual correlation vanishes).
Vector restore_feasible(const Matrix& gram, const Vector& b, double lambda,
                        const Vector& x, const Vector& x_anchor) {
  double h = dantzig_feasibility(gram, b, x);
  if (h <= lambda) return x;
  double h_anchor = dantzig_feasibility(gram, b, x_anchor);
  if (h_anchor >= lambda) return x_anchor;  // should not happen; best effort
  double gamma = (h - lambda) / (h - h_anchor);
  gamma = std::min(1.0, gamma * (1.0 + 1e-12) + 1e-15);
  return (1.0 - gamma) * x + gamma * x_anchor;
}

// Crossover to a vertex: solve the square system picked out by the current
// support and active constraints, then certify it with an exact dual point.
// Returns true and fills x_out on success.
bool polish_vertex(const Matrix& gram, const Vector& b, double lambda,
                   const Vector& x, const Vector& p, Vector& x_out,
                   double& gap_out) {
  const Index n = gram.rows();
  double xmax = dual_norm(x);
  if (xmax == 0.0) return false;
  std::vector<Index> supp, active;
  for (Index i = 0; i < n; ++i)
    if (std::abs(x[i]) > 1e-9 * std::max(1.0, xmax)) supp.push_back(i);
  Vector r = gram * x - b;
  for (Index j = 0; j < n; ++j)
    if (std::abs(r[j]) >= lambda * (1.0 - 1e-7)) active.push_back(j);
  const Index s = Index(supp.size());
  if (s == 0 || Index(active.size()) < s) return false;

  // Prefer the s active rows with the largest dual weight.
  std::vector<Index> rows = active;
  if (Index(rows.size()) > s) {
    std::stable_sort(rows.begin(), rows.end(), [&](Index i, Index j) {
      return std::abs(p[i]) > std::abs(p[j]);
    });
    rows.resize(std::size_t(s));
  }

  Matrix m(s, s);
  Vector rhs(s);
  for (Index ti = 0; ti < s; ++ti) {
    for (Index si = 0; si < s; ++si) m(ti, si) = gram(rows[std::size_t(ti)], supp[std::size_t(si)]);
    double side = r[rows[std::size_t(ti)]] > 0 ? 1.0 : -1.0;
    rhs[ti] = b[rows[std::size_t(ti)]] + lambda * side;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
  Vector xs = cod.solve(rhs);
  Vector cand = Vector::Zero(n);
  for (Index si = 0; si < s; ++si) cand[supp[std::size_t(si)]] = xs[si];
  if (!all_finite(cand)) return false;
  if (dantzig_feasibility(gram, b, cand) > lambda * (1.0 + 1e-9)) return false;

  // Dual candidate supported on the chosen rows: (G q)_S = -sign(x_S).
  Matrix md(s, s);
  Vector sgn(s);
  for (Index si = 0; si < s; ++si) {
    for (Index ti = 0; ti < s; ++ti)
      md(si, ti) = gram(supp[std::size_t(si)], rows[std::size_t(ti)]);
    sgn[si] = cand[supp[std::size_t(si)]] >= 0 ? -1.0 : 1.0;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> codd(md);
  Vector qt = codd.solve(sgn);
  Vector q = Vector::Zero(n);
  for (Index ti = 0; ti < s; ++ti) q[rows[std::size_t(ti)]] = qt[ti];
  if (!all_finite(q)) return false;
  double dval = dantzig_dual_value(gram, b, lambda, q);
  double obj = sharp_norm(cand);
  double gap = obj - dval;
  if (gap <= 1e-10 * std::max(1.0, obj)) {
    x_out = std::move(cand);
    gap_out = std::max(gap, 0.0);
    return true;
  }
  return false;
}

}  // namespace

SolveResult solve_dantzig(const SensingMatrix& phi, const Vector& y,
                          double lambda, const SolverOptions& opts) {
  validate(opts);
  require(lambda > 0.0, "lambda must be positive");
  require(phi.rows() == y.size(), "dimension mismatch");
  require(all_finite(y), "y must be finite");
  const Index n = phi.cols();

  auto finish = [&](Vector x, int iters, double res, bool ok) {
    OptimalityReport rep =
        optimality_report(Model::dantzig, phi, y, lambda, x, opts.tol_kkt);
    rep.iterations = iters;
    return SolveResult{std::move(x), rep, ok, res};
  };

  const Vector b = phi.entries().transpose() * y;
  if (dual_norm(b) <= lambda)  // zero is feasible, and |x|_1 >= 0
    return finish(Vector::Zero(n), 0, 0.0, true);

  const Matrix gram = phi.entries().transpose() * phi.entries();
  const double gnorm = phi.spectral_norm_sq();

  // Minimum-norm least-squares point: its residual is orthogonal to the
  // range of Phi, so Phi^T(Phi x_ls - y) = 0 up to roundoff. Used both as
  // a strictly feasible anchor and as the starting iterate.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(phi.entries());
  const Vector x_ls = cod.solve(y);
  if (dantzig_feasibility(gram, b, x_ls) > lambda)
    return finish(Vector::Zero(n), 0,
                  dantzig_feasibility(gram, b, Vector::Zero(n)) / lambda,
                  false);  // no feasible point found: report evidence

  const double step = 0.98 / gnorm;  // primal and dual steps; product < 1/|G|^2
  Vector x = x_ls;
  Vector xbar = x;
  Vector p = Vector::Zero(n);
  Vector best_x = x;
  double best_gap = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    p = soft_threshold(p + step * (gram * xbar - b), step * lambda);
    Vector x_next = soft_threshold(x - step * (gram * p), step);
    xbar = 2.0 * x_next - x;
    x = std::move(x_next);

    const bool check = (iter % 16 == 0) || iter == opts.max_iters;
    if (!check) continue;

    Vector xf = restore_feasible(gram, b, lambda, x, x_ls);
    double obj = sharp_norm(xf);
    double dval = dantzig_dual_value(gram, b, lambda, p);
    double gap = obj - dval;
    double rel = gap / std::max(1.0, obj);
    if (gap < best_gap) {
      best_gap = gap;
      best_x = xf;
    }
    if (rel <= opts.tol_kkt) return finish(xf, iter, rel, true);

    if (iter % 128 == 0) {
      Vector polished;
      double pgap = 0.0;
      if (polish_vertex(gram, b, lambda, x, p, polished, pgap)) {
        double prel = pgap / std::max(1.0, sharp_norm(polished));
        if (prel <= opts.tol_kkt) return finish(polished, iter, prel, true);
      }
    }
  }
  return finish(best_x, opts.max_iters,
                best_gap / std::max(1.0, sharp_norm(best_x)), false);
}

}  // namespace rwidth
