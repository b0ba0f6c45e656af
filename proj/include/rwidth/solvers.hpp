#pragma once

#include <vector>

#include "rwidth/types.hpp"

namespace rwidth {

// Dense sensing operator with its squared spectral norm cached at
// construction (power iteration on Phi^T Phi).
class SensingMatrix {
 public:
  explicit SensingMatrix(Matrix entries);

  const Matrix& entries() const { return entries_; }
  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  double spectral_norm_sq() const { return spectral_norm_sq_; }
  double spectral_norm() const;

 private:
  Matrix entries_;
  double spectral_norm_sq_;
};

struct SolverOptions {
  int max_iters = 50000;
  double tol_kkt = 1e-8;   // relative KKT tolerance
  double tol_obj = 1e-12;  // relative objective-change stall threshold
  // When set, the solver appends the objective value of every accepted
  // iterate (diagnostics; used by the monotonicity tests).
  std::vector<double>* objective_trace = nullptr;
};

void validate(const SolverOptions& opts);

struct OptimalityReport {
  Model model;
  double dual_feas_margin;       // lasso: lambda - |Phi^T(y - Phi x)|_inf
                                 // dantzig: lambda - |Phi^T(Phi x - y)|_inf
  double support_stationarity;   // lasso only; 0 for dantzig
  double objective;
  int iterations;
};

struct SolveResult {
  Vector x;
  OptimalityReport report;
  bool converged;
  double kkt_residual;  // relative residual at the returned iterate
};

// Coordinate-wise shrinkage sign(v_i) * max(|v_i| - t, 0).
Vector soft_threshold(const Vector& v, double t);

// min 1/2 |Phi x - y|_2^2 + lambda |x|_1 via accelerated proximal gradient
// with a function-value safeguard (falls back to the plain proximal step
// whenever acceleration would increase the objective). Starts from the
// better of zero and the warm start, so the returned objective is <= both.
SolveResult solve_lasso(const SensingMatrix& phi, const Vector& y,
                        double lambda, const SolverOptions& opts = {},
                        const Vector* warm_start = nullptr);

// min |x|_1 subject to |Phi^T(Phi x - y)|_inf <= lambda via a first-order
// primal-dual method on the LP form, with a duality-gap stopping test and
// a vertex polish step for high-accuracy solutions.
SolveResult solve_dantzig(const SensingMatrix& phi, const Vector& y,
                          double lambda, const SolverOptions& opts = {});

// Pure diagnostic; never mutates x. support_tol thresholds which entries
// count as support for the stationarity term (0 = exact nonzeros).
OptimalityReport optimality_report(Model model, const SensingMatrix& phi,
                                   const Vector& y, double lambda,
                                   const Vector& x, double support_tol = 0.0);

double lasso_objective(const SensingMatrix& phi, const Vector& y,
                       double lambda, const Vector& x);

}  // namespace rwidth
