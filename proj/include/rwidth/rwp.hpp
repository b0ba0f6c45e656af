#pragma once

#include <cstdint>

#include "rwidth/solvers.hpp"
#include "rwidth/types.hpp"

namespace rwidth {

// Robust width certification: lower/upper bounds on
//   inf { |Phi x|_2 / |x|_2 : |x|_2 >= rho |x|_1, x != 0 }.
// The lower bound comes from a deterministic covering net of the sphere and
// is sound for every vector in the cone; the upper bound from feasible
// witnesses found by multistart projected descent.

enum class CertMethod { net, column_enum, heuristic_only };

const char* to_string(CertMethod m);

struct RwpCertificate {
  double rho;
  double alpha_lower;  // certified
  double alpha_upper;  // heuristic witness value
  double net_delta;    // covering radius used (0 when no net was run)
  CertMethod method;
  bool vacuous;  // no net point passed the cone test at this resolution
};

struct NetBound {
  double alpha_lower;
  bool vacuous;
  std::uint64_t points_total;
  std::uint64_t points_in_cone;
  double pitch;  // grid pitch used on the cube surface
};

// Sound lower bound via a grid on the cube surface, radially projected to
// the sphere. Covering radius <= delta by construction; every net point
// within the relaxed cone test rho|p|_1 <= 1 + rho sqrt(n) delta is
// evaluated and the Lipschitz correction sigma_max * delta is subtracted.
// Refuses n > 5 (net size is exponential in n).
NetBound certify_alpha_lower(const SensingMatrix& phi, double rho,
                             double delta);

// Upper bound on the cone infimum: multistart projected descent of
// |Phi x|_2^2, alternating l1-ball shrinkage and sphere normalization.
// Every recorded witness satisfies the cone condition exactly.
double estimate_alpha_upper(const SensingMatrix& phi, double rho, int restarts,
                            std::uint64_t seed);

// Net certificate plus heuristic upper bound in one record.
RwpCertificate certify_rwp(const SensingMatrix& phi, double rho, double delta,
                           int restarts = 20, std::uint64_t seed = 0);

// Heuristic-only certificate (alpha_lower = 0); the only option for n > 5.
RwpCertificate heuristic_rwp(const SensingMatrix& phi, double rho,
                             int restarts = 20, std::uint64_t seed = 0);

// l1-constrained minimal singular value over S_k = {|x|_1 <= sqrt(k)|x|_2},
// i.e. the robust width gain at rho = 1/sqrt(k).
struct CmsvEstimate {
  Index k;
  double r_lower;  // certified
  double r_upper;  // heuristic
};

enum class CmsvMode { exact_k1, net, heuristic };

struct CmsvParams {
  double delta = 0.02;
  int restarts = 20;
  std::uint64_t seed = 0;
};

CmsvEstimate l1_cmsv(const SensingMatrix& phi, Index k, CmsvMode mode,
                     const CmsvParams& params = {});

// sup over the l1 unit ball of |Phi x|_2 = the largest column l2 norm
// (the supremum of a convex function over a polytope sits at a vertex).
double max_gain_sharp_ball(const SensingMatrix& phi);

enum class WitnessVerdict { consistent, violates };

// Checks whether x witnesses failure of the (rho, alpha) robust width
// property. Evaluates both logically equivalent forms of the property and
// insists they agree.
WitnessVerdict rwp_violation_witness(const SensingMatrix& phi, double rho,
                                     double alpha, const Vector& x);

// Euclidean projection onto {|x|_1 <= radius} (soft threshold at the
// exact level found by sorting).
Vector project_l1_ball(const Vector& v, double radius);

}  // namespace rwidth
