#include "rwidth/rwp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rwidth/rng.hpp"
#include "rwidth/space.hpp"

namespace rwidth {

const char* to_string(CertMethod m) {
  switch (m) {
    case CertMethod::net: return "net";
    case CertMethod::column_enum: return "column_enum";
    case CertMethod::heuristic_only: return "heuristic_only";
  }
  return "?";
}

NetBound certify_alpha_lower(const SensingMatrix& phi, double rho,
                             double delta) {
  const Index n = phi.cols();
  require(n <= 5, "net certification limited to n <= 5; use heuristic_rwp");
  require(rho > 0.0, "rho must be positive");
  require(delta > 0.0 && delta < 1.0, "delta must be in (0,1)");

  const Matrix gram = phi.entries().transpose() * phi.entries();
  const double sigma_max = phi.spectral_norm();
  const double sqrt_n = std::sqrt(double(n));
  const double cone_rhs = 1.0 + rho * sqrt_n * delta;

  double min_gain_sq = std::numeric_limits<double>::infinity();
  std::uint64_t total = 0, in_cone = 0;
  Vector u(n);

  auto visit = [&](const Vector& point) {
    ++total;
    const double n2 = point.norm();
    const double l1 = point.lpNorm<1>() / n2;
    if (rho * l1 > cone_rhs) return;
    ++in_cone;
    const double gain_sq = point.dot(gram * point) / (n2 * n2);
    if (gain_sq < min_gain_sq) min_gain_sq = gain_sq;
  };

  double pitch = 0.0;
  if (n == 1) {
    // The sphere is {-1, +1}; the net is exact.
    u[0] = 1.0;
    visit(u);
    u[0] = -1.0;
    visit(u);
  } else {
    // Axis grid on each cube face; radial projection is 1-Lipschitz from
    // the cube surface, so pitch h = 2 delta / sqrt(n-1) covers the sphere
    // with radius delta.
    pitch = 2.0 * delta / std::sqrt(double(n - 1));
    const Index cells = Index(std::ceil(2.0 / pitch));
    std::vector<double> grid(std::size_t(cells));
    for (Index i = 0; i < cells; ++i)
      grid[std::size_t(i)] = -1.0 + 0.5 * pitch + double(i) * pitch;

    std::vector<Index> odo(std::size_t(n - 1), 0);
    for (Index axis = 0; axis < n; ++axis) {
      for (int side = 0; side < 2; ++side) {
        std::fill(odo.begin(), odo.end(), Index{0});
        while (true) {
          Index pos = 0;
          for (Index i = 0; i < n; ++i) {
            if (i == axis)
              u[i] = side == 0 ? 1.0 : -1.0;
            else
              u[i] = grid[std::size_t(odo[std::size_t(pos++)])];
          }
          visit(u);
          Index c = 0;
          while (c < n - 1 && ++odo[std::size_t(c)] == cells) {
            odo[std::size_t(c)] = 0;
            ++c;
          }
          if (c == n - 1) break;
        }
      }
    }
  }

  NetBound out{};
  out.pitch = pitch;
  out.points_total = total;
  out.points_in_cone = in_cone;
  out.vacuous = in_cone == 0;
  out.alpha_lower =
      out.vacuous ? 0.0
                  : std::max(0.0, std::sqrt(std::max(0.0, min_gain_sq)) -
                                      sigma_max * delta);
  return out;
}

Vector project_l1_ball(const Vector& v, double radius) {
  require(radius > 0.0, "radius must be positive");
  if (v.lpNorm<1>() <= radius) return v;
  std::vector<double> mags(std::size_t(v.size()));
  for (Index i = 0; i < v.size(); ++i) mags[std::size_t(i)] = std::abs(v[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cum += mags[j];
    double cand = (cum - radius) / double(j + 1);
    if (j + 1 == mags.size() || mags[j + 1] <= cand) {
      theta = cand;
      break;
    }
  }
  return soft_threshold(v, std::max(0.0, theta));
}

namespace {

// Smallest right singular direction; a good descent seed when Phi has a
// (near-)null space.
Vector min_singular_direction(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinV | Eigen::ComputeThinU);
  const auto& v = svd.matrixV();
  if (v.cols() == 0) return Vector();
  if (a.rows() >= a.cols()) return v.col(v.cols() - 1);
  // Wide matrix: thin V misses the null space; take a full decomposition.
  Eigen::BDCSVD<Matrix> full(a, Eigen::ComputeFullV);
  return full.matrixV().col(a.cols() - 1);
}

}  // namespace

double estimate_alpha_upper(const SensingMatrix& phi, double rho, int restarts,
                            std::uint64_t seed) {
  require(restarts >= 1, "restarts must be >= 1");
  require(rho > 0.0, "rho must be positive");
  const Index n = phi.cols();
  const Matrix& a = phi.entries();
  if (rho > 1.0)  // no unit vector satisfies rho|x|_1 <= 1: cone is {0}
    return std::numeric_limits<double>::infinity();

  const double radius = 1.0 / rho;
  const double gnorm = std::max(phi.spectral_norm_sq(), 1e-300);
  double best = std::numeric_limits<double>::infinity();

  auto record = [&](const Vector& x) {
    const double n2 = x.norm();
    if (n2 == 0.0) return;
    if (rho * x.lpNorm<1>() <= n2)  // exact cone membership, sound witness
      best = std::min(best, (a * x).norm() / n2);
  };

  // Coordinate directions are always in the cone for rho <= 1.
  for (Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    record(e);
  }

  Rng rng(seed ^ 0xa1fa);
  Vector vmin = min_singular_direction(a);

  for (int r = 0; r < restarts; ++r) {
    Vector x;
    if (r == 0 && vmin.size() == n)
      x = vmin;
    else
      x = rng.unit_vector(n);
    for (int it = 0; it < 60; ++it) {
      x -= (0.9 / gnorm) * (a.transpose() * (a * x));
      x = project_l1_ball(x, radius);
      double n2 = x.norm();
      if (n2 == 0.0) break;
      x /= n2;
      record(x);
    }
    // Feasibility polish: pure alternation, recording along the way.
    for (int it = 0; it < 50; ++it) {
      x = project_l1_ball(x, radius);
      double n2 = x.norm();
      if (n2 == 0.0) break;
      x /= n2;
      record(x);
    }
  }
  return best;
}

RwpCertificate certify_rwp(const SensingMatrix& phi, double rho, double delta,
                           int restarts, std::uint64_t seed) {
  NetBound net = certify_alpha_lower(phi, rho, delta);
  double upper = estimate_alpha_upper(phi, rho, restarts, seed);
  RwpCertificate cert{rho, net.alpha_lower, upper, delta, CertMethod::net,
                      net.vacuous};
  if (cert.alpha_lower > cert.alpha_upper + 1e-10)
    throw std::logic_error("certificate bounds crossed; numerical fault");
  return cert;
}

RwpCertificate heuristic_rwp(const SensingMatrix& phi, double rho,
                             int restarts, std::uint64_t seed) {
  double upper = estimate_alpha_upper(phi, rho, restarts, seed);
  return RwpCertificate{rho, 0.0, upper, 0.0, CertMethod::heuristic_only,
                        false};
}

CmsvEstimate l1_cmsv(const SensingMatrix& phi, Index k, CmsvMode mode,
                     const CmsvParams& params) {
  require(k >= 1 && k <= phi.cols(), "k must be in [1, n]");
  if (mode == CmsvMode::exact_k1) {
    require(k == 1, "exact_k1 mode requires k = 1");
    // S_1 is exactly the 1-sparse vectors, so the infimum is the smallest
    // column norm.
    double r = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < phi.cols(); ++j)
      r = std::min(r, phi.entries().col(j).norm());
    return CmsvEstimate{k, r, r};
  }
  const double rho = 1.0 / std::sqrt(double(k));
  if (mode == CmsvMode::net) {
    RwpCertificate cert =
        certify_rwp(phi, rho, params.delta, params.restarts, params.seed);
    return CmsvEstimate{k, cert.alpha_lower, cert.alpha_upper};
  }
  RwpCertificate cert =
      heuristic_rwp(phi, rho, params.restarts, params.seed);
  return CmsvEstimate{k, 0.0, cert.alpha_upper};
}

double max_gain_sharp_ball(const SensingMatrix& phi) {
  double t = 0.0;
  for (Index j = 0; j < phi.cols(); ++j)
    t = std::max(t, phi.entries().col(j).norm());
  return t;
}

WitnessVerdict rwp_violation_witness(const SensingMatrix& phi, double rho,
                                     double alpha, const Vector& x) {
  require(x.size() == phi.cols(), "dimension mismatch");
  require(x.norm() > 0.0, "witness vector must be nonzero");
  const double gain = (phi.entries() * x).norm();
  const double n2 = x.norm();
  const double n1 = x.lpNorm<1>();

  // Form 1: low gain forces cone membership.
  const bool low_gain = gain < alpha * n2;
  const bool in_cone = n2 <= rho * n1;
  const bool violates_form1 = low_gain && !in_cone;

  // Form 2: outside the cone forces full gain.
  const bool outside = n2 > rho * n1;
  const bool full_gain = gain >= alpha * n2;
  const bool violates_form2 = outside && !full_gain;

  if (violates_form1 != violates_form2)
    throw std::logic_error("equivalent robust-width forms disagreed");
  return violates_form1 ? WitnessVerdict::violates : WitnessVerdict::consistent;
}

}  // namespace rwidth
