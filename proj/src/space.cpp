#include "rwidth/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rwidth {

std::string to_string(Model m) {
  return m == Model::lasso ? "lasso" : "dantzig";
}

Model model_from_string(const std::string& s) {
  if (s == "lasso") return Model::lasso;
  if (s == "dantzig") return Model::dantzig;
  throw std::invalid_argument("unknown model: " + s);
}

double sharp_norm(const Vector& x) { return x.lpNorm<1>(); }

double dual_norm(const Vector& x) {
  return x.size() == 0 ? 0.0 : x.lpNorm<Eigen::Infinity>();
}

double norm(const Vector& x, Norm which) {
  switch (which) {
    case Norm::sharp: return sharp_norm(x);
    case Norm::two: return x.norm();
    case Norm::dual: return dual_norm(x);
  }
  throw std::logic_error("unreachable");
}

Vector subgradient_sharp(const Vector& x) {
  Vector u(x.size());
  for (Index i = 0; i < x.size(); ++i)
    u[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
  return u;
}

CsSpaceModel make_cs_space(Index dim, Index sparsity) {
  require(dim >= 1, "space dimension must be >= 1");
  require(sparsity >= 1 && sparsity <= dim, "sparsity must be in [1, dim]");
  return CsSpaceModel{dim, sparsity, std::sqrt(double(sparsity))};
}

double decomposition_bound(Index k) {
  require(k >= 1, "sparsity must be >= 1");
  return std::sqrt(double(k));
}

Index count_nonzeros(const Vector& x) {
  Index c = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) ++c;
  return c;
}

Decomposition decompose(const CsSpaceModel& space, const Vector& a,
                        const Vector& v) {
  require(a.size() == v.size(), "a and v must have the same dimension");
  require(a.size() == space.dim, "vector dimension does not match the space");
  require(count_nonzeros(a) <= space.sparsity,
          "a has more than k nonzero entries");

  const Index n = v.size();
  const Index k = space.sparsity;
  std::vector<bool> in_t(n, false);
  Index filled = 0;
  for (Index i = 0; i < n; ++i)
    if (a[i] != 0.0) {
      in_t[i] = true;
      ++filled;
    }
  // Pad the support set up to size k with the lowest unused indices.
  for (Index i = 0; i < n && filled < k; ++i)
    if (!in_t[i]) {
      in_t[i] = true;
      ++filled;
    }

  Decomposition d{Vector::Zero(n), Vector::Zero(n)};
  for (Index i = 0; i < n; ++i)
    (in_t[i] ? d.z2 : d.z1)[i] = v[i];
  return d;
}

Vector hard_threshold(const Vector& x, Index k) {
  require(k >= 1 && k <= x.size(), "k out of range");
  std::vector<Index> order(x.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return std::abs(x[i]) > std::abs(x[j]);
  });
  Vector out = Vector::Zero(x.size());
  for (Index r = 0; r < k; ++r) out[order[r]] = x[order[r]];
  return out;
}

}  // namespace rwidth
