#pragma once

#include "rwidth/types.hpp"

namespace rwidth {

// The structured-recovery space used throughout: k-sparse vectors in R^n,
// measured in the l1 norm (whose dual is l-infinity).

enum class Norm { sharp, two, dual };  // l1, l2, l-infinity

double norm(const Vector& x, Norm which);
double sharp_norm(const Vector& x);  // l1
double dual_norm(const Vector& x);   // l-inf

// Sign-pattern subgradient of the l1 norm. Zero coordinates map to zero,
// so <u, x> = |x|_1 and |u|_inf = 1 whenever x != 0.
Vector subgradient_sharp(const Vector& x);

struct CsSpaceModel {
  Index dim;        // ambient dimension n
  Index sparsity;   // model-set sparsity k
  double bound_l;   // decomposition constant sqrt(k)
};

CsSpaceModel make_cs_space(Index dim, Index sparsity);

// sqrt(k): the l1-vs-l2 constant on k-sparse vectors (Cauchy-Schwarz).
double decomposition_bound(Index k);

// v = z1 + z2 with supp(z2) a size-k superset of supp(a) and z1 on the
// complement. Gives |a + z1|_1 = |a|_1 + |z1|_1 and |z2|_1 <= sqrt(k) |v|_2.
struct Decomposition {
  Vector z1;
  Vector z2;
};

Decomposition decompose(const CsSpaceModel& space, const Vector& a,
                        const Vector& v);

// Best k-term approximation: keep the k largest magnitudes, ties to the
// lowest index.
Vector hard_threshold(const Vector& x, Index k);

Index count_nonzeros(const Vector& x);

}  // namespace rwidth
