#pragma once

#include "simplexgeo/sequence.hpp"

namespace simplexgeo {

/// Coordinatewise q-root map p -> p^{1/q} from the simplex onto the positive
/// part of the l^q unit sphere. q = 2 is the square-root map.
///
/// The differential satisfies |d(root_q) v|_{l^q} = (1/q) * finsler_norm(v, q)
/// exactly. For q = 2 this is the Fisher-Rao isometry (the 1/4 in fr_inner
/// absorbs the constant); for q != 2 the Finsler norm is off by the factor q.
class RootTransform {
 public:
  explicit RootTransform(double q = 2.0);
  double q() const noexcept { return q_; }

 private:
  double q_;
};

// Requires sum p >= 0.5. The tail bound carries over to the sphere point.
SpherePoint forward(const RootTransform& T, const SimplexPoint& p);

// Requires a strictly positive point with matching exponent.
SimplexPoint inverse(const RootTransform& T, const SpherePoint& x);

// (1/q) v_n p_n^{1/q - 1}, based at forward(T, v.base()).
SphereTangent pushforward(const RootTransform& T, const TangentVector& v);

// Ambient l^2 inner product of the pushforwards; q must be 2.
double pullback_inner(const RootTransform& T, const TangentVector& v, const TangentVector& w);

}  // namespace simplexgeo
