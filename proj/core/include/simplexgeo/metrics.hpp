#pragma once

#include "simplexgeo/sequence.hpp"

namespace simplexgeo {

struct MetricReport {
  double value = 0.0;
  double residual_vs_pullback = 0.0;  // |fr_inner - pullback_inner|
  SimplexPoint at;
};

/// Fisher-Rao inner product (1/4) sum v_n w_n / p_n.
double fr_inner(const TangentVector& v, const TangentVector& w);

/// fr_inner together with its residual against the square-root pullback.
MetricReport fr_inner_report(const TangentVector& v, const TangentVector& w);

/// l^q Fisher-Rao Finsler norm (sum |v_n / p_n|^q p_n)^{1/q}, evaluated as the
/// l^q norm of v_n p_n^{(1-q)/q}. For q = 2 it equals 2 sqrt(fr_inner(v, v)).
double finsler_norm(const TangentVector& v, double q);

/// Orthogonal projection raw - <raw, x> x onto the round-sphere tangent space.
SphereTangent sphere_project(const SpherePoint& x, const Vector& raw);

/// Bhattacharyya angle arccos(sum sqrt(p_n r_n)): the great-circle distance
/// between square roots on the unit sphere. Unit-radius convention.
double fr_distance(const SimplexPoint& p, const SimplexPoint& r);

/// Pull-back of the great-circle arc from sqrt(p) (t = 0) to sqrt(r) (t = 1).
SimplexPoint fr_geodesic(const SimplexPoint& p, const SimplexPoint& r, double t);

}  // namespace simplexgeo
