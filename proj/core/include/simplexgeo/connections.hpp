#pragma once

#include "simplexgeo/sequence.hpp"

#include <functional>
#include <string>

namespace simplexgeo {

/// Vector field on the simplex. `eval` must be a pure function returning a
/// tangent vector based at its argument.
struct VectorField {
  std::function<TangentVector(const SimplexPoint&)> eval;
  std::string label;

  TangentVector operator()(const SimplexPoint& p) const;
};

// W(p) = w for every p; w must sum to zero.
VectorField constant_field(Vector w, std::string label = "constant");

using Curve = std::function<SimplexPoint(double)>;

inline constexpr double kFieldStep = 1e-5;
inline constexpr double kCurveStep = 1e-3;
inline constexpr double kMinStep = 1e-8;

/// Central difference (W(p + hv) - W(p - hv)) / 2h along the affine chart line
/// p + tv. h is halved until both endpoints stay positive; below 1e-8 this
/// throws StepUnderflow. With `richardson` the h and h/2 estimates are
/// combined to cancel the O(h^2) term.
Vector directional_derivative(const VectorField& W, const SimplexPoint& p, const TangentVector& v,
                              double h = kFieldStep, bool richardson = false);

/// Amari-Chentsov alpha-connection, alpha = 1 - 2/q:
///   D_V W - (1/q*) ((V_n / p_n) W_n - (sum_k V_k W_k / p_k) p_n),  q* = q/(q-1).
TangentVector alpha_connection(const VectorField& V, const VectorField& W, const SimplexPoint& p,
                               double q, double h = kFieldStep);

/// Exponential connection at a point:
///   p_n (D_V(W_n / p_n) - sum_k p_k D_V(W_k / p_k)).
TangentVector e_connection(const VectorField& V, const VectorField& W, const SimplexPoint& p,
                           double h = kFieldStep);

/// Along-curve form of the exponential connection applied to the velocity,
///   p_n (d/dt(pdot_n / p_n) - sum_k p_k d/dt(pdot_k / p_k)),
/// with both derivatives taken by five-point central differences of spacing
/// h/2, so the curve is sampled on [t - 2h, t + 2h] only. Vanishes on
/// e-geodesics up to O(h^4).
Vector e_connection_residual(const Curve& curve, double t, double h = kCurveStep);

/// e-geodesic p_n(t) = p_n(0) e^{a_n t} / sum_k p_k(0) e^{a_k t}. The exponents
/// are only defined up to a common shift; `gauge` records the shift used.
struct EGeodesic {
  SimplexPoint p0;
  Vector a;
  double gauge = 0.0;
};

// a_n = v0_n / p0_n with gauge 0.
EGeodesic make_e_geodesic(const SimplexPoint& p0, const TangentVector& v0);

// Same curve with every exponent shifted by mu.
EGeodesic regauge(const EGeodesic& g, double mu);

/// Evaluated in log space (softmax of log p_n(0) + a_n t), so any finite t is
/// fine. Coordinates below the smallest normal double are raised to it.
SimplexPoint e_geodesic_eval(const EGeodesic& g, double t);

}  // namespace simplexgeo
