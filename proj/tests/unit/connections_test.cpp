#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace simplexgeo;
using oracle::point;
using oracle::vec;

namespace {

// W(p) = (p_0 - p_1, p_1 - p_0): linear, so its derivative along v is exact.
VectorField linear_field() {
  return VectorField{[](const SimplexPoint& p) {
                       return TangentVector::make(p, vec({p[0] - p[1], p[1] - p[0]}));
                     },
                     "linear"};
}

}  // namespace

TEST(VectorField, RejectsVectorsBasedElsewhere) {
  const VectorField bad{[](const SimplexPoint&) {
                          return make_tangent(point({0.5, 0.5}), vec({1.0, -1.0}));
                        },
                        "bad"};
  EXPECT_SGEO_ERROR(bad(point({0.25, 0.75})), ErrorCode::BaseMismatch);
}

TEST(DirectionalDerivative, ConstantFieldVanishes) {
  const SimplexPoint p = point({0.2, 0.3, 0.5});
  const VectorField W = constant_field(vec({1.0, -2.0, 1.0}));
  for (double h : {1e-3, 1e-5}) {
    const Vector d = directional_derivative(W, p, make_tangent(p, vec({1.0, 0.0, -1.0})), h);
    EXPECT_EQ(d, Vector::Zero(3));
  }
}

TEST(DirectionalDerivative, LinearFieldIsExact) {
  for (const SimplexPoint& p : {point({0.5, 0.5}), point({0.1, 0.9}), point({0.7, 0.3})}) {
    const Vector d = directional_derivative(linear_field(), p, make_tangent(p, vec({1.0, -1.0})));
    EXPECT_NEAR(d[0], 2.0, 1e-9);
    EXPECT_NEAR(d[1], -2.0, 1e-9);
    const Vector rich =
        directional_derivative(linear_field(), p, make_tangent(p, vec({1.0, -1.0})), 1e-5, true);
    EXPECT_NEAR(rich[0], 2.0, 1e-9);
  }
}

TEST(DirectionalDerivative, StepShrinksNearBoundary) {
  // p_1 = 1e-6 forces h below 1e-6 but not below 1e-8.
  const SimplexPoint p = point({1.0 - 1e-6, 1e-6});
  const Vector d = directional_derivative(linear_field(), p, make_tangent(p, vec({-1.0, 1.0})));
  EXPECT_NEAR(d[0], -2.0, 1e-6);
}

TEST(DirectionalDerivative, StepUnderflow) {
  const SimplexPoint p = point({1.0 - 1e-10, 1e-10});
  EXPECT_SGEO_ERROR(
      directional_derivative(linear_field(), p, make_tangent(p, vec({-1.0, 1.0}))),
      ErrorCode::StepUnderflow);
}

TEST(DirectionalDerivative, Preconditions) {
  const SimplexPoint p = point({0.5, 0.5});
  const TangentVector v = make_tangent(p, vec({1.0, -1.0}));
  EXPECT_SGEO_ERROR(directional_derivative(linear_field(), p, v, 0.0), ErrorCode::InvalidArgument);
  const SimplexPoint r = point({0.2, 0.3, 0.5});
  EXPECT_SGEO_ERROR(directional_derivative(linear_field(), r, v), ErrorCode::LengthMismatch);
}

TEST(AlphaConnection, SymmetricPointCancels) {
  const SimplexPoint p = point({0.5, 0.5});
  const VectorField V = constant_field(vec({1.0, -1.0}));
  const TangentVector out = alpha_connection(V, V, p, 2.0);
  EXPECT_NEAR(out.comps().norm(), 0.0, 1e-15);
}

TEST(AlphaConnection, AsymmetricPoint) {
  const SimplexPoint p = point({0.25, 0.75});
  const VectorField V = constant_field(vec({1.0, -1.0}));
  const TangentVector out = alpha_connection(V, V, p, 2.0);
  EXPECT_NEAR(out[0], -4.0 / 3.0, 1e-14);
  EXPECT_NEAR(out[1], 4.0 / 3.0, 1e-14);
}

TEST(AlphaConnection, ZeroFirstArgument) {
  const SimplexPoint p = point({0.2, 0.3, 0.5});
  const VectorField zero = constant_field(Vector::Zero(3));
  const VectorField W = constant_field(vec({1.0, 0.5, -1.5}));
  EXPECT_EQ(alpha_connection(zero, W, p, 3.0).comps(), Vector::Zero(3));
}

TEST(AlphaConnection, ConjugateExponentScalesCorrection) {
  // Constant fields: output = -(1/q*) P(v w / p); q* = q/(q-1).
  const SimplexPoint p = point({0.25, 0.75});
  const VectorField V = constant_field(vec({1.0, -1.0}));
  for (double q : {1.5, 3.0, 4.0}) {
    const TangentVector out = alpha_connection(V, V, p, q);
    EXPECT_NEAR(out[0], -(8.0 / 3.0) * (q - 1.0) / q, 1e-14) << "q = " << q;
  }
  EXPECT_SGEO_ERROR(alpha_connection(V, V, p, 1.0), ErrorCode::InvalidExponent);
}

TEST(EConnection, ConstantFieldAtUniformPoint) {
  // d/dv (w/p) = -w v / p^2 for constant w; at p = (1/2,1/2), v = w = (1,-1):
  // (-4, -4), then p (dr - <p, dr>) = 0.
  const SimplexPoint p = point({0.5, 0.5});
  const VectorField V = constant_field(vec({1.0, -1.0}));
  EXPECT_NEAR(e_connection(V, V, p).comps().norm(), 0.0, 1e-9);
}

TEST(EConnection, SumsToZero) {
  const SimplexPoint p = point({0.1, 0.2, 0.3, 0.4});
  const VectorField V = constant_field(vec({1.0, -1.0, 0.5, -0.5}));
  const VectorField W = constant_field(vec({0.2, 0.3, -0.1, -0.4}));
  EXPECT_NEAR(e_connection(V, W, p).comps().sum(), 0.0, 1e-12);
}

TEST(EConnectionResidual, ConstantCurve) {
  const SimplexPoint p = point({0.2, 0.3, 0.5});
  // Identical samples cancel up to rounding in the stencil weights.
  EXPECT_LE(e_connection_residual([&](double) { return p; }, 0.7).lpNorm<Eigen::Infinity>(), 1e-20);
}

TEST(EConnectionResidual, VanishesOnEGeodesic) {
  const SimplexPoint p0 = point({0.2, 0.3, 0.5});
  const EGeodesic g = make_e_geodesic(p0, make_tangent(p0, vec({0.3, -0.5, 0.2})));
  for (double t : {-1.0, 0.0, 0.5, 2.0}) {
    const Vector r = e_connection_residual([&](double s) { return e_geodesic_eval(g, s); }, t);
    EXPECT_LE(r.lpNorm<Eigen::Infinity>(), 1e-6) << "t = " << t;
  }
}

TEST(EConnectionResidual, FisherRaoGeodesicIsNotAnEGeodesic) {
  const SimplexPoint p = point({0.5, 0.5});
  const SimplexPoint r = point({0.9, 0.1});
  const Vector res = e_connection_residual([&](double t) { return fr_geodesic(p, r, t); }, 0.5);
  EXPECT_GT(res.lpNorm<Eigen::Infinity>(), 1e-2);
}

TEST(EConnectionResidual, OutsideDomain) {
  const SimplexPoint p = point({0.5, 0.5});
  const SimplexPoint r = point({0.9, 0.1});
  // The stencil around t = 1 leaves [0, 1].
  EXPECT_SGEO_ERROR(e_connection_residual([&](double t) { return fr_geodesic(p, r, t); }, 1.0),
                    ErrorCode::CurveDomain);
  EXPECT_SGEO_ERROR(e_connection_residual([&](double) { return p; }, 0.0, 0.0),
                    ErrorCode::InvalidArgument);
}

TEST(MakeEGeodesic, Examples) {
  const SimplexPoint p0 = point({0.5, 0.5});
  EXPECT_EQ(make_e_geodesic(p0, make_tangent(p0, vec({0.5, -0.5}))).a, vec({1.0, -1.0}));
  EXPECT_EQ(make_e_geodesic(p0, make_tangent(p0, Vector::Zero(2))).a, Vector::Zero(2));
  EXPECT_SGEO_ERROR(make_e_geodesic(p0, make_tangent(point({0.25, 0.75}), vec({1.0, -1.0}))),
                    ErrorCode::BaseMismatch);
}

TEST(Regauge, LeavesCurveUnchanged) {
  const SimplexPoint p0 = point({0.5, 0.5});
  const EGeodesic g = make_e_geodesic(p0, make_tangent(p0, vec({0.5, -0.5})));
  const EGeodesic h = regauge(g, 5.0);
  EXPECT_EQ(h.gauge, 5.0);
  for (double t : {-1.0, 0.3, 2.0}) {
    const Vector d = e_geodesic_eval(g, t).coords() - e_geodesic_eval(h, t).coords();
    EXPECT_LE(d.lpNorm<Eigen::Infinity>(), 1e-14) << "t = " << t;
  }
}

TEST(EGeodesicEval, Examples) {
  const SimplexPoint p0 = point({0.5, 0.5});
  const EGeodesic g{p0, vec({1.0, -1.0}), 0.0};
  const SimplexPoint q = e_geodesic_eval(g, std::log(3.0) / 2.0);
  EXPECT_NEAR(q[0], 0.75, 1e-15);
  EXPECT_NEAR(q[1], 0.25, 1e-15);
  EXPECT_EQ(e_geodesic_eval(g, 0.0).coords(), p0.coords());
}

TEST(EGeodesicEval, FarFutureFlushesToSmallestNormal) {
  const EGeodesic g{point({0.5, 0.5}), vec({1.0, -1.0}), 0.0};
  const SimplexPoint q = e_geodesic_eval(g, 1e4);
  EXPECT_EQ(q[1], std::numeric_limits<double>::min());
  EXPECT_LT(q[1], 1e-300);
  EXPECT_GT(q[1], 0.0);
  EXPECT_EQ(q[0], 1.0);
  EXPECT_NEAR(q.mass(), 1.0, 1e-15);
}

TEST(EGeodesicEval, NonFinite) {
  const EGeodesic g{point({0.5, 0.5}), vec({1.0, -1.0}), 0.0};
  EXPECT_SGEO_ERROR(e_geodesic_eval(g, INFINITY), ErrorCode::NonFiniteInput);
  const EGeodesic bad{point({0.5, 0.5}), vec({1.0, -1.0, 0.0}), 0.0};
  EXPECT_SGEO_ERROR(e_geodesic_eval(bad, 1.0), ErrorCode::LengthMismatch);
}
