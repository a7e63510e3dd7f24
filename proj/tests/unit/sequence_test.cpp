#include "oracles.hpp"

#include <cmath>

using namespace simplexgeo;
using oracle::point;
using oracle::vec;

TEST(Error, MessageNamesCodeAndLocation) {
  try {
    raise(ErrorCode::LengthMismatch, "sequence_core::make_tangent", "raw has length 3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    EXPECT_EQ(e.where(), "sequence_core::make_tangent");
    EXPECT_STREQ(e.what(), "LengthMismatch in sequence_core::make_tangent: raw has length 3");
  }
  EXPECT_EQ(to_string(ErrorCode::RatioOutOfRange), "RatioOutOfRange");
}

TEST(SimplexPoint, UniformDimTwo) {
  const SimplexPoint p = make_simplex_point(SequenceSpec::uniform(2));
  EXPECT_EQ(p.coords(), vec({0.5, 0.5}));
  EXPECT_EQ(p.tail_bound(), 0.0);
  EXPECT_EQ(p.dim(), 2);
}

TEST(SimplexPoint, GeometricHalfNormalized) {
  const SimplexPoint p = make_simplex_point(SequenceSpec::geometric(0.5, 3));
  EXPECT_NEAR(p[0], 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(p[1], 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(p[2], 1.0 / 7.0, 1e-15);
  EXPECT_EQ(p.tail_bound(), 0.0);
}

TEST(SimplexPoint, ExplicitNegativeCoordinateRejected) {
  EXPECT_SGEO_ERROR(make_simplex_point(SequenceSpec::explicit_coords({0.3, -0.1, 0.8})),
                    ErrorCode::NonPositiveCoordinate);
}

TEST(SimplexPoint, DimensionOneRejected) {
  EXPECT_SGEO_ERROR(make_simplex_point(SequenceSpec::uniform(1)), ErrorCode::DimensionTooSmall);
  EXPECT_SGEO_ERROR(SimplexPoint::make(vec({1.0})), ErrorCode::DimensionTooSmall);
}

TEST(SimplexPoint, AllZeroIsNotNormalizable) {
  EXPECT_SGEO_ERROR(make_simplex_point(SequenceSpec::explicit_coords({0.0, 0.0, 0.0})),
                    ErrorCode::NotNormalizable);
}

TEST(SimplexPoint, ZeroCoordinateRejectedNotFloored) {
  EXPECT_SGEO_ERROR(SimplexPoint::make(vec({1.0, 0.0})), ErrorCode::NonPositiveCoordinate);
}

TEST(SimplexPoint, SumMustMatchTailBound) {
  EXPECT_SGEO_ERROR(SimplexPoint::make(vec({0.5, 0.4})), ErrorCode::InvalidArgument);
  EXPECT_SGEO_ERROR(SimplexPoint::make(vec({0.6, 0.6})), ErrorCode::InvalidArgument);
  const SimplexPoint p = SimplexPoint::make(vec({0.5, 0.4}), 0.1);
  EXPECT_DOUBLE_EQ(p.mass(), 0.9);
  EXPECT_SGEO_ERROR(SimplexPoint::make(vec({0.5, 0.4}), 0.05), ErrorCode::InvalidArgument);
}

TEST(SimplexPoint, NonFiniteRejected) {
  EXPECT_SGEO_ERROR(SimplexPoint::make(vec({NAN, 0.5})), ErrorCode::NonFiniteInput);
}

TEST(SimplexPoint, GeometricWithoutNormalizationTracksTail) {
  // Normalized by the infinite total 1 / (1 - r): coordinates (1 - r) r^n, and
  // the discarded mass r^N = (r^N / (1 - r)) * leading coefficient (1 - r).
  const double r = 0.5;
  const SimplexPoint p = make_simplex_point(SequenceSpec::geometric(r, 4, Normalization::None));
  EXPECT_NEAR(p[0], 0.5, 1e-16);
  EXPECT_NEAR(p[3], 0.0625, 1e-16);
  EXPECT_DOUBLE_EQ(p.tail_bound(), std::pow(r, 4));
  EXPECT_NEAR(p.mass() + p.tail_bound(), 1.0, 1e-15);
}

TEST(SimplexPoint, ExplicitWithoutNormalizationMustSumToOne) {
  const SimplexPoint p =
      make_simplex_point(SequenceSpec::explicit_coords({0.25, 0.75}, Normalization::None));
  EXPECT_EQ(p.coords(), vec({0.25, 0.75}));
  EXPECT_SGEO_ERROR(make_simplex_point(SequenceSpec::explicit_coords({1.0, 2.0}, Normalization::None)),
                    ErrorCode::InvalidArgument);
}

TEST(SimplexPoint, SphereNormalizationIsNotASimplexPoint) {
  EXPECT_SGEO_ERROR(make_simplex_point(SequenceSpec::uniform(3, Normalization::ToSphere)),
                    ErrorCode::InvalidArgument);
}

TEST(SequenceSpec, GeometricRatioMustLieInUnitInterval) {
  EXPECT_SGEO_ERROR(materialize(SequenceSpec::geometric(1.5, 3)), ErrorCode::RatioOutOfRange);
  EXPECT_SGEO_ERROR(materialize(SequenceSpec::geometric(0.0, 3)), ErrorCode::RatioOutOfRange);
}

TEST(SequenceSpec, PowerDecay) {
  const SequenceSpec spec = SequenceSpec::custom_decay("power", 2.0, 3, Normalization::None);
  EXPECT_EQ(materialize(spec), vec({1.0, 0.25, 1.0 / 9.0}));
  EXPECT_NEAR(raw_total_mass(spec), M_PI * M_PI / 6.0, 1e-14);
  EXPECT_DOUBLE_EQ(raw_tail(spec, 3), 1.0 / 3.0);
  // The bound dominates the true tail sum_{k >= 3} (k + 1)^-2 = pi^2/6 - 1 - 1/4 - 1/9.
  EXPECT_GE(raw_tail(spec, 3), M_PI * M_PI / 6.0 - 1.0 - 0.25 - 1.0 / 9.0);
  const SimplexPoint p = make_simplex_point(spec);
  EXPECT_LE(p.mass(), 1.0);
  EXPECT_GE(p.mass() + p.tail_bound(), 1.0 - 1e-15);
  EXPECT_SGEO_ERROR(materialize(SequenceSpec::custom_decay("power", 1.0, 3)),
                    ErrorCode::InvalidArgument);
  EXPECT_SGEO_ERROR(materialize(SequenceSpec::custom_decay("zipfian", 2.0, 3)),
                    ErrorCode::InvalidArgument);
}

TEST(SequenceSpec, TailModelOnlyForGeometricAndDecay) {
  EXPECT_TRUE(SequenceSpec::geometric(0.5, 3).has_tail_model());
  EXPECT_TRUE(SequenceSpec::custom_decay("power", 2.0, 3).has_tail_model());
  EXPECT_FALSE(SequenceSpec::uniform(3).has_tail_model());
  EXPECT_SGEO_ERROR(raw_tail(SequenceSpec::uniform(3), 3), ErrorCode::NoTailModel);
  EXPECT_DOUBLE_EQ(tail_fraction(SequenceSpec::geometric(0.5, 3), 3), 0.125);
}

TEST(SequenceSpec, ExplicitLengthMismatch) {
  SequenceSpec s = SequenceSpec::explicit_coords({0.5, 0.5});
  s.dim = 3;
  EXPECT_SGEO_ERROR(materialize(s), ErrorCode::LengthMismatch);
}

TEST(TangentVector, AlreadyZeroSumUnchanged) {
  const SimplexPoint p = make_simplex_point(SequenceSpec::uniform(2));
  EXPECT_EQ(make_tangent(p, vec({1.0, -1.0})).comps(), vec({1.0, -1.0}));
}

TEST(TangentVector, MeanSubtracted) {
  const SimplexPoint p = make_simplex_point(SequenceSpec::uniform(2));
  EXPECT_EQ(make_tangent(p, vec({1.0, 0.0})).comps(), vec({0.5, -0.5}));
}

TEST(TangentVector, LengthMismatch) {
  const SimplexPoint p = make_simplex_point(SequenceSpec::uniform(2));
  EXPECT_SGEO_ERROR(make_tangent(p, vec({1.0, 0.0, -1.0})), ErrorCode::LengthMismatch);
  EXPECT_SGEO_ERROR(TangentVector::make(p, vec({1.0, 0.0, -1.0})), ErrorCode::LengthMismatch);
}

TEST(TangentVector, NonZeroSumRejected) {
  const SimplexPoint p = make_simplex_point(SequenceSpec::uniform(2));
  EXPECT_SGEO_ERROR(TangentVector::make(p, vec({1.0, 0.0})), ErrorCode::InvalidArgument);
  EXPECT_NO_THROW(TangentVector::make(p, vec({1.0, -1.0 + 1e-13})));
}

TEST(TangentVector, WeightedNorm) {
  const SimplexPoint p = point({0.25, 0.75});
  const TangentVector v = make_tangent(p, vec({1.0, -1.0}));
  EXPECT_NEAR(v.weighted_norm(), std::sqrt(4.0 + 4.0 / 3.0), 1e-15);
}

TEST(LqNorm, Examples) {
  EXPECT_DOUBLE_EQ(lq_norm(vec({3.0, 4.0}), 2.0), 5.0);
  EXPECT_EQ(lq_norm(Vector::Zero(5), 1.7), 0.0);
  EXPECT_NEAR(lq_norm(vec({1.0, 1.0, 1.0}), 3.0), 1.44225, 1e-5);
  EXPECT_NEAR(lq_norm(vec({1.0, 1.0, 1.0}), 3.0), std::cbrt(3.0), 1e-15);
}

TEST(LqNorm, ExponentMustExceedOne) {
  EXPECT_SGEO_ERROR(lq_norm(vec({1.0}), 1.0), ErrorCode::InvalidExponent);
  EXPECT_SGEO_ERROR(lq_norm(vec({1.0}), 0.5), ErrorCode::InvalidExponent);
}

TEST(LqNorm, NoOverflowForHugeEntries) {
  EXPECT_NEAR(lq_norm(vec({3e200, 4e200}), 2.0) / 5e200, 1.0, 1e-15);
}

TEST(Refine, GeometricTails) {
  const SequenceSpec spec = SequenceSpec::geometric(0.5, 0, Normalization::None);
  EXPECT_DOUBLE_EQ(raw_tail(spec, 4), 0.125);
  EXPECT_DOUBLE_EQ(raw_tail(spec, 8), 1.0 / 128.0);
  const std::vector<SimplexPoint> pts = refine(spec, {4, 8});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].dim(), 4);
  EXPECT_EQ(pts[1].dim(), 8);
  // Recorded in normalized units: raw tail divided by the total mass 2.
  EXPECT_DOUBLE_EQ(pts[0].tail_bound(), 0.125 / 2.0);
  EXPECT_DOUBLE_EQ(pts[1].tail_bound(), 1.0 / 256.0);
}

TEST(Refine, ExplicitHasNoTailModel) {
  EXPECT_SGEO_ERROR(refine(SequenceSpec::explicit_coords({0.5, 0.5}), {2}), ErrorCode::NoTailModel);
}

TEST(Refine, DimsMustIncrease) {
  EXPECT_SGEO_ERROR(refine(SequenceSpec::geometric(0.5, 0), {8, 4}), ErrorCode::InvalidArgument);
  EXPECT_SGEO_ERROR(refine(SequenceSpec::geometric(0.5, 0), {4, 4}), ErrorCode::InvalidArgument);
}

TEST(Refine, TruncationsAgreeOnSharedCoordinates) {
  const auto pts = refine(SequenceSpec::geometric(0.7, 0, Normalization::None), {5, 10, 20});
  for (Index i = 0; i < 5; ++i) {
    EXPECT_EQ(pts[0][i], pts[1][i]);
    EXPECT_EQ(pts[1][i], pts[2][i]);
  }
}

TEST(SpherePoint, Validation) {
  const SpherePoint x = SpherePoint::make(vec({std::sqrt(0.5), std::sqrt(0.5)}), 2.0);
  EXPECT_TRUE(x.positive());
  const SpherePoint y = SpherePoint::make(vec({1.0, 0.0}), 3.0);
  EXPECT_FALSE(y.positive());
  EXPECT_SGEO_ERROR(SpherePoint::make(vec({1.0, 1.0}), 2.0), ErrorCode::NotOnSphere);
  EXPECT_SGEO_ERROR(SpherePoint::make(vec({1.0, 0.0}), 1.0), ErrorCode::InvalidExponent);
}

TEST(SpherePoint, FromSpec) {
  SequenceSpec spec = SequenceSpec::explicit_coords({3.0, 4.0}, Normalization::ToSphere);
  const SpherePoint x = make_sphere_point(spec);
  EXPECT_NEAR(x[0], 0.6, 1e-16);
  EXPECT_NEAR(x[1], 0.8, 1e-16);
  spec.q = 3.0;
  const SpherePoint y = make_sphere_point(spec);
  EXPECT_NEAR(std::pow(y[0], 3) + std::pow(y[1], 3), 1.0, 1e-15);
  EXPECT_SGEO_ERROR(make_sphere_point(SequenceSpec::uniform(3)), ErrorCode::InvalidArgument);
}

TEST(SphereTangent, TangencyForGeneralQ) {
  const SpherePoint x = SpherePoint::make(vec({0.5, std::cbrt(7.0 / 8.0)}), 3.0);
  // sum x^2 v = 0 with v = (x_1^2, -x_0^2).
  const Vector v = vec({x[1] * x[1], -x[0] * x[0]});
  EXPECT_NEAR(sphere_tangency_residual(x, v), 0.0, 1e-16);
  EXPECT_NO_THROW(SphereTangent::make(x, v));
  EXPECT_SGEO_ERROR(SphereTangent::make(x, vec({1.0, 1.0})), ErrorCode::InvalidArgument);
}
