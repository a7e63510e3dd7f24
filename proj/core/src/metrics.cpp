#include "simplexgeo/metrics.hpp"

#include "simplexgeo/error.hpp"
#include "simplexgeo/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace simplexgeo {

namespace {
std::string where(const char* op) { return std::string("metrics::") + op; }

void require_finite_truncation(const SimplexPoint& p, const SimplexPoint& r, const char* op) {
  if (p.dim() != r.dim()) {
    raise(ErrorCode::DimensionMismatch, where(op),
          std::to_string(p.dim()) + " vs " + std::to_string(r.dim()));
  }
  if (p.tail_bound() != 0.0 || r.tail_bound() != 0.0) {
    raise(ErrorCode::InvalidArgument, where(op), "points must be normalized (tail_bound = 0)");
  }
}

}  // namespace

double fr_inner(const TangentVector& v, const TangentVector& w) {
  if (!same_base(v.base(), w.base())) {
    raise(ErrorCode::BaseMismatch, where("fr_inner"), "tangent vectors at different points");
  }
  const Vector& p = v.base().coords();
  return 0.25 * (v.comps().array() * w.comps().array() / p.array()).sum();
}

MetricReport fr_inner_report(const TangentVector& v, const TangentVector& w) {
  const double value = fr_inner(v, w);
  const double pulled = pullback_inner(RootTransform(2.0), v, w);
  return MetricReport{value, std::abs(value - pulled), v.base()};
}

double finsler_norm(const TangentVector& v, double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    raise(ErrorCode::InvalidExponent, where("finsler_norm"), "q must lie in (1, inf)");
  }
  const Vector& p = v.base().coords();
  Vector reweighted(v.dim());
  for (Index i = 0; i < v.dim(); ++i) {
    reweighted[i] = v[i] * std::pow(p[i], (1.0 - q) / q);
  }
  return lq_norm(reweighted, q);
}

SphereTangent sphere_project(const SpherePoint& x, const Vector& raw) {
  if (x.q() != 2.0) {
    raise(ErrorCode::ExponentNotTwo, where("sphere_project"), "projection needs the round sphere");
  }
  if (raw.size() != x.dim()) {
    raise(ErrorCode::LengthMismatch, where("sphere_project"), "raw length differs from point");
  }
  Vector comps = raw - raw.dot(x.coords()) * x.coords();
  return SphereTangent::make(x, std::move(comps), 1e-10);
}

double fr_distance(const SimplexPoint& p, const SimplexPoint& r) {
  require_finite_truncation(p, r, "fr_distance");
  // arccos of the Bhattacharyya coefficient, evaluated through the chord
  // |sqrt(p) - sqrt(r)| = 2 sin(d / 2) so that nearby points keep full accuracy.
  const double chord = (p.coords().cwiseSqrt() - r.coords().cwiseSqrt()).norm();
  return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

SimplexPoint fr_geodesic(const SimplexPoint& p, const SimplexPoint& r, double t) {
  require_finite_truncation(p, r, "fr_geodesic");
  if (!std::isfinite(t)) {
    raise(ErrorCode::NonFiniteInput, where("fr_geodesic"), "non-finite time");
  }
  if (t < 0.0 || t > 1.0) {
    raise(ErrorCode::InvalidArgument, where("fr_geodesic"), "t must lie in [0, 1]");
  }
  const double theta = fr_distance(p, r);
  if (theta == 0.0) {
    raise(ErrorCode::DegenerateEndpoints, where("fr_geodesic"), "endpoints coincide");
  }
  const double s = std::sin(theta);
  const double a = std::sin((1.0 - t) * theta) / s;
  const double b = std::sin(t * theta) / s;
  Vector x = a * p.coords().cwiseSqrt() + b * r.coords().cwiseSqrt();
  Vector out = x.cwiseAbs2();
  out /= out.sum();
  return SimplexPoint::make(std::move(out), 0.0);
}

}  // namespace simplexgeo
