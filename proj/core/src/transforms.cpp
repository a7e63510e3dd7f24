#include "simplexgeo/transforms.hpp"

#include "simplexgeo/error.hpp"

#include <cmath>
#include <sstream>

namespace simplexgeo {

namespace {
std::string where(const char* op) { return std::string("transforms::") + op; }

double root(double p, double q) {
  if (q == 2.0) return std::sqrt(p);
  if (q == 3.0) return std::cbrt(p);
  return std::pow(p, 1.0 / q);
}

double power(double x, double q) {
  if (q == 2.0) return x * x;
  return std::pow(x, q);
}
}  // namespace

RootTransform::RootTransform(double q) : q_(q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    std::ostringstream os;
    os << "q = " << q;
    raise(ErrorCode::InvalidExponent, where("RootTransform"), os.str());
  }
}

SpherePoint forward(const RootTransform& T, const SimplexPoint& p) {
  if (p.mass() < 0.5) {
    raise(ErrorCode::InvalidArgument, where("forward"), "truncation keeps less than half the mass");
  }
  Vector x(p.dim());
  for (Index i = 0; i < p.dim(); ++i) x[i] = root(p[i], T.q());
  return SpherePoint::make(std::move(x), T.q(), p.tail_bound());
}

SimplexPoint inverse(const RootTransform& T, const SpherePoint& x) {
  if (x.q() != T.q()) {
    raise(ErrorCode::InvalidExponent, where("inverse"), "sphere exponent differs from transform");
  }
  if (!x.positive()) {
    raise(ErrorCode::NotPositive, where("inverse"), "sphere point has a non-positive coordinate");
  }
  Vector p(x.dim());
  for (Index i = 0; i < x.dim(); ++i) p[i] = power(x[i], T.q());
  return SimplexPoint::make(std::move(p), x.tail_bound());
}

SphereTangent pushforward(const RootTransform& T, const TangentVector& v) {
  const SimplexPoint& p = v.base();
  const double q = T.q();
  Vector comps(v.dim());
  for (Index i = 0; i < v.dim(); ++i) {
    // p^{1/q - 1} = p^{1/q} / p keeps one pow call per coordinate.
    comps[i] = v[i] * root(p[i], q) / (q * p[i]);
  }
  return SphereTangent::make(forward(T, p), std::move(comps), 1e-10);
}

double pullback_inner(const RootTransform& T, const TangentVector& v, const TangentVector& w) {
  if (T.q() != 2.0) {
    raise(ErrorCode::ExponentNotTwo, where("pullback_inner"), "inner product needs q = 2");
  }
  if (!same_base(v.base(), w.base())) {
    raise(ErrorCode::BaseMismatch, where("pullback_inner"), "tangent vectors at different points");
  }
  return pushforward(T, v).comps().dot(pushforward(T, w).comps());
}

}  // namespace simplexgeo
