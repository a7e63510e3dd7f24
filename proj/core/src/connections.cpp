#include "simplexgeo/connections.hpp"

#include "simplexgeo/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace simplexgeo {

namespace {

std::string where(const char* op) { return std::string("connections::") + op; }

bool stays_positive(const Vector& p, const Vector& v, double h) {
  return ((p + h * v).array() > 0.0).all() && ((p - h * v).array() > 0.0).all();
}

// Central difference of an arbitrary vector-valued map along p + tv.
template <typename Map>
Vector central_difference(const Map& f, const SimplexPoint& p, const Vector& v, double h,
                          bool richardson, const char* op) {
  if (!(h > 0.0)) {
    raise(ErrorCode::InvalidArgument, where(op), "step must be positive");
  }
  while (!stays_positive(p.coords(), v, h)) {
    h *= 0.5;
    if (h < kMinStep) {
      raise(ErrorCode::StepUnderflow, where(op), "positivity needs a step below 1e-8");
    }
  }
  auto at = [&](double s) { return f(SimplexPoint::make(p.coords() + s * v, p.tail_bound())); };
  Vector coarse = (at(h) - at(-h)) / (2.0 * h);
  if (!richardson) return coarse;
  const double half = 0.5 * h;
  Vector fine = (at(half) - at(-half)) / (2.0 * half);
  return (4.0 * fine - coarse) / 3.0;
}

TangentVector tangent_with_tolerance(const SimplexPoint& p, Vector comps, const char* op) {
  const double scale = std::max(1.0, comps.cwiseAbs().maxCoeff());
  const double sum = comps.sum();
  if (std::abs(sum) > 1e-10 * scale) {
    std::ostringstream os;
    os << "result sums to " << sum;
    raise(ErrorCode::InvalidArgument, where(op), os.str());
  }
  return TangentVector::make(p, std::move(comps), 1e-10 * scale);
}

}  // namespace

TangentVector VectorField::operator()(const SimplexPoint& p) const {
  TangentVector out = eval(p);
  if (!same_base(out.base(), p)) {
    raise(ErrorCode::BaseMismatch, where("VectorField"), "field '" + label + "' returned a vector at another point");
  }
  return out;
}

VectorField constant_field(Vector w, std::string label) {
  return VectorField{[w = std::move(w)](const SimplexPoint& p) { return TangentVector::make(p, w); },
                     std::move(label)};
}

Vector directional_derivative(const VectorField& W, const SimplexPoint& p, const TangentVector& v,
                              double h, bool richardson) {
  if (v.dim() != p.dim()) {
    raise(ErrorCode::LengthMismatch, where("directional_derivative"), "direction length differs");
  }
  return central_difference([&](const SimplexPoint& x) -> Vector { return W(x).comps(); }, p,
                            v.comps(), h, richardson, "directional_derivative");
}

TangentVector alpha_connection(const VectorField& V, const VectorField& W, const SimplexPoint& p,
                               double q, double h) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    raise(ErrorCode::InvalidExponent, where("alpha_connection"), "q must lie in (1, inf)");
  }
  const double q_star = q / (q - 1.0);
  const TangentVector v = V(p);
  const TangentVector w = W(p);
  const Vector& pc = p.coords();

  Vector derivative = directional_derivative(W, p, v, h);
  const Vector ratio_product = v.comps().cwiseQuotient(pc).cwiseProduct(w.comps());
  Vector correction = ratio_product - ratio_product.sum() * pc;
  return tangent_with_tolerance(p, derivative - correction / q_star, "alpha_connection");
}

TangentVector e_connection(const VectorField& V, const VectorField& W, const SimplexPoint& p,
                           double h) {
  const TangentVector v = V(p);
  Vector d_ratio = central_difference(
      [&](const SimplexPoint& x) -> Vector { return W(x).comps().cwiseQuotient(x.coords()); }, p,
      v.comps(), h, false, "e_connection");
  const Vector& pc = p.coords();
  const double mean = pc.dot(d_ratio);
  return tangent_with_tolerance(p, pc.cwiseProduct((d_ratio.array() - mean).matrix()),
                                "e_connection");
}

Vector e_connection_residual(const Curve& curve, double t, double h) {
  if (!(h > 0.0) || !std::isfinite(t)) {
    raise(ErrorCode::InvalidArgument, where("e_connection_residual"), "need finite t and h > 0");
  }
  // Five-point central differences of spacing s = h/2 at both levels: pdot at
  // t + js (j = -2..2) from samples at t + ks (k = -4..4), i.e. on
  // [t - 2h, t + 2h], then d/dt(pdot / p) at t from those five ratios.
  // Truncation error is O(h^4). Any failure to evaluate means the curve is not
  // defined on the stencil.
  constexpr int kHalf = 4;
  const double s = 0.5 * h;
  Vector samples[2 * kHalf + 1];
  Index n = -1;
  for (int k = -kHalf; k <= kHalf; ++k) {
    try {
      SimplexPoint p = curve(t + k * s);
      if (n >= 0 && p.dim() != n) {
        raise(ErrorCode::CurveDomain, where("e_connection_residual"), "curve changes dimension");
      }
      n = p.dim();
      samples[k + kHalf] = p.coords();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CurveDomain) throw;
      raise(ErrorCode::CurveDomain, where("e_connection_residual"), e.what());
    }
  }
  auto at = [&](int k) -> const Vector& { return samples[k + kHalf]; };
  auto five_point = [s](const Vector& m2, const Vector& m1, const Vector& p1, const Vector& p2) {
    return Vector((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * s));
  };
  // Log-velocity r = pdot / p at t + js.
  auto log_velocity = [&](int j) -> Vector {
    return five_point(at(j - 2), at(j - 1), at(j + 1), at(j + 2)).cwiseQuotient(at(j));
  };
  const Vector dr = five_point(log_velocity(-2), log_velocity(-1), log_velocity(1), log_velocity(2));
  const Vector& p = at(0);
  const double mean = p.dot(dr);
  return p.cwiseProduct((dr.array() - mean).matrix());
}

EGeodesic make_e_geodesic(const SimplexPoint& p0, const TangentVector& v0) {
  if (!same_base(v0.base(), p0)) {
    raise(ErrorCode::BaseMismatch, where("make_e_geodesic"), "initial velocity based elsewhere");
  }
  if (p0.tail_bound() != 0.0) {
    raise(ErrorCode::InvalidArgument, where("make_e_geodesic"), "initial point must be normalized");
  }
  return EGeodesic{p0, v0.comps().cwiseQuotient(p0.coords()), 0.0};
}

EGeodesic regauge(const EGeodesic& g, double mu) {
  return EGeodesic{g.p0, (g.a.array() + mu).matrix(), g.gauge + mu};
}

SimplexPoint e_geodesic_eval(const EGeodesic& g, double t) {
  if (!std::isfinite(t) || !g.a.allFinite()) {
    raise(ErrorCode::NonFiniteInput, where("e_geodesic_eval"), "non-finite time or exponent");
  }
  if (g.a.size() != g.p0.dim()) {
    raise(ErrorCode::LengthMismatch, where("e_geodesic_eval"), "exponent length differs from p0");
  }
  const Vector s = g.p0.coords().array().log().matrix() + t * g.a;
  if (!s.allFinite()) {
    raise(ErrorCode::NonFiniteInput, where("e_geodesic_eval"), "log-weights overflow");
  }
  const double top = s.maxCoeff();
  Vector e = (s.array() - top).exp().matrix();
  e /= e.sum();
  constexpr double floor = std::numeric_limits<double>::min();
  for (Index i = 0; i < e.size(); ++i) {
    if (e[i] < floor) e[i] = floor;
  }
  return SimplexPoint::make(std::move(e), 0.0);
}

}  // namespace simplexgeo
