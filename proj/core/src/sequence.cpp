#include "simplexgeo/sequence.hpp"

#include "simplexgeo/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace simplexgeo {

namespace {

constexpr const char* kModule = "sequence_core";

std::string where(const char* op) { return std::string(kModule) + "::" + op; }

bool all_finite(const Vector& v) { return v.allFinite(); }

void check_power_param(const SequenceSpec& spec, const char* op) {
  if (spec.decay_name != "power") {
    raise(ErrorCode::InvalidArgument, where(op), "unknown custom decay '" + spec.decay_name + "'");
  }
  if (!(spec.decay_param > 1.0) || !std::isfinite(spec.decay_param)) {
    raise(ErrorCode::InvalidArgument, where(op), "power decay needs exponent s > 1");
  }
}

void check_ratio(double r, const char* op) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "geometric ratio " << r << " outside (0, 1)";
    raise(ErrorCode::RatioOutOfRange, where(op), os.str());
  }
}

}  // namespace

SimplexPoint SimplexPoint::make(Vector coords, double tail_bound) {
  const Index n = coords.size();
  if (n < 2) {
    raise(ErrorCode::DimensionTooSmall, where("SimplexPoint"), "need dim >= 2, got " + std::to_string(n));
  }
  if (!all_finite(coords) || !std::isfinite(tail_bound)) {
    raise(ErrorCode::NonFiniteInput, where("SimplexPoint"), "non-finite coordinate");
  }
  if (!(tail_bound >= 0.0)) {
    raise(ErrorCode::InvalidArgument, where("SimplexPoint"), "negative tail bound");
  }
  for (Index i = 0; i < n; ++i) {
    if (!(coords[i] > 0.0)) {
      std::ostringstream os;
      os << "coordinate " << i << " = " << coords[i];
      raise(ErrorCode::NonPositiveCoordinate, where("SimplexPoint"), os.str());
    }
  }
  const double sum = coords.sum();
  const double tol = membership_tolerance(n);
  if (sum > 1.0 + tol || sum < 1.0 - tail_bound - tol) {
    std::ostringstream os;
    os.precision(17);
    os << "coordinate sum " << sum << " outside [1 - " << tail_bound << ", 1]";
    raise(ErrorCode::InvalidArgument, where("SimplexPoint"), os.str());
  }
  return SimplexPoint(std::move(coords), tail_bound);
}

double default_tangent_tolerance(const Vector& comps) {
  const double scale = comps.size() == 0 ? 1.0 : std::max(1.0, comps.cwiseAbs().maxCoeff());
  return membership_tolerance(comps.size()) * scale;
}

TangentVector TangentVector::make(SimplexPoint base, Vector comps, double tolerance) {
  if (comps.size() != base.dim()) {
    raise(ErrorCode::LengthMismatch, where("TangentVector"),
          "comps has length " + std::to_string(comps.size()) + ", base has dim " +
              std::to_string(base.dim()));
  }
  if (!all_finite(comps)) {
    raise(ErrorCode::NonFiniteInput, where("TangentVector"), "non-finite component");
  }
  const double tol = tolerance < 0.0 ? default_tangent_tolerance(comps) : tolerance;
  const double sum = comps.sum();
  if (std::abs(sum) > tol) {
    std::ostringstream os;
    os << "component sum " << sum << " exceeds " << tol;
    raise(ErrorCode::InvalidArgument, where("TangentVector"), os.str());
  }
  return TangentVector(std::move(base), std::move(comps));
}

double TangentVector::weighted_norm() const {
  return comps_.cwiseQuotient(base_.coords().cwiseSqrt()).norm();
}

SpherePoint SpherePoint::make(Vector coords, double q, double tail_bound) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    raise(ErrorCode::InvalidExponent, where("SpherePoint"), "q must lie in (1, inf)");
  }
  if (!all_finite(coords)) {
    raise(ErrorCode::NonFiniteInput, where("SpherePoint"), "non-finite coordinate");
  }
  double mass = 0.0;
  bool positive = coords.size() > 0;
  for (Index i = 0; i < coords.size(); ++i) {
    mass += std::pow(std::abs(coords[i]), q);
    positive = positive && coords[i] > 0.0;
  }
  const double tol = 1e-12;
  if (mass > 1.0 + tol || mass < 1.0 - tail_bound - tol) {
    std::ostringstream os;
    os.precision(17);
    os << "sum |x|^q = " << mass << " off the unit sphere";
    raise(ErrorCode::NotOnSphere, where("SpherePoint"), os.str());
  }
  return SpherePoint(std::move(coords), q, tail_bound, positive);
}

double sphere_tangency_residual(const SpherePoint& x, const Vector& v) {
  const double q = x.q();
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double xi = x[i];
    const double w = q == 2.0 ? xi : std::copysign(std::pow(std::abs(xi), q - 1.0), xi);
    acc += w * v[i];
  }
  return acc;
}

SphereTangent SphereTangent::make(SpherePoint base, Vector comps, double tolerance) {
  if (comps.size() != base.dim()) {
    raise(ErrorCode::LengthMismatch, where("SphereTangent"), "length differs from base");
  }
  if (!all_finite(comps)) {
    raise(ErrorCode::NonFiniteInput, where("SphereTangent"), "non-finite component");
  }
  double scale = 1.0;
  for (Index i = 0; i < comps.size(); ++i) {
    scale += std::pow(std::abs(base[i]), base.q() - 1.0) * std::abs(comps[i]);
  }
  const double residual = sphere_tangency_residual(base, comps);
  if (std::abs(residual) > tolerance * scale) {
    std::ostringstream os;
    os << "tangency residual " << residual;
    raise(ErrorCode::InvalidArgument, where("SphereTangent"), os.str());
  }
  return SphereTangent(std::move(base), std::move(comps));
}

SequenceSpec SequenceSpec::uniform(Index dim, Normalization norm) {
  SequenceSpec s;
  s.kind = SequenceKind::Uniform;
  s.dim = dim;
  s.normalization = norm;
  return s;
}

SequenceSpec SequenceSpec::geometric(double ratio, Index dim, Normalization norm) {
  SequenceSpec s;
  s.kind = SequenceKind::Geometric;
  s.ratio = ratio;
  s.dim = dim;
  s.normalization = norm;
  return s;
}

SequenceSpec SequenceSpec::explicit_coords(std::vector<double> coords, Normalization norm) {
  SequenceSpec s;
  s.kind = SequenceKind::Explicit;
  s.dim = static_cast<Index>(coords.size());
  s.coords = std::move(coords);
  s.normalization = norm;
  return s;
}

SequenceSpec SequenceSpec::custom_decay(std::string name, double param, Index dim,
                                        Normalization norm) {
  SequenceSpec s;
  s.kind = SequenceKind::CustomDecay;
  s.decay_name = std::move(name);
  s.decay_param = param;
  s.dim = dim;
  s.normalization = norm;
  return s;
}

SequenceSpec SequenceSpec::with_dim(Index n) const {
  SequenceSpec s = *this;
  s.dim = n;
  return s;
}

bool SequenceSpec::has_tail_model() const {
  return kind == SequenceKind::Geometric || kind == SequenceKind::CustomDecay;
}

Vector materialize(const SequenceSpec& spec) {
  if (spec.kind == SequenceKind::Explicit) {
    if (spec.dim != 0 && spec.dim != static_cast<Index>(spec.coords.size())) {
      raise(ErrorCode::LengthMismatch, where("materialize"),
            "explicit spec lists " + std::to_string(spec.coords.size()) + " coords but dim is " +
                std::to_string(spec.dim));
    }
    return Eigen::Map<const Vector>(spec.coords.data(), static_cast<Index>(spec.coords.size()));
  }
  if (spec.dim < 1) {
    raise(ErrorCode::DimensionTooSmall, where("materialize"), "dim must be positive");
  }
  Vector v(spec.dim);
  switch (spec.kind) {
    case SequenceKind::Uniform:
      v.setOnes();
      break;
    case SequenceKind::Geometric:
      check_ratio(spec.ratio, "materialize");
      for (Index i = 0; i < spec.dim; ++i) v[i] = std::pow(spec.ratio, static_cast<double>(i));
      break;
    case SequenceKind::CustomDecay:
      check_power_param(spec, "materialize");
      for (Index i = 0; i < spec.dim; ++i) {
        v[i] = std::pow(static_cast<double>(i + 1), -spec.decay_param);
      }
      break;
    case SequenceKind::Explicit:
      break;
  }
  return v;
}

double raw_tail(const SequenceSpec& spec, Index n) {
  switch (spec.kind) {
    case SequenceKind::Geometric:
      check_ratio(spec.ratio, "raw_tail");
      return std::pow(spec.ratio, static_cast<double>(n)) / (1.0 - spec.ratio);
    case SequenceKind::CustomDecay: {
      check_power_param(spec, "raw_tail");
      // sum_{k >= n} (k + 1)^{-s} <= integral_n^inf x^{-s} dx
      const double s = spec.decay_param;
      return std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
    }
    default:
      raise(ErrorCode::NoTailModel, where("raw_tail"), "spec has no analytic tail");
  }
}

double raw_total_mass(const SequenceSpec& spec) {
  switch (spec.kind) {
    case SequenceKind::Geometric:
      check_ratio(spec.ratio, "raw_total_mass");
      return 1.0 / (1.0 - spec.ratio);
    case SequenceKind::CustomDecay:
      check_power_param(spec, "raw_total_mass");
      return std::riemann_zeta(spec.decay_param);
    default:
      raise(ErrorCode::NoTailModel, where("raw_total_mass"), "spec has no analytic tail");
  }
}

double tail_fraction(const SequenceSpec& spec, Index n) {
  return raw_tail(spec, n) / raw_total_mass(spec);
}

SimplexPoint make_simplex_point(const SequenceSpec& spec) {
  Vector raw = materialize(spec);
  if (raw.size() < 2) {
    raise(ErrorCode::DimensionTooSmall, where("make_simplex_point"),
          "need dim >= 2, got " + std::to_string(raw.size()));
  }
  if (!all_finite(raw)) {
    raise(ErrorCode::NonFiniteInput, where("make_simplex_point"), "non-finite coordinate");
  }
  if ((raw.array() == 0.0).all()) {
    raise(ErrorCode::NotNormalizable, where("make_simplex_point"), "all-zero input");
  }
  for (Index i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0)) {
      std::ostringstream os;
      os << "coordinate " << i << " = " << raw[i];
      raise(ErrorCode::NonPositiveCoordinate, where("make_simplex_point"), os.str());
    }
  }
  switch (spec.normalization) {
    case Normalization::ToSimplex:
      return SimplexPoint::make(raw / raw.sum(), 0.0);
    case Normalization::None:
      if (spec.has_tail_model()) {
        const double total = raw_total_mass(spec);
        return SimplexPoint::make(raw / total, raw_tail(spec, raw.size()) / total);
      }
      return SimplexPoint::make(std::move(raw), 0.0);
    case Normalization::ToSphere:
      break;
  }
  raise(ErrorCode::InvalidArgument, where("make_simplex_point"),
        "sphere normalization requested; use make_sphere_point");
}

SpherePoint make_sphere_point(const SequenceSpec& spec) {
  if (spec.normalization != Normalization::ToSphere) {
    raise(ErrorCode::InvalidArgument, where("make_sphere_point"), "spec is not sphere-normalized");
  }
  Vector raw = materialize(spec);
  if ((raw.array() == 0.0).all()) {
    raise(ErrorCode::NotNormalizable, where("make_sphere_point"), "all-zero input");
  }
  if (!(spec.q > 1.0)) {
    raise(ErrorCode::InvalidExponent, where("make_sphere_point"), "q must lie in (1, inf)");
  }
  const double norm = lq_norm(raw, spec.q);
  return SpherePoint::make(raw / norm, spec.q, 0.0);
}

TangentVector make_tangent(const SimplexPoint& base, const Vector& raw) {
  if (raw.size() != base.dim()) {
    raise(ErrorCode::LengthMismatch, where("make_tangent"),
          "raw has length " + std::to_string(raw.size()) + ", base has dim " +
              std::to_string(base.dim()));
  }
  if (std::abs(raw.sum()) <= default_tangent_tolerance(raw)) {
    return TangentVector::make(base, raw);
  }
  Vector comps = raw.array() - raw.mean();
  return TangentVector::make(base, std::move(comps));
}

double lq_norm(const Vector& v, double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    std::ostringstream os;
    os << "q = " << q;
    raise(ErrorCode::InvalidExponent, where("lq_norm"), os.str());
  }
  if (v.size() == 0) return 0.0;
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (!std::isfinite(scale)) {
    raise(ErrorCode::NonFiniteInput, where("lq_norm"), "non-finite component");
  }
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / scale, q);
  return scale * std::pow(acc, 1.0 / q);
}

std::vector<SimplexPoint> refine(const SequenceSpec& spec, const std::vector<Index>& dims) {
  if (!spec.has_tail_model()) {
    raise(ErrorCode::NoTailModel, where("refine"), "refinement needs a geometric or decay spec");
  }
  for (std::size_t i = 1; i < dims.size(); ++i) {
    if (dims[i] <= dims[i - 1]) {
      raise(ErrorCode::InvalidArgument, where("refine"), "dims must be strictly increasing");
    }
  }
  std::vector<SimplexPoint> out;
  out.reserve(dims.size());
  for (Index n : dims) out.push_back(make_simplex_point(spec.with_dim(n)));
  return out;
}

bool same_base(const SimplexPoint& a, const SimplexPoint& b) { return a == b; }

}  // namespace simplexgeo
