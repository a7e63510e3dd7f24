#include "simplexgeo/flows.hpp"

#include "simplexgeo/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace simplexgeo {

namespace {

std::string where(const char* op) { return std::string("flows::") + op; }

void require_dim(const LinearObjective& obj, const SimplexPoint& p, const char* op) {
  if (obj.dim() != p.dim()) {
    raise(ErrorCode::DimensionMismatch, where(op),
          "objective has dim " + std::to_string(obj.dim()) + ", point has dim " +
              std::to_string(p.dim()));
  }
}

// |p - e_0|_1 without cancellation: (1 - p_0) + sum_{n>0} p_n = 2 sum_{n>0} p_n
// on the normalized simplex.
double vertex_gap(const SimplexPoint& p) { return 2.0 * p.coords().tail(p.dim() - 1).sum(); }

// Builds an RK4 state, reporting positivity loss instead of the generic
// membership error. Accepted states are renormalized, intermediate stages not.
SimplexPoint stage_point(Vector x, double t, bool renormalize = false) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      std::ostringstream os;
      os << "coordinate " << i << " = " << x[i] << " near t = " << t << "; shrink dt";
      raise(ErrorCode::PositivityLost, where("integrate_rk4"), os.str());
    }
  }
  if (renormalize) x /= x.sum();
  return SimplexPoint::make(std::move(x), 0.0);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

LinearObjective::LinearObjective(Vector c) : c_(std::move(c)), strictly_decreasing_(true) {
  if (!c_.allFinite()) {
    raise(ErrorCode::NonFiniteInput, where("LinearObjective"), "non-finite coefficient");
  }
  if (c_.size() == 0) {
    raise(ErrorCode::DimensionTooSmall, where("LinearObjective"), "empty objective");
  }
  for (Index i = 0; i + 1 < c_.size(); ++i) {
    if (!(c_[i] > c_[i + 1])) strictly_decreasing_ = false;
  }
}

double objective_value(const LinearObjective& obj, const SimplexPoint& p) {
  require_dim(obj, p, "objective_value");
  return obj.c().dot(p.coords());
}

TangentVector gradient_field(const LinearObjective& obj, const SimplexPoint& p) {
  require_dim(obj, p, "gradient_field");
  const Vector& pc = p.coords();
  const double mean = pc.dot(obj.c());
  Vector w = pc.cwiseProduct((obj.c().array() - mean).matrix());
  return TangentVector::make(p, std::move(w));
}

VectorField gradient_vector_field(const LinearObjective& obj) {
  return VectorField{[obj](const SimplexPoint& p) { return gradient_field(obj, p); },
                     "fisher-rao gradient of <c, p>"};
}

SimplexPoint flow_closed_form(const LinearObjective& obj, const SimplexPoint& p0, double t) {
  require_dim(obj, p0, "flow_closed_form");
  if (p0.tail_bound() != 0.0) {
    raise(ErrorCode::InvalidArgument, where("flow_closed_form"), "initial point must be normalized");
  }
  return e_geodesic_eval(EGeodesic{p0, obj.c(), 0.0}, t);
}

double flow_ode_residual(const LinearObjective& obj, const SimplexPoint& p0, double t, double h) {
  const Vector forward = flow_closed_form(obj, p0, t + h).coords();
  const Vector backward = flow_closed_form(obj, p0, t - h).coords();
  const Vector derivative = (forward - backward) / (2.0 * h);
  const TangentVector w = gradient_field(obj, flow_closed_form(obj, p0, t));
  return (derivative - w.comps()).lpNorm<1>();
}

Trajectory sample_flow(const LinearObjective& obj, const SimplexPoint& p0, double t_max,
                       double dt) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) {
    raise(ErrorCode::InvalidArgument, where("sample_flow"), "need dt > 0 and t_max >= 0");
  }
  const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
  Trajectory traj;
  traj.times.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = k == steps ? t_max : static_cast<double>(k) * dt;
    SimplexPoint p = flow_closed_form(obj, p0, t);
    traj.times.push_back(t);
    traj.objective.push_back(objective_value(obj, p));
    traj.diagnostics.push_back({flow_ode_residual(obj, p0, t), std::abs(p.mass() - 1.0)});
    traj.points.push_back(std::move(p));
  }
  return traj;
}

Trajectory integrate_rk4(const VectorField& field, const SimplexPoint& p0, double t_max,
                         double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !(t_max >= 0.0) || !std::isfinite(t_max)) {
    raise(ErrorCode::InvalidArgument, where("integrate_rk4"), "need dt > 0 and finite t_max >= 0");
  }
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.points.push_back(p0);
  traj.objective.push_back(kNaN);
  traj.diagnostics.push_back({});

  // Whole steps of dt; a final remainder below 1e-9 dt is absorbed.
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  SimplexPoint p = p0;
  double t = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? t_max : static_cast<double>(k) * dt;
    const double step = t_next - t;
    const Vector& x = p.coords();
    const Vector k1 = field(p).comps();
    const Vector k2 = field(stage_point(x + 0.5 * step * k1, t)).comps();
    const Vector k3 = field(stage_point(x + 0.5 * step * k2, t)).comps();
    const Vector k4 = field(stage_point(x + step * k3, t)).comps();
    Vector next = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = std::abs(next.sum() - 1.0);
    p = stage_point(std::move(next), t, true);
    t = t_next;
    traj.times.push_back(t);
    traj.points.push_back(p);
    traj.objective.push_back(kNaN);
    traj.diagnostics.push_back({0.0, drift});
  }
  return traj;
}

void fill_objective(Trajectory& traj, const LinearObjective& obj) {
  traj.objective.resize(traj.points.size());
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    traj.objective[i] = objective_value(obj, traj.points[i]);
  }
}

LpSolution solve_lp(const LinearObjective& obj, const SimplexPoint& p0, double tol) {
  require_dim(obj, p0, "solve_lp");
  if (!(tol > 0.0)) {
    raise(ErrorCode::InvalidArgument, where("solve_lp"), "tolerance must be positive");
  }
  LpReport report;
  report.strictly_decreasing = obj.strictly_decreasing();
  report.expected_rate = obj.c()[0] - obj.c()[1];

  auto gap_at = [&](double t) { return vertex_gap(flow_closed_form(obj, p0, t)); };

  double horizon = 1.0;
  double gap = gap_at(horizon);
  report.horizons.push_back(horizon);
  report.errors.push_back(gap);
  while (gap > tol && horizon < kLpMaxHorizon) {
    horizon = std::min(2.0 * horizon, kLpMaxHorizon);
    gap = gap_at(horizon);
    report.horizons.push_back(horizon);
    report.errors.push_back(gap);
  }

  SimplexPoint point = flow_closed_form(obj, p0, horizon);
  report.horizon = horizon;
  report.l1_error = gap;
  report.objective = objective_value(obj, point);
  report.status = gap <= tol ? LpStatus::Converged : LpStatus::NotConverged;

  if (report.status == LpStatus::Converged && report.strictly_decreasing) {
    // Last decade: from the time the gap was 10x its final value up to the
    // horizon. The gap decreases monotonically for decreasing c, so bisect.
    const double target = 10.0 * gap;
    double lo = 0.0;
    double hi = horizon;
    if (gap_at(0.0) > target) {
      for (int it = 0; it < 200 && hi - lo > 1e-12 * horizon; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap_at(mid) > target ? lo : hi) = mid;
      }
    }
    constexpr int kSamples = 64;
    std::vector<double> ts, logs;
    for (int k = 0; k < kSamples; ++k) {
      const double t = lo + (horizon - lo) * k / (kSamples - 1);
      ts.push_back(t);
      logs.push_back(std::log(gap_at(t)));
    }
    report.measured_rate = -least_squares_slope(ts, logs);
    report.rate_relative_error =
        std::abs(report.measured_rate - report.expected_rate) / std::abs(report.expected_rate);
  } else {
    report.measured_rate = std::numeric_limits<double>::quiet_NaN();
    report.rate_relative_error = std::numeric_limits<double>::quiet_NaN();
  }
  return LpSolution{std::move(point), std::move(report)};
}

double flow_geodesic_correspondence(const LinearObjective& obj, const SimplexPoint& p0,
                                    const std::vector<double>& times) {
  require_dim(obj, p0, "flow_geodesic_correspondence");
  const Vector& pc = p0.coords();
  const double lambda = pc.dot(obj.c());
  Vector v = pc.cwiseProduct((obj.c().array() - lambda).matrix());
  const EGeodesic g = make_e_geodesic(p0, TangentVector::make(p0, std::move(v)));
  double worst = 0.0;
  for (double t : times) {
    const Vector gap = flow_closed_form(obj, p0, t).coords() - e_geodesic_eval(g, t).coords();
    worst = std::max(worst, gap.lpNorm<1>());
  }
  return worst;
}

std::string to_string(LpStatus status) {
  return status == LpStatus::Converged ? "Converged" : "NotConverged";
}

}  // namespace simplexgeo
