#pragma once

// Linear program max <c, p> over the closed simplex, solved by the Fisher-Rao
// gradient flow of F(p) = <c, p>.
//
// Time convention: the flow is pdot = W(p) with W_n = p_n c_n - <p, c> p_n,
// whose solution is the softmax curve p_n(t) ~ p_n(0) e^{c_n t}. Against the
// Fisher-Rao metric with its 1/4 factor the gradient of F is 4 W, so the
// metric-gradient flow runs four times faster (t -> 4t) along the same curve.

#include "simplexgeo/connections.hpp"
#include "simplexgeo/sequence.hpp"

#include <string>
#include <vector>

namespace simplexgeo {

class LinearObjective {
 public:
  explicit LinearObjective(Vector c);

  const Vector& c() const noexcept { return c_; }
  Index dim() const noexcept { return c_.size(); }
  // c_n > c_{n+1} for every n.
  bool strictly_decreasing() const noexcept { return strictly_decreasing_; }

 private:
  Vector c_;
  bool strictly_decreasing_;
};

struct StepDiagnostics {
  double residual_l1 = 0.0;
  double sum_drift = 0.0;  // |sum p - 1| before renormalization
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SimplexPoint> points;
  std::vector<double> objective;
  std::vector<StepDiagnostics> diagnostics;

  std::size_t size() const noexcept { return times.size(); }
};

double objective_value(const LinearObjective& obj, const SimplexPoint& p);

// W_n = p_n c_n - <p, c> p_n.
TangentVector gradient_field(const LinearObjective& obj, const SimplexPoint& p);
VectorField gradient_vector_field(const LinearObjective& obj);

// Softmax of log p_n(0) + c_n t. Defined for every real t.
SimplexPoint flow_closed_form(const LinearObjective& obj, const SimplexPoint& p0, double t);

// l1 norm of (central difference of the closed form at t) - W(p(t)).
double flow_ode_residual(const LinearObjective& obj, const SimplexPoint& p0, double t,
                         double h = 1e-4);

// Closed-form flow sampled at 0, dt, 2dt, ..., t_max; residual_l1 holds the ODE
// residual at each sample.
Trajectory sample_flow(const LinearObjective& obj, const SimplexPoint& p0, double t_max, double dt);

/// Classical fixed-step RK4 for pdot = field(p). Each accepted state is divided
/// by its coordinate sum; any stage that leaves the open simplex throws
/// PositivityLost. The last step is shortened to land on t_max. The objective
/// column is left NaN; see fill_objective.
Trajectory integrate_rk4(const VectorField& field, const SimplexPoint& p0, double t_max,
                         double dt);

void fill_objective(Trajectory& traj, const LinearObjective& obj);

enum class LpStatus { Converged, NotConverged };

struct LpReport {
  LpStatus status = LpStatus::NotConverged;
  bool strictly_decreasing = false;  // false -> limit need not be a vertex
  double horizon = 0.0;              // time at which the flow was stopped
  double l1_error = 0.0;             // |p(horizon) - e_0|_1
  double objective = 0.0;
  double measured_rate = 0.0;        // fitted decay rate of |p(t) - e_0|_1
  double expected_rate = 0.0;        // c_0 - c_1
  double rate_relative_error = 0.0;
  std::vector<double> horizons;      // every horizon visited by the doubling
  std::vector<double> errors;        // |p - e_0|_1 at those horizons
};

struct LpSolution {
  SimplexPoint point;
  LpReport report;
};

inline constexpr double kLpMaxHorizon = 1e6;

/// Follows the closed-form flow with horizons 1, 2, 4, ... (capped at 1e6)
/// until |p(t) - e_0|_1 <= tol. The decay rate is the least-squares slope of
/// log |p(t) - e_0|_1 over the last decade of decay before the stopping time.
/// Objectives that are not strictly decreasing still run; the report flags
/// them and the flow need not reach e_0.
LpSolution solve_lp(const LinearObjective& obj, const SimplexPoint& p0, double tol);

/// Max l1 gap between the gradient flow and the e-geodesic with initial
/// velocity v_n = p_n (c_n - <p, c>) over the given times.
double flow_geodesic_correspondence(const LinearObjective& obj, const SimplexPoint& p0,
                                    const std::vector<double>& times = {0.0, 0.5, 1.0, 5.0});

std::string to_string(LpStatus status);

}  // namespace simplexgeo
