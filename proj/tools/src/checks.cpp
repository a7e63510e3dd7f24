#include "simplexgeo/tools/checks.hpp"

#include "simplexgeo/connections.hpp"
#include "simplexgeo/error.hpp"
#include "simplexgeo/flows.hpp"
#include "simplexgeo/hamiltonian.hpp"
#include "simplexgeo/metrics.hpp"
#include "simplexgeo/tools/generators.hpp"
#include "simplexgeo/transforms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <string>

namespace simplexgeo::tools {

namespace {

// Runs `body` (which fills metric, pass and detail) and turns any exception
// into a failed result.
template <class Body>
CheckResult guarded(std::string name, double tolerance, Body body) {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::uint64_t stream_id(std::size_t a, std::size_t b = 0, std::size_t c = 0) {
  return (static_cast<std::uint64_t>(a) << 40) ^ (static_cast<std::uint64_t>(b) << 20) ^
         static_cast<std::uint64_t>(c);
}

double relative_gap(double a, double b, double floor) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

}  // namespace

CheckResult check_isometry(const std::vector<Index>& dims, int trials, std::uint64_t seed) {
  return guarded("isometry", 1e-12, [&](CheckResult& r) {
    const RootTransform T(2.0);
    for (std::size_t d = 0; d < dims.size(); ++d) {
      for (int i = 0; i < trials; ++i) {
        Rng rng = make_rng(seed, stream_id(1, d, static_cast<std::size_t>(i)));
        const SimplexPoint p = random_simplex_point(dims[d], rng);
        const TangentVector v = random_tangent(p, rng);
        const TangentVector w = random_tangent(p, rng);
        const double fr = fr_inner(v, w);
        const double pull = pullback_inner(T, v, w);
        r.metric = std::max(r.metric, std::abs(fr - pull) / std::max(1.0, std::abs(fr)));
      }
    }
    r.pass = r.metric <= r.tolerance;
    r.detail = "max |fr_inner - pullback_inner| / max(1, |fr_inner|) = " + sci(r.metric);
  });
}

CheckResult check_root_identity(const std::vector<Index>& dims, const std::vector<double>& qs,
                                int trials, std::uint64_t seed) {
  return guarded("q-root identity", 1e-10, [&](CheckResult& r) {
    double isometry_worst = 0.0;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      for (std::size_t k = 0; k < qs.size(); ++k) {
        const double q = qs[k];
        const RootTransform T(q);
        for (int i = 0; i < trials; ++i) {
          Rng rng = make_rng(seed, stream_id(2, d * 64 + k, static_cast<std::size_t>(i)));
          const SimplexPoint p = random_simplex_point(dims[d], rng);
          const TangentVector v = random_tangent(p, rng);
          const double lhs = lq_norm(pushforward(T, v).comps(), q);
          const double rhs = finsler_norm(v, q) / q;
          r.metric = std::max(r.metric, relative_gap(lhs, rhs, DBL_MIN));
          if (q == 2.0) {
            const double fr = fr_inner(v, v);
            r.metric = std::max(r.metric,
                                relative_gap(finsler_norm(v, 2.0), 2.0 * std::sqrt(fr), DBL_MIN));
            const double pull = pullback_inner(T, v, v);
            isometry_worst = std::max(isometry_worst, std::abs(fr - pull) / std::max(1.0, fr));
          }
        }
      }
    }
    r.pass = r.metric <= r.tolerance && isometry_worst <= 1e-12;
    r.detail = "max relative gap " + sci(r.metric) + "; q = 2 isometry residual " +
               sci(isometry_worst) + " (tol 1e-12)";
  });
}

CheckResult check_gradient_flow(Index n, int trials, std::uint64_t seed) {
  return guarded("gradient flow", 1e-6, [&](CheckResult& r) {
    double ode_worst = 0.0;
    double rk4_worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      Rng rng = make_rng(seed, stream_id(3, static_cast<std::size_t>(i)));
      const LinearObjective obj(random_objective(n, rng));
      const SimplexPoint p0 = random_simplex_point(n, rng);
      for (double t : {0.0, 0.5, 1.0, 2.0}) {
        ode_worst = std::max(ode_worst, flow_ode_residual(obj, p0, t, 1e-4));
      }
      const Trajectory traj = integrate_rk4(gradient_vector_field(obj), p0, 2.0, 1e-3);
      const Vector gap = traj.points.back().coords() - flow_closed_form(obj, p0, 2.0).coords();
      rk4_worst = std::max(rk4_worst, gap.lpNorm<1>());
    }
    r.metric = std::max(ode_worst, rk4_worst);
    r.pass = r.metric <= r.tolerance;
    r.detail = "max l1 ODE residual " + sci(ode_worst) + "; RK4 endpoint gap at t = 2 " +
               sci(rk4_worst);
  });
}

CheckResult check_lp_convergence(const std::vector<Index>& dims, int trials, std::uint64_t seed) {
  return guarded("lp convergence", 0.05, [&](CheckResult& r) {
    constexpr double kTol = 1e-8;
    double worst_gap = 0.0;
    int unconverged = 0;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      for (int i = 0; i < trials; ++i) {
        Rng rng = make_rng(seed, stream_id(4, d, static_cast<std::size_t>(i)));
        const LinearObjective obj(random_decreasing_objective(dims[d], rng));
        const SimplexPoint p0 = random_simplex_point(dims[d], rng);
        const LpSolution sol = solve_lp(obj, p0, kTol);
        if (sol.report.status != LpStatus::Converged) ++unconverged;
        worst_gap = std::max(worst_gap, sol.report.l1_error);
        const double err = sol.report.rate_relative_error;
        r.metric = std::max(r.metric, std::isnan(err) ? INFINITY : err);
      }
    }
    r.pass = unconverged == 0 && worst_gap <= kTol && r.metric <= r.tolerance;
    r.detail = "max rate relative error " + sci(r.metric) + "; max |p - e_0|_1 " +
               sci(worst_gap) + "; unconverged " + std::to_string(unconverged);
  });
}

CheckResult check_e_geodesics(Index n, int instances, std::uint64_t seed) {
  return guarded("e-geodesics", 1e-6, [&](CheckResult& r) {
    double sum_worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      Rng rng = make_rng(seed, stream_id(5, static_cast<std::size_t>(i)));
      const SimplexPoint p0 = random_simplex_point(n, rng);
      const EGeodesic g = make_e_geodesic(p0, random_tangent(p0, rng));
      const Curve curve = [g](double t) { return e_geodesic_eval(g, t); };
      for (double t : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        r.metric = std::max(r.metric, e_connection_residual(curve, t, 1e-3).lpNorm<Eigen::Infinity>());
      }
      for (double t : {-1e4, 1e4}) {
        const SimplexPoint far = e_geodesic_eval(g, t);
        if (!far.coords().allFinite() || far.coords().minCoeff() <= 0.0) {
          sum_worst = INFINITY;
        }
        sum_worst = std::max(sum_worst, std::abs(far.mass() - 1.0));
      }
    }
    const double sum_tol = static_cast<double>(n) * DBL_EPSILON;
    r.pass = r.metric <= r.tolerance && sum_worst <= sum_tol;
    r.detail = "max e-connection residual " + sci(r.metric) + "; |sum - 1| at |t| = 1e4 " +
               sci(sum_worst) + " (tol " + sci(sum_tol) + ")";
  });
}

CheckResult check_flow_geodesic(Index n, int instances, std::uint64_t seed) {
  return guarded("flow-geodesic correspondence", 1e-12, [&](CheckResult& r) {
    for (int i = 0; i < instances; ++i) {
      Rng rng = make_rng(seed, stream_id(6, static_cast<std::size_t>(i)));
      const LinearObjective obj(random_objective(n, rng));
      const SimplexPoint p0 = random_simplex_point(n, rng);
      r.metric = std::max(r.metric, flow_geodesic_correspondence(obj, p0));
    }
    r.pass = r.metric <= r.tolerance;
    r.detail = "max l1 gap between flow and e-geodesic " + sci(r.metric);
  });
}

CheckResult check_integrability(Index n, int trials, std::uint64_t seed) {
  return guarded("integrability", kNumericBracketTol, [&](CheckResult& r) {
    Rng rng = make_rng(seed, stream_id(7));
    const IntegrabilityReport rep = integrability_suite(random_objective(n, rng), trials, seed);
    r.metric = rep.numeric_brackets_max_abs;
    r.pass = rep.pass;
    r.detail = "analytic brackets " + sci(rep.brackets_max_abs) + "; numeric " +
               sci(rep.numeric_brackets_max_abs) + "; drift " + sci(rep.conservation_max_drift) +
               "; gram det " + sci(rep.gram_det) + "; {Re z0, Im z0} = " +
               std::to_string(rep.canonical_pair);
  });
}

CheckResult check_momentum_image(Index n, int samples, std::uint64_t seed) {
  return guarded("momentum image", 1e-12, [&](CheckResult& r) {
    double min_coord = INFINITY;
    double lift_worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const ComplexPoint z = random_complex_point(n, seed, stream_id(8, static_cast<std::size_t>(i)));
      const Vector m = 2.0 * momentum_torus(ProjectivePoint(z));
      min_coord = std::min(min_coord, m.minCoeff());
      r.metric = std::max(r.metric, std::abs(m.sum() - 1.0));

      Rng rng = make_rng(seed, stream_id(8, static_cast<std::size_t>(i), 1));
      const SimplexPoint p = random_simplex_point(n, rng);
      const ComplexPoint lifted = ComplexPoint::lift(p);
      const Vector back = 2.0 * momentum_torus(lifted);
      const Vector back_projective = 2.0 * momentum_torus(ProjectivePoint(lifted));
      lift_worst = std::max(lift_worst, (back - p.coords()).lpNorm<Eigen::Infinity>());
      lift_worst = std::max(lift_worst, (back_projective - p.coords()).lpNorm<Eigen::Infinity>());
    }
    r.pass = min_coord >= 0.0 && r.metric <= r.tolerance && lift_worst <= 1e-14;
    r.detail = "max |sum - 1| " + sci(r.metric) + "; min coordinate " + sci(min_coord) +
               "; lift inversion " + sci(lift_worst) + " (tol 1e-14)";
  });
}

CheckResult check_geodesic_convexity(Index n, int pairs, std::uint64_t seed) {
  return guarded("geodesic convexity", 1e-4, [&](CheckResult& r) {
    constexpr int kNodes = 200;
    constexpr double kH = 0.25 / kNodes;
    double min_coord = INFINITY;
    for (int i = 0; i < pairs; ++i) {
      Rng rng = make_rng(seed, stream_id(9, static_cast<std::size_t>(i)));
      const SimplexPoint p = random_simplex_point(n, rng);
      const SimplexPoint q = random_simplex_point(n, rng);
      const double distance = fr_distance(p, q);
      // Composite midpoint rule for the Fisher-Rao length of the curve.
      double length = 0.0;
      for (int k = 0; k < kNodes; ++k) {
        const double t = (k + 0.5) / kNodes;
        const SimplexPoint mid = fr_geodesic(p, q, t);
        const Vector velocity =
            (fr_geodesic(p, q, t + kH).coords() - fr_geodesic(p, q, t - kH).coords()) / (2.0 * kH);
        const TangentVector v = make_tangent(mid, velocity);
        length += std::sqrt(fr_inner(v, v)) / kNodes;
        min_coord = std::min(min_coord, mid.coords().minCoeff());
      }
      for (double t : {0.0, 1.0}) min_coord = std::min(min_coord, fr_geodesic(p, q, t).coords().minCoeff());
      r.metric = std::max(r.metric, std::abs(length - distance));
    }
    r.pass = min_coord > 0.0 && r.metric <= r.tolerance;
    r.detail = "max |length - fr_distance| " + sci(r.metric) + "; min coordinate " + sci(min_coord);
  });
}

CheckResult check_tail_refinement(const std::vector<double>& ratios,
                                  const std::vector<Index>& dims) {
  // metric: worst (change between N and 2N) / (its bound); must stay <= 1.
  return guarded("tail refinement", 1.0, [&](CheckResult& r) {
    constexpr double kLpTol = 1e-10;
    std::string worst_what = "none";
    auto record = [&](double change, double bound, const std::string& what) {
      const double ratio = change / bound;
      if (!(ratio <= r.metric)) {
        r.metric = std::isnan(ratio) ? INFINITY : ratio;
        worst_what = what + " change " + sci(change) + " vs bound " + sci(bound);
      }
    };
    for (double ratio : ratios) {
      const double other = 0.5 * ratio;
      for (Index n : dims) {
        const std::string at = "r = " + std::to_string(ratio) + ", N = " + std::to_string(n);
        const Index n2 = 2 * n;

        // fr_distance of renormalized truncations. By the triangle inequality
        // the change is at most d(p^N, p^2N) + d(s^N, s^2N), and each of these
        // is asin(sqrt(r^N / (1 + r^N))).
        auto truncation_shift = [n](double r0) {
          const double rn = std::pow(r0, static_cast<double>(n));
          return std::asin(std::sqrt(rn / (1.0 + rn)));
        };
        const double d_n = fr_distance(make_simplex_point(SequenceSpec::geometric(ratio, n)),
                                       make_simplex_point(SequenceSpec::geometric(other, n)));
        const double d_2n = fr_distance(make_simplex_point(SequenceSpec::geometric(ratio, n2)),
                                        make_simplex_point(SequenceSpec::geometric(other, n2)));
        record(std::abs(d_n - d_2n), truncation_shift(ratio) + truncation_shift(other),
               "fr_distance at " + at);

        // objective_value with c_n = 2^-n against the tail-tracked geometric
        // point: the change is the objective on coordinates N..2N-1, at most
        // sup|c| times the recorded tail bound, plus the rounding error of
        // the longer dot product.
        const SequenceSpec c_spec = SequenceSpec::geometric(0.5, n, Normalization::None);
        const SequenceSpec p_spec = SequenceSpec::geometric(ratio, n, Normalization::None);
        const LinearObjective c_n(materialize(c_spec));
        const LinearObjective c_2n(materialize(c_spec.with_dim(n2)));
        const SimplexPoint p_n = make_simplex_point(p_spec);
        const SimplexPoint p_2n = make_simplex_point(p_spec.with_dim(n2));
        const double o_n = objective_value(c_n, p_n);
        const double o_2n = objective_value(c_2n, p_2n);
        const double gamma = 2.0 * n2 * DBL_EPSILON;
        const double rounding =
            gamma * (c_2n.c().cwiseAbs().dot(p_2n.coords()) + c_n.c().cwiseAbs().dot(p_n.coords()));
        record(std::abs(o_2n - o_n),
               c_2n.c().cwiseAbs().maxCoeff() * p_n.tail_bound() + rounding,
               "objective_value at " + at);

        // solve_lp limits (zero-padded to 2N): both exact limits are e_0, so
        // the change is bounded by the tail mass plus both solver tolerances.
        const LpSolution x_n =
            solve_lp(c_n, make_simplex_point(SequenceSpec::geometric(ratio, n)), kLpTol);
        const LpSolution x_2n =
            solve_lp(c_2n, make_simplex_point(SequenceSpec::geometric(ratio, n2)), kLpTol);
        const double change = (x_n.point.coords() - x_2n.point.coords().head(n)).lpNorm<1>() +
                              x_2n.point.coords().tail(n2 - n).lpNorm<1>();
        record(change, tail_fraction(p_spec, n) + 2.0 * kLpTol, "solve_lp limit at " + at);
      }
    }
    r.pass = r.metric <= r.tolerance;
    r.detail = "worst change/bound " + sci(r.metric) + " (" + worst_what + ")";
  });
}

std::vector<CheckResult> run_all_checks(Index n, std::uint64_t seed) {
  return {
      check_isometry({n}, 200, seed),
      check_root_identity({n}, {1.5, 2.0, 3.0, 4.0}, 50, seed),
      check_gradient_flow(n, 5, seed),
      check_lp_convergence({n}, 10, seed),
      check_e_geodesics(n, 50, seed),
      check_flow_geodesic(n, 50, seed),
      check_integrability(n, 4, seed),
      check_momentum_image(n, 500, seed),
      check_geodesic_convexity(n, 100, seed),
      check_tail_refinement({0.3, 0.5, 0.9}, {n}),
  };
}

}  // namespace simplexgeo::tools
