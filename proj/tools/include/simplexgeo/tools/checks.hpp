#pragma once

// Property checks over random instances, one per geometric claim the library
// implements. The acceptance binary runs them with their full parameter
// sweeps; `simplexgeo check-all` runs every one at a single dimension.
//
// A check never throws: library errors are caught and reported as failures
// with the message (which names the module and operation) in `detail`.

#include "simplexgeo/sequence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace simplexgeo::tools {

struct CheckResult {
  std::string name;
  bool pass = false;
  double metric = 0.0;     // worst observed value of the checked quantity
  double tolerance = 0.0;  // bound it was compared against
  std::string detail;
};

// |fr_inner - pullback_inner| / max(1, |fr_inner|) <= 1e-12 over random (p, v, w).
CheckResult check_isometry(const std::vector<Index>& dims, int trials, std::uint64_t seed);

// |d(root_q) v|_q = (1/q) finsler_norm(v, q) within relative 1e-10; for q = 2
// additionally finsler_norm(v, 2) = 2 sqrt(fr_inner(v, v)) and the isometry.
CheckResult check_root_identity(const std::vector<Index>& dims, const std::vector<double>& qs,
                                int trials, std::uint64_t seed);

// Closed-form flow against W (central differences, h = 1e-4, l1 <= 1e-6) and
// against the RK4 oracle at t = 2 with dt = 1e-3 (l1 <= 1e-6).
CheckResult check_gradient_flow(Index n, int trials, std::uint64_t seed);

// solve_lp reaches |p - e_0|_1 <= 1e-8 and its fitted rate is c_0 - c_1
// within 5% for strictly decreasing random c.
CheckResult check_lp_convergence(const std::vector<Index>& dims, int trials, std::uint64_t seed);

// e-connection residual along random e-geodesics <= 1e-6 (max norm, h = 1e-3)
// and evaluation at |t| = 1e4 stays in the simplex with unit sum.
CheckResult check_e_geodesics(Index n, int instances, std::uint64_t seed);

// Gradient flow and the e-geodesic with the matching initial velocity agree
// within l1 1e-12 on t in {0, 0.5, 1, 5}.
CheckResult check_flow_geodesic(Index n, int instances, std::uint64_t seed);

// integrability_suite at dimension n with random coefficients.
CheckResult check_integrability(Index n, int trials, std::uint64_t seed);

// Doubled torus momentum map lands in the closed simplex and inverts the
// square-root lift coordinate by coordinate (1e-14).
CheckResult check_momentum_image(Index n, int samples, std::uint64_t seed);

// fr_geodesic stays positive and its quadrature length equals fr_distance
// within 1e-4.
CheckResult check_geodesic_convexity(Index n, int pairs, std::uint64_t seed);

// Geometric specs truncated at N and 2N: fr_distance, objective_value and the
// solve_lp limit move by no more than their analytic tail bounds.
CheckResult check_tail_refinement(const std::vector<double>& ratios,
                                  const std::vector<Index>& dims);

// Every check above at dimension n (tail refinement at n and 2n).
std::vector<CheckResult> run_all_checks(Index n, std::uint64_t seed);

}  // namespace simplexgeo::tools
