#pragma once

// Seeded random instances shared by the check suite, the CLI and the tests.
// Every generator draws from an explicit engine so runs are reproducible from
// (seed, stream).

#include "simplexgeo/flows.hpp"
#include "simplexgeo/sequence.hpp"

#include <cstdint>
#include <random>

namespace simplexgeo::tools {

using Rng = std::mt19937_64;

// Engine keyed by a seed and an independent stream number.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Uniform (flat Dirichlet) point of the open simplex, coordinates >= 1e-300.
SimplexPoint random_simplex_point(Index n, Rng& rng);

// v_n = p_n (a_n - <p, a>) with a_n standard normal scaled by `scale`. The
// log-ratio velocity a stays O(scale), so curves built from v stay tame.
TangentVector random_tangent(const SimplexPoint& p, Rng& rng, double scale = 1.0);

// Strictly decreasing coefficients: c_0 uniform in [-1, 1], successive gaps
// uniform in [min_gap, max_gap].
Vector random_decreasing_objective(Index n, Rng& rng, double min_gap = 0.2,
                                   double max_gap = 1.0);

// Independent standard normal coefficients.
Vector random_objective(Index n, Rng& rng);

}  // namespace simplexgeo::tools
