#include "simplexgeo/tools/generators.hpp"

#include <algorithm>

namespace simplexgeo::tools {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

SimplexPoint random_simplex_point(Index n, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = std::max(exp1(rng), 1e-300);
  x /= x.sum();
  return SimplexPoint::make(std::move(x));
}

TangentVector random_tangent(const SimplexPoint& p, Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector a(p.dim());
  for (Index i = 0; i < p.dim(); ++i) a[i] = normal(rng);
  const double mean = p.coords().dot(a);
  Vector v = p.coords().cwiseProduct((a.array() - mean).matrix());
  return make_tangent(p, v);
}

Vector random_decreasing_objective(Index n, Rng& rng, double min_gap, double max_gap) {
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  std::uniform_real_distribution<double> gap(min_gap, max_gap);
  Vector c(n);
  c[0] = start(rng);
  for (Index i = 1; i < n; ++i) c[i] = c[i - 1] - gap(rng);
  return c;
}

Vector random_objective(Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector c(n);
  for (Index i = 0; i < n; ++i) c[i] = normal(rng);
  return c;
}

}  // namespace simplexgeo::tools
