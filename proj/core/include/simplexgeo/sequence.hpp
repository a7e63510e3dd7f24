#pragma once

// Truncated-sequence data model. An N-vector always stands for the first N
// coordinates of an infinite sequence; `tail_bound` records how much mass the
// truncation discarded.

#include <Eigen/Core>

#include <string>
#include <vector>

namespace simplexgeo {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Absolute membership tolerance for an N-vector (1e-12 per coordinate).
inline double membership_tolerance(Index n) { return 1e-12 * static_cast<double>(n); }

/// Strictly positive probability vector of length N >= 2 whose coordinate sum
/// lies in [1 - tail_bound, 1].
class SimplexPoint {
 public:
  static SimplexPoint make(Vector coords, double tail_bound = 0.0);

  const Vector& coords() const noexcept { return coords_; }
  Index dim() const noexcept { return coords_.size(); }
  double tail_bound() const noexcept { return tail_bound_; }
  double operator[](Index i) const { return coords_[i]; }
  double mass() const { return coords_.sum(); }

  friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) {
    return a.tail_bound_ == b.tail_bound_ && a.coords_.size() == b.coords_.size() &&
           a.coords_ == b.coords_;
  }

 private:
  SimplexPoint(Vector coords, double tail_bound)
      : coords_(std::move(coords)), tail_bound_(tail_bound) {}

  Vector coords_;
  double tail_bound_;
};

/// Zero-sum vector attached to a SimplexPoint.
class TangentVector {
 public:
  // Validates length and zero sum. `tolerance < 0` selects the default
  // 1e-12 * N * max(1, |comps|_inf).
  static TangentVector make(SimplexPoint base, Vector comps, double tolerance = -1.0);

  const SimplexPoint& base() const noexcept { return base_; }
  const Vector& comps() const noexcept { return comps_; }
  Index dim() const noexcept { return comps_.size(); }
  double operator[](Index i) const { return comps_[i]; }

  // l2 norm of comps_n / sqrt(base_n); finite at any N, tracked under refinement.
  double weighted_norm() const;

 private:
  TangentVector(SimplexPoint base, Vector comps)
      : base_(std::move(base)), comps_(std::move(comps)) {}

  SimplexPoint base_;
  Vector comps_;
};

double default_tangent_tolerance(const Vector& comps);

/// Point of the l^q unit sphere (sum |x_n|^q = 1, or 1 - tail_bound for
/// truncations of a tailed sequence).
class SpherePoint {
 public:
  static SpherePoint make(Vector coords, double q, double tail_bound = 0.0);

  const Vector& coords() const noexcept { return coords_; }
  Index dim() const noexcept { return coords_.size(); }
  double q() const noexcept { return q_; }
  bool positive() const noexcept { return positive_; }
  double tail_bound() const noexcept { return tail_bound_; }
  double operator[](Index i) const { return coords_[i]; }

 private:
  SpherePoint(Vector coords, double q, double tail_bound, bool positive)
      : coords_(std::move(coords)), q_(q), tail_bound_(tail_bound), positive_(positive) {}

  Vector coords_;
  double q_;
  double tail_bound_;
  bool positive_;
};

/// Tangent vector to the l^q sphere: sum sign(x_n)|x_n|^{q-1} v_n = 0.
class SphereTangent {
 public:
  // Tangency is checked relative to max(1, sum |x_n|^{q-1} |v_n|).
  static SphereTangent make(SpherePoint base, Vector comps, double tolerance = 1e-12);

  const SpherePoint& base() const noexcept { return base_; }
  const Vector& comps() const noexcept { return comps_; }
  Index dim() const noexcept { return comps_.size(); }
  double operator[](Index i) const { return comps_[i]; }

 private:
  SphereTangent(SpherePoint base, Vector comps)
      : base_(std::move(base)), comps_(std::move(comps)) {}

  SpherePoint base_;
  Vector comps_;
};

// Residual of the sphere tangency condition, sum sign(x)|x|^{q-1} v.
double sphere_tangency_residual(const SpherePoint& x, const Vector& v);

enum class SequenceKind { Explicit, Uniform, Geometric, CustomDecay };
enum class Normalization { ToSimplex, ToSphere, None };

/// Recipe for a truncated sequence. Raw coordinates have leading coefficient 1:
/// uniform -> 1, geometric -> r^n, custom decay "power" with parameter s ->
/// (n + 1)^{-s}.
struct SequenceSpec {
  SequenceKind kind = SequenceKind::Uniform;
  Index dim = 0;
  double ratio = 0.0;
  std::vector<double> coords;
  std::string decay_name;
  double decay_param = 0.0;
  Normalization normalization = Normalization::ToSimplex;
  double q = 2.0;

  static SequenceSpec uniform(Index dim, Normalization norm = Normalization::ToSimplex);
  static SequenceSpec geometric(double ratio, Index dim,
                                Normalization norm = Normalization::ToSimplex);
  static SequenceSpec explicit_coords(std::vector<double> coords,
                                      Normalization norm = Normalization::ToSimplex);
  static SequenceSpec custom_decay(std::string name, double param, Index dim,
                                   Normalization norm = Normalization::ToSimplex);

  SequenceSpec with_dim(Index n) const;
  bool has_tail_model() const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

// Raw (unnormalized) coordinates of a spec.
Vector materialize(const SequenceSpec& spec);

// Analytic bound on the raw mass beyond the first n terms: r^n / (1 - r) for
// geometric specs, n^{1-s} / (s - 1) for power decay. Throws NoTailModel for
// explicit and uniform specs.
double raw_tail(const SequenceSpec& spec, Index n);

// Total raw mass of the infinite sequence (1 / (1 - r), zeta(s)).
double raw_total_mass(const SequenceSpec& spec);

// Fraction of the infinite sequence's mass discarded by truncation at n.
double tail_fraction(const SequenceSpec& spec, Index n);

SimplexPoint make_simplex_point(const SequenceSpec& spec);
SpherePoint make_sphere_point(const SequenceSpec& spec);

// Projects raw onto the zero-sum hyperplane by subtracting its mean; vectors
// that already sum to zero (within the tangent tolerance) come back unchanged.
TangentVector make_tangent(const SimplexPoint& base, const Vector& raw);

double lq_norm(const Vector& v, double q);

std::vector<SimplexPoint> refine(const SequenceSpec& spec, const std::vector<Index>& dims);

// JSON: {"kind", "dim", "ratio"?, "coords"?, "normalize", "q"?}; custom decays
// additionally carry "name" and "param".
std::string to_json(const SequenceSpec& spec);
SequenceSpec sequence_spec_from_json(const std::string& text);

bool same_base(const SimplexPoint& a, const SimplexPoint& b);

}  // namespace simplexgeo
