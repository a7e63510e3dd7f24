#pragma once

// Complex side: unit vectors in C^N, their phase classes in CP^{N-1}, the torus
// momentum map, diagonal quadratic Hamiltonians and the canonical bracket
//   {f, g} = 2i sum_j (df/dzbar_j dg/dz_j - df/dz_j dg/dzbar_j).
// Momentum maps take values in iR; only their real coefficients are returned.

#include "simplexgeo/sequence.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace simplexgeo {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Unit vector in C^N (sum |z_n|^2 = 1 within 1e-12).
class ComplexPoint {
 public:
  static ComplexPoint make(ComplexVector coords);
  // Scales a nonzero vector onto the unit sphere.
  static ComplexPoint normalize(const ComplexVector& raw);
  // Real positive lift sqrt(p) of a simplex point.
  static ComplexPoint lift(const SimplexPoint& p);

  const ComplexVector& coords() const noexcept { return coords_; }
  Index dim() const noexcept { return coords_.size(); }
  Complex operator[](Index i) const { return coords_[i]; }

 private:
  explicit ComplexPoint(ComplexVector coords) : coords_(std::move(coords)) {}
  ComplexVector coords_;
};

/// Phase class [z], stored in canonical gauge: the first coordinate of
/// largest modulus is real and nonnegative.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const ComplexPoint& z);

  const ComplexPoint& rep() const noexcept { return rep_; }
  Index gauge_index() const noexcept { return gauge_index_; }
  Index dim() const noexcept { return rep_.dim(); }

 private:
  ComplexPoint rep_;
  Index gauge_index_;
};

/// H(z) = sum_n weights_n |z_n|^2.
struct QuadraticHamiltonian {
  Vector weights;

  // H_n: only coordinate n keeps its weight c_n.
  static QuadraticHamiltonian single(const Vector& c, Index n);
};

// Real coefficient of the S^1 momentum map, <z, z>.
double momentum_s1(const ComplexPoint& z);

// Real coefficients (1/2)|z_n|^2 of the torus momentum map. Doubling gives a
// point of the closed simplex.
Vector momentum_torus(const ProjectivePoint& zp);
Vector momentum_torus(const ComplexPoint& z);

double hamiltonian_value(const QuadraticHamiltonian& H, const ProjectivePoint& zp);
double hamiltonian_value(const QuadraticHamiltonian& H, const ComplexPoint& z);

// Scalar fields with known Wirtinger derivatives, plus a generic fallback.
struct DiagonalQuadratic {
  Vector weights;  // f = sum w_n |z_n|^2
};
enum class Part { Real, Imag };
struct CoordinatePart {
  Index index = 0;  // f = Re z_k or Im z_k
  Part part = Part::Real;
};
struct GenericField {
  std::function<double(const ComplexVector&)> f;
  std::string label;
};
using ScalarField = std::variant<DiagonalQuadratic, CoordinatePart, GenericField>;

double evaluate(const ScalarField& f, const ComplexVector& z);

struct WirtingerDerivative {
  ComplexVector dz;
  ComplexVector dzbar;
};

enum class DerivativeMode { Auto, Numeric };

inline constexpr double kWirtingerStep = 1e-6;

/// df/dz and df/dzbar. Registered forms are differentiated exactly under
/// DerivativeMode::Auto; GenericField (or DerivativeMode::Numeric) uses
/// central differences df/dz = (df/dx - i df/dy) / 2 with step 1e-6.
WirtingerDerivative wirtinger(const ScalarField& f, const ComplexVector& z,
                              DerivativeMode mode = DerivativeMode::Auto);

/// Canonical bracket {f, g}. The imaginary part of the raw sum must stay below
/// 1e-10 (scaled by the magnitude of the terms), otherwise ComplexResidue.
double poisson_bracket(const ScalarField& f, const ScalarField& g, const ComplexVector& z,
                       DerivativeMode mode = DerivativeMode::Auto);

/// Closed-form flow of zdot_j = {H, z_j} = 2i c_j z_j: z_n(t) = z_n(0) e^{2i c_n t}.
ComplexPoint hamiltonian_flow(const QuadraticHamiltonian& H, const ComplexPoint& z0, double t);

/// Horizontal (Fubini-Study) gradient of H at z: 2 Diag(c) z minus its complex
/// component along z.
ComplexVector kahler_gradient(const QuadraticHamiltonian& H, const ComplexPoint& z);

/// Horizontal part of the Hamiltonian vector field 2i Diag(c) z.
ComplexVector hamiltonian_vector_field(const QuadraticHamiltonian& H, const ComplexPoint& z);

// |X_H - i grad H|.
double kahler_gradient_check(const QuadraticHamiltonian& H, const ComplexPoint& z);

// Seeded unit vector with independent standard normal real and imaginary parts.
ComplexPoint random_complex_point(Index n, std::uint64_t seed, std::uint64_t stream = 0);

struct IntegrabilityReport {
  double brackets_max_abs = 0.0;          // analytic brackets
  double numeric_brackets_max_abs = 0.0;  // finite-difference brackets
  double conservation_max_drift = 0.0;
  double gram_det = 0.0;
  double canonical_pair = 0.0;            // {Re z_0, Im z_0}
  bool pass = false;
  std::uint64_t seed = 0;
  int trials = 0;
};

inline constexpr double kNumericBracketTol = 1e-8;
inline constexpr double kConservationTol = 1e-10;

/// For each seeded trial point: every pair {H_k, H_m} and {H_(c), H_n}
/// analytically (must be exactly 0) and numerically (<= 1e-8); drift of every
/// H_n along the flow at t in {0.1, 1, 10} (<= 1e-10). The Gram determinant of
/// the ambient gradients of H_n at the first trial point must be positive.
IntegrabilityReport integrability_suite(const Vector& c, int trials, std::uint64_t seed);

// {"brackets_max_abs", "conservation_max_drift", "gram_det", "pass", "seed"}.
std::string to_json(const IntegrabilityReport& report);

}  // namespace simplexgeo
