#include "simplexgeo/hamiltonian.hpp"

#include "simplexgeo/error.hpp"

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace simplexgeo {

namespace {

std::string where(const char* op) { return std::string("hamiltonian::") + op; }

constexpr Complex kI{0.0, 1.0};

void require_dim(Index a, Index b, const char* op) {
  if (a != b) {
    raise(ErrorCode::DimensionMismatch, where(op), std::to_string(a) + " vs " + std::to_string(b));
  }
}

WirtingerDerivative numeric_wirtinger(const ScalarField& f, const ComplexVector& z) {
  const Index n = z.size();
  WirtingerDerivative d{ComplexVector::Zero(n), ComplexVector::Zero(n)};
  const double h = kWirtingerStep;
  ComplexVector probe = z;
  for (Index j = 0; j < n; ++j) {
    const Complex saved = probe[j];
    probe[j] = saved + h;
    const double fx_plus = evaluate(f, probe);
    probe[j] = saved - h;
    const double fx_minus = evaluate(f, probe);
    probe[j] = saved + kI * h;
    const double fy_plus = evaluate(f, probe);
    probe[j] = saved - kI * h;
    const double fy_minus = evaluate(f, probe);
    probe[j] = saved;
    const double dx = (fx_plus - fx_minus) / (2.0 * h);
    const double dy = (fy_plus - fy_minus) / (2.0 * h);
    d.dz[j] = 0.5 * Complex(dx, -dy);
    d.dzbar[j] = 0.5 * Complex(dx, dy);
  }
  return d;
}

}  // namespace

ComplexPoint ComplexPoint::make(ComplexVector coords) {
  if (!coords.allFinite()) {
    raise(ErrorCode::NonFiniteInput, where("ComplexPoint"), "non-finite coordinate");
  }
  const double mass = coords.squaredNorm();
  if (std::abs(mass - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "sum |z|^2 = " << mass;
    raise(ErrorCode::NotOnSphere, where("ComplexPoint"), os.str());
  }
  return ComplexPoint(std::move(coords));
}

ComplexPoint ComplexPoint::normalize(const ComplexVector& raw) {
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    raise(ErrorCode::NotNormalizable, where("ComplexPoint::normalize"), "zero or non-finite vector");
  }
  return make(raw / norm);
}

ComplexPoint ComplexPoint::lift(const SimplexPoint& p) {
  return make(p.coords().cwiseSqrt().cast<Complex>());
}

ProjectivePoint::ProjectivePoint(const ComplexPoint& z) : rep_(z), gauge_index_(0) {
  const ComplexVector& c = z.coords();
  double best = -1.0;
  for (Index i = 0; i < c.size(); ++i) {
    const double m = std::abs(c[i]);
    if (m > best) {
      best = m;
      gauge_index_ = i;
    }
  }
  if (best <= 0.0) return;
  const Complex phase = c[gauge_index_] / best;
  ComplexVector rotated = c * std::conj(phase);
  rotated[gauge_index_] = Complex(best, 0.0);
  rep_ = ComplexPoint::make(std::move(rotated));
}

QuadraticHamiltonian QuadraticHamiltonian::single(const Vector& c, Index n) {
  Vector w = Vector::Zero(c.size());
  w[n] = c[n];
  return QuadraticHamiltonian{std::move(w)};
}

double momentum_s1(const ComplexPoint& z) { return z.coords().squaredNorm(); }

Vector momentum_torus(const ComplexPoint& z) { return 0.5 * z.coords().cwiseAbs2(); }

Vector momentum_torus(const ProjectivePoint& zp) { return momentum_torus(zp.rep()); }

double hamiltonian_value(const QuadraticHamiltonian& H, const ComplexPoint& z) {
  require_dim(H.weights.size(), z.dim(), "hamiltonian_value");
  return H.weights.dot(z.coords().cwiseAbs2());
}

double hamiltonian_value(const QuadraticHamiltonian& H, const ProjectivePoint& zp) {
  return hamiltonian_value(H, zp.rep());
}

double evaluate(const ScalarField& f, const ComplexVector& z) {
  return std::visit(
      [&](const auto& field) -> double {
        using T = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<T, DiagonalQuadratic>) {
          require_dim(field.weights.size(), z.size(), "evaluate");
          return field.weights.dot(z.cwiseAbs2());
        } else if constexpr (std::is_same_v<T, CoordinatePart>) {
          const Complex zk = z[field.index];
          return field.part == Part::Real ? zk.real() : zk.imag();
        } else {
          return field.f(z);
        }
      },
      f);
}

WirtingerDerivative wirtinger(const ScalarField& f, const ComplexVector& z, DerivativeMode mode) {
  if (mode == DerivativeMode::Numeric || std::holds_alternative<GenericField>(f)) {
    return numeric_wirtinger(f, z);
  }
  const Index n = z.size();
  if (const auto* q = std::get_if<DiagonalQuadratic>(&f)) {
    require_dim(q->weights.size(), n, "wirtinger");
    WirtingerDerivative d;
    d.dz = q->weights.cast<Complex>().cwiseProduct(z.conjugate());
    d.dzbar = q->weights.cast<Complex>().cwiseProduct(z);
    return d;
  }
  const auto& part = std::get<CoordinatePart>(f);
  if (part.index < 0 || part.index >= n) {
    raise(ErrorCode::InvalidArgument, where("wirtinger"), "coordinate index out of range");
  }
  WirtingerDerivative d{ComplexVector::Zero(n), ComplexVector::Zero(n)};
  // Re z = (z + zbar)/2, Im z = (z - zbar)/(2i).
  if (part.part == Part::Real) {
    d.dz[part.index] = 0.5;
    d.dzbar[part.index] = 0.5;
  } else {
    d.dz[part.index] = Complex(0.0, -0.5);
    d.dzbar[part.index] = Complex(0.0, 0.5);
  }
  return d;
}

double poisson_bracket(const ScalarField& f, const ScalarField& g, const ComplexVector& z,
                       DerivativeMode mode) {
  const WirtingerDerivative df = wirtinger(f, z, mode);
  const WirtingerDerivative dg = wirtinger(g, z, mode);
  Complex sum = 0.0;
  double scale = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    const Complex a = df.dzbar[j] * dg.dz[j];
    const Complex b = df.dz[j] * dg.dzbar[j];
    sum += a - b;
    scale += std::abs(a) + std::abs(b);
  }
  const Complex bracket = 2.0 * kI * sum;
  if (std::abs(bracket.imag()) > 1e-10 * std::max(1.0, 2.0 * scale)) {
    std::ostringstream os;
    os << "imaginary part " << bracket.imag();
    raise(ErrorCode::ComplexResidue, where("poisson_bracket"), os.str());
  }
  return bracket.real();
}

ComplexPoint hamiltonian_flow(const QuadraticHamiltonian& H, const ComplexPoint& z0, double t) {
  require_dim(H.weights.size(), z0.dim(), "hamiltonian_flow");
  ComplexVector z = z0.coords();
  for (Index n = 0; n < z.size(); ++n) z[n] *= std::polar(1.0, 2.0 * H.weights[n] * t);
  return ComplexPoint::make(std::move(z));
}

namespace {
ComplexVector horizontal(const ComplexPoint& z, const ComplexVector& u) {
  // Eigen's dot conjugates the first argument: <z, u> = sum conj(z) u.
  return u - z.coords().dot(u) * z.coords();
}
}  // namespace

ComplexVector kahler_gradient(const QuadraticHamiltonian& H, const ComplexPoint& z) {
  require_dim(H.weights.size(), z.dim(), "kahler_gradient");
  return horizontal(z, 2.0 * H.weights.cast<Complex>().cwiseProduct(z.coords()));
}

ComplexVector hamiltonian_vector_field(const QuadraticHamiltonian& H, const ComplexPoint& z) {
  require_dim(H.weights.size(), z.dim(), "hamiltonian_vector_field");
  return horizontal(z, 2.0 * kI * H.weights.cast<Complex>().cwiseProduct(z.coords()));
}

double kahler_gradient_check(const QuadraticHamiltonian& H, const ComplexPoint& z) {
  return (hamiltonian_vector_field(H, z) - kI * kahler_gradient(H, z)).norm();
}

ComplexPoint random_complex_point(Index n, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  ComplexVector raw(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    raw[i] = Complex(re, im);
  }
  return ComplexPoint::normalize(raw);
}

IntegrabilityReport integrability_suite(const Vector& c, int trials, std::uint64_t seed) {
  if (trials < 1) {
    raise(ErrorCode::InvalidArgument, where("integrability_suite"), "need at least one trial");
  }
  if (c.size() < 1 || !c.allFinite()) {
    raise(ErrorCode::InvalidArgument, where("integrability_suite"), "need finite weights");
  }
  const Index n = c.size();
  IntegrabilityReport report;
  report.seed = seed;
  report.trials = trials;

  std::vector<ScalarField> singles;
  std::vector<QuadraticHamiltonian> single_h;
  for (Index k = 0; k < n; ++k) {
    single_h.push_back(QuadraticHamiltonian::single(c, k));
    singles.emplace_back(DiagonalQuadratic{single_h.back().weights});
  }
  const ScalarField full = DiagonalQuadratic{c};
  const QuadraticHamiltonian full_h{c};
  constexpr std::array<double, 3> kTimes{0.1, 1.0, 10.0};

  auto track = [&](const ScalarField& f, const ScalarField& g, const ComplexVector& z) {
    const double exact = poisson_bracket(f, g, z, DerivativeMode::Auto);
    const double approx = poisson_bracket(f, g, z, DerivativeMode::Numeric);
    report.brackets_max_abs = std::max(report.brackets_max_abs, std::abs(exact));
    report.numeric_brackets_max_abs = std::max(report.numeric_brackets_max_abs, std::abs(approx));
  };

  // Trials draw from independent streams of the same seed, so they can be
  // evaluated in any order.
  for (int trial = 0; trial < trials; ++trial) {
    const ComplexPoint z = random_complex_point(n, seed, static_cast<std::uint64_t>(trial));
    for (Index k = 0; k < n; ++k) {
      for (Index m = k + 1; m < n; ++m) track(singles[k], singles[m], z.coords());
      track(full, singles[k], z.coords());
    }
    for (double t : kTimes) {
      const ComplexPoint zt = hamiltonian_flow(full_h, z, t);
      for (Index k = 0; k < n; ++k) {
        const double drift =
            std::abs(hamiltonian_value(single_h[k], zt) - hamiltonian_value(single_h[k], z));
        report.conservation_max_drift = std::max(report.conservation_max_drift, drift);
      }
      report.conservation_max_drift = std::max(
          report.conservation_max_drift,
          std::abs(hamiltonian_value(full_h, zt) - hamiltonian_value(full_h, z)));
    }
  }

  // Ambient real gradients of H_n at the first trial point:
  // (df/dx, df/dy) = (2 Re df/dz, -2 Im df/dz).
  const ComplexPoint z0 = random_complex_point(n, seed, 0);
  Eigen::MatrixXd jac(n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    const WirtingerDerivative d = wirtinger(singles[k], z0.coords());
    for (Index j = 0; j < n; ++j) {
      jac(k, j) = 2.0 * d.dz[j].real();
      jac(k, n + j) = -2.0 * d.dz[j].imag();
    }
  }
  report.gram_det = (jac * jac.transpose()).determinant();
  report.canonical_pair = poisson_bracket(CoordinatePart{0, Part::Real},
                                          CoordinatePart{0, Part::Imag}, z0.coords());

  report.pass = report.brackets_max_abs == 0.0 &&
                report.numeric_brackets_max_abs <= kNumericBracketTol &&
                report.conservation_max_drift <= kConservationTol && report.gram_det > 0.0 &&
                std::abs(report.canonical_pair - 1.0) <= 1e-10;
  return report;
}

}  // namespace simplexgeo
