#pragma once

// Bound state (kappa < 0) and the continuous-spectrum eigenfunctions of each
// extension.

#include <cmath>
#include <complex>
#include <optional>

#include "rss/core.hpp"
#include "rss/dl_operator.hpp"
#include "rss/resolvent.hpp"

namespace rss {

template <typename Real = double>
struct BoundState {
  std::complex<Real> z_p;
  Real energy;  // z_p^6
  RadialFunction<Real> v;
};

template <typename Real>
std::optional<BoundState<Real>> bound_state(const ExtensionSpec& spec) {
  using Complex = std::complex<Real>;
  if (spec.kappa.is_infinite()) return std::nullopt;
  const Real kappa = Real(spec.kappa.value());
  if (!(kappa < 0)) return std::nullopt;
  const Real c = pole_factor<Real>(spec);
  const std::array<Complex, 3> rates = {Complex(c * kappa), c * cis_pi<Real>(-1, 3) * kappa,
                                        c * cis_pi<Real>(1, 3) * kappa};
  std::array<Complex, 3> amps;
  Real norm;
  const int xi = spec.xi.value(), l = spec.l.value();
  if (xi == 1) {
    amps = {Complex(1), cis_pi<Real>(-2, 3), cis_pi<Real>(2, 3)};
    norm = l == 1 ? std::sqrt(-Real(3) / (2 * kappa))
                  : std::sqrt(-Real(8) / (27 * kappa * kappa * kappa));
  } else {
    amps = {Complex(std::sqrt(Real(3))), -cis_pi<Real>(-1, 6), -cis_pi<Real>(1, 6)};
    norm = l == 1 ? std::sqrt(-Real(1) / (2 * kappa))
                  : std::sqrt(-Real(1) / (5 * std::pow(Real(2), Real(3) / 5) * kappa * kappa * kappa));
  }
  ExponentialSum<Real> base;
  for (int k = 0; k < 3; ++k) base.add(amps[k], rates[k]);
  const Complex zp = pole_location<Real>(spec);
  const Real energy = std::real(std::pow(zp, 6));
  return BoundState<Real>{zp, energy, RadialFunction<Real>(base, spec.l, Complex(norm))};
}

/// Largest relative residual of T^3 v = z_p^6 v on a log grid.
template <typename Real>
Real eigen_residual_discrete(const BoundState<Real>& b, int n_points = 64) {
  const Real scale = b.v.base().max_rate();
  const Real r0 = Real(1e-2) / scale, r1 = Real(30) / scale;
  const Real e = std::abs(b.energy);
  Real worst = 0;
  for (int i = 0; i < n_points; ++i) {
    const Real r = r0 * std::pow(r1 / r0, Real(i) / Real(n_points - 1));
    const auto v = eval(b.v, r);
    worst = std::max(worst, std::abs(apply_t3(b.v, r) - b.energy * v) /
                                (e * std::abs(v) + std::numeric_limits<Real>::min()));
  }
  return worst;
}

template <typename Real = double>
struct ContinuousEigenfunction {
  Real lambda;
  ExtensionSpec spec;
  Real phase;  // arg p(lambda)
  RadialFunction<Real> u;

  Real operator()(Real r) const { return eval(u, r).real(); }
};

/// Real eigenfunction u^lambda of the continuous spectrum, normalized to
/// delta(lambda - lambda').
template <typename Real>
ContinuousEigenfunction<Real> continuous_eigenfunction(const ExtensionSpec& spec, Real lambda) {
  using Complex = std::complex<Real>;
  if (!(lambda > 0)) throw DomainError("continuous_eigenfunction: lambda must be positive");
  const Complex I(0, 1);
  const auto e = [](int a, int b) { return cis_pi<Real>(a, b); };
  const Real num = Real(spec.kappa.numerator());
  const Real den = Real(spec.kappa.denominator());
  const Complex p = denominator_p(spec, Complex(lambda));
  if (std::abs(p) == 0) throw PoleError("continuous_eigenfunction: p(lambda) = 0");
  const Real phi = std::arg(p);
  const Real ap = std::abs(p);
  const Complex up = I * lambda, down = -I * lambda;
  const Complex g1 = -e(-1, 6) * lambda, g2 = -e(1, 6) * lambda;
  const Real root = std::sqrt(2 * pi_v<Real>);
  const int xi = spec.xi.value(), l = spec.l.value();
  ExponentialSum<Real> base;
  Complex scale;
  if (xi == 1 && l == 1) {
    scale = I / (root * lambda);
    base.add(cis(-phi), up);
    base.add(-cis(phi), down);
    base.add(2 * num / ap * e(1, 6), g1);
    base.add(-2 * num / ap * e(-1, 6), g2);
  } else if (xi == 1 && l == 2) {
    scale = I / (root * lambda * lambda);
    base.add(cis(pi_v<Real> / 6 - phi), up);
    base.add(-cis(phi - pi_v<Real> / 6), down);
    base.add(2 * lambda * den / ap * e(-1, 6), g2);
    base.add(-2 * lambda * den / ap * e(1, 6), g1);
  } else if (xi == 2 && l == 1) {
    scale = Complex(1) / (root * lambda);
    base.add(cis(-phi), up);
    base.add(cis(phi), down);
    base.add(-Real(2) * (num + e(1, 6) * lambda) / ap * e(1, 6), g1);
    base.add(-Real(2) * (num + e(-1, 6) * lambda) / ap * e(-1, 6), g2);
  } else {
    scale = I / (root * lambda * lambda);
    const Real L5 = std::pow(lambda * den, Real(5));
    const Real K5 = std::pow(num, Real(5));
    const Complex A = -Real(2) * (L5 - e(1, 6) * K5) / ap;
    base.add(cis(-phi), up);
    base.add(-cis(phi), down);
    base.add(A, g1);
    base.add(-std::conj(A), g2);
  }
  return {lambda, spec, phi, RadialFunction<Real>(base, spec.l, scale)};
}

/// u^lambda(r) u^lambda(s)
template <typename Real>
Real spectral_density(const ExtensionSpec& spec, Real lambda, Real r, Real s) {
  const auto u = continuous_eigenfunction(spec, lambda);
  return u(r) * u(s);
}

/// (6 lambda^5 / 2 pi i) (R(r, s; lambda) - R(r, s; e^{i pi/3} lambda)), the
/// jump of the resolvent across the edges of the sector.
template <typename Real>
std::complex<Real> resolvent_density(const ExtensionSpec& spec, Real lambda, Real r, Real s) {
  using Complex = std::complex<Real>;
  const SpectralPointZ<Real> lo(Complex(lambda), true);
  const SpectralPointZ<Real> hi(cis_pi<Real>(1, 3) * lambda, true);
  const ResolventKernel<Real> Rlo(spec, lo), Rhi(spec, hi);
  return Real(6) * std::pow(lambda, Real(5)) / (Complex(0, 2) * pi_v<Real>) * (Rlo(r, s) - Rhi(r, s));
}

/// sqrt(2/pi) lambda^{-l} D_l sin(lambda r), the free density.
template <typename Real>
RadialFunction<Real> free_eigenfunction(AngularMomentum l, Real lambda) {
  using Complex = std::complex<Real>;
  if (!(lambda > 0)) throw DomainError("free_eigenfunction: lambda must be positive");
  ExponentialSum<Real> base;
  base.add(Complex(0, -0.5), Complex(0, lambda));
  base.add(Complex(0, 0.5), Complex(0, -lambda));
  const Real scale = std::sqrt(2 / pi_v<Real>) / std::pow(lambda, Real(l.value()));
  return RadialFunction<Real>(base, l, Complex(scale));
}

template <typename Real>
Real asymptotic_density(AngularMomentum l, Real lambda, Real r) {
  if (!(r > 0)) throw DomainError("asymptotic_density: r must be positive");
  return eval(free_eigenfunction(l, lambda), r).real();
}

/// The exact density of the common l = 2 extension, (xi=1, kappa=0) and
/// (xi=2, kappa=inf).
template <typename Real>
RadialFunction<Real> common_extension_eigenfunction(Real lambda) {
  using Complex = std::complex<Real>;
  if (!(lambda > 0)) throw DomainError("common_extension_eigenfunction: lambda must be positive");
  ExponentialSum<Real> base;
  base.add(cis_pi<Real>(-1, 6), Complex(0, -lambda));
  base.add(-cis_pi<Real>(1, 6), Complex(0, lambda));
  base.add(cis_pi<Real>(1, 6), -cis_pi<Real>(-1, 6) * lambda);
  base.add(-cis_pi<Real>(-1, 6), -cis_pi<Real>(1, 6) * lambda);
  const Complex scale = Complex(0, 1) / (std::sqrt(2 * pi_v<Real>) * lambda * lambda);
  return RadialFunction<Real>(base, AngularMomentum(2), scale);
}

}  // namespace rss
