#pragma once

// Boundary form B(u, v) of the symmetricity check at the origin, kept as its
// five Laurent coefficients, and membership tests for the three boundary
// condition families.

#include <complex>
#include <vector>

#include "rss/core.hpp"

namespace rss {

template <typename Real = double>
struct BoundaryFormExpansion {
  using Complex = std::complex<Real>;
  Complex c_m4{}, c_m3{}, c_m2{}, c_m1{}, c_0{};

  std::array<Complex, 5> coefficients() const { return {c_m4, c_m3, c_m2, c_m1, c_0}; }
  Real max_abs() const {
    Real m = 0;
    for (const auto& c : coefficients()) m = std::max(m, std::abs(c));
    return m;
  }
};

/// omega^{kj} = u^(k)(0) conj(v^(j)(0)) - u^(j)(0) conj(v^(k)(0))
template <typename Real>
std::complex<Real> omega(const Jet6<Real>& ju, const Jet6<Real>& jv, int k, int j) {
  if (k < 0 || k > 5 || j < 0 || j > 5) throw InvalidInput("omega: index out of range [0, 5]");
  return ju[k] * std::conj(jv[j]) - ju[j] * std::conj(jv[k]);
}

template <typename Real>
BoundaryFormExpansion<Real> boundary_form(AngularMomentum l, const Jet6<Real>& ju,
                                          const Jet6<Real>& jv) {
  auto w = [&](int k, int j) { return omega(ju, jv, k, j); };
  BoundaryFormExpansion<Real> b;
  if (l.value() == 1) {
    b.c_m4 = Real(-36) * w(0, 1);
    b.c_m3 = Real(-24) * w(0, 2);
    b.c_m2 = Real(-12) * w(0, 3);
    b.c_m1 = Real(-6) * w(0, 4);
    b.c_0 = Real(-1.5) * w(0, 5) - Real(2.5) * w(1, 4) + Real(8) * w(2, 3);
  } else {
    b.c_m4 = Real(-36) * w(0, 1);
    b.c_m3 = 0;
    b.c_m2 = Real(36) * w(1, 2);
    b.c_m1 = Real(24) * w(1, 3) - Real(6) * w(0, 4);
    b.c_0 = Real(-3.5) * w(0, 5) + Real(3.5) * w(1, 4) + Real(16) * w(2, 3);
  }
  return b;
}

/// The defining linear conditions of a family, with the slope given
/// projectively as (num, den): BC1 {d0, d1, num d2 - den d3}, BC21
/// {d0, d4, num d2 - den d3}, BC22 {d1, d3, d4, num^5 d0 - den^5 d5}.
/// A complex slope is allowed so that deficiency solutions can be measured.
template <typename Real>
std::vector<std::complex<Real>> membership_residuals(AngularMomentum l, BoundaryFamily xi,
                                                     std::complex<Real> num,
                                                     std::complex<Real> den,
                                                     const Jet6<Real>& j) {
  if (xi.value() == 1) return {j[0], j[1], num * j[2] - den * j[3]};
  if (l.value() == 1) return {j[0], j[4], num * j[2] - den * j[3]};
  return {j[1], j[3], j[4], std::pow(num, 5) * j[0] - std::pow(den, 5) * j[5]};
}

template <typename Real = double>
struct MembershipResult {
  bool member = false;
  std::vector<std::complex<Real>> residuals;
};

template <typename Real>
MembershipResult<Real> check_membership_slope(AngularMomentum l, BoundaryFamily xi,
                                              std::complex<Real> num, std::complex<Real> den,
                                              const Jet6<Real>& j, Real tol) {
  if (!(tol > 0)) throw InvalidInput("check_membership: tol must be positive");
  MembershipResult<Real> out;
  out.residuals = membership_residuals(l, xi, num, den, j);
  // The slope row is scaled by the slope size so that large kappa is not
  // penalized.
  const Real slope_scale =
      l.value() == 2 && xi.value() == 2
          ? std::max(std::pow(std::abs(num), Real(5)), std::pow(std::abs(den), Real(5)))
          : std::max(std::abs(num), std::abs(den));
  const Real bound = tol * (Real(1) + j.magnitude());
  out.member = true;
  for (std::size_t i = 0; i < out.residuals.size(); ++i) {
    const bool last = i + 1 == out.residuals.size();
    const Real scale = last ? std::max(Real(1), slope_scale) : Real(1);
    if (!(std::abs(out.residuals[i]) <= bound * scale)) out.member = false;
  }
  return out;
}

/// Jet slope of the kappa condition for a spec. The extension parameter is the
/// spectral one (pole at z_p = -c e^{i pi/6} kappa); on jets it appears
/// rescaled: 9/8 kappa for l = 1, 8/5 kappa for (xi=1, l=2), and
/// -(8/7)^{1/5} kappa for (xi=2, l=2).
inline ExtensionParam boundary_slope(const ExtensionSpec& spec) {
  if (spec.kappa.is_infinite()) return ExtensionParam::infinity();
  const double k = spec.kappa.value();
  if (spec.l.value() == 1) return ExtensionParam::finite(9.0 / 8.0 * k);
  if (spec.xi.value() == 1) return ExtensionParam::finite(8.0 / 5.0 * k);
  return ExtensionParam::finite(-std::pow(8.0 / 7.0, 0.2) * k);
}

template <typename Real>
MembershipResult<Real> check_membership(const ExtensionSpec& spec, const Jet6<Real>& j,
                                        Real tol) {
  const ExtensionParam s = boundary_slope(spec);
  return check_membership_slope<Real>(spec.l, spec.xi, Real(s.numerator()),
                                      Real(s.denominator()), j, tol);
}

}  // namespace rss
