#pragma once

// Square-integrable solutions of T^3 q = +-i rho^6 q and the deficiency indices.

#include <cmath>
#include <complex>
#include <utility>

#include "rss/core.hpp"
#include "rss/dl_operator.hpp"

namespace rss {

enum class DeficiencySign { plus, minus };

template <typename Real = double>
struct DeficiencySolution {
  RadialFunction<Real> f;
  DeficiencySign sign;
  Real rho;
  BoundaryFamily xi;
  AngularMomentum l;
};

template <typename Real>
DeficiencySolution<Real> deficiency_solution(AngularMomentum l, BoundaryFamily xi,
                                             DeficiencySign sign, Real rho) {
  using Complex = std::complex<Real>;
  if (!(rho > 0)) throw InvalidInput("deficiency_solution: rho must be positive");
  const int s = sign == DeficiencySign::plus ? 1 : -1;
  const std::array<Complex, 3> rates = {cis_pi<Real>(-3 * s, 4) * rho,
                                        -cis_pi<Real>(-s, 12) * rho,
                                        -cis_pi<Real>(-5 * s, 12) * rho};
  std::array<Complex, 3> amps;
  if (xi.value() == 1) {
    amps = {Complex(1), cis_pi<Real>(-2 * s, 3), cis_pi<Real>(2 * s, 3)};
  } else {
    amps = {cis_pi<Real>(-5 * s, 6), Complex(std::sqrt(Real(3))), cis_pi<Real>(5 * s, 6)};
  }
  ExponentialSum<Real> base;
  for (int k = 0; k < 3; ++k) base.add(amps[k], rates[k]);
  return {RadialFunction<Real>(base, l), sign, rho, xi, l};
}

/// max over a log grid of |(T^3 -+ i rho^6) q| / (rho^6 |q| + eps)
template <typename Real>
Real kernel_residual(const DeficiencySolution<Real>& q, int n_points = 64) {
  using Complex = std::complex<Real>;
  const Real rho6 = std::pow(q.rho, Real(6));
  const Complex target = (q.sign == DeficiencySign::plus ? Complex(0, 1) : Complex(0, -1)) * rho6;
  const Real r0 = Real(1e-2) / q.rho, r1 = Real(20) / q.rho;
  const Real eps = std::numeric_limits<Real>::min();
  Real worst = 0;
  for (int i = 0; i < n_points; ++i) {
    const Real r = r0 * std::pow(r1 / r0, Real(i) / Real(n_points - 1));
    const Complex v = eval(q.f, r);
    const Complex t3 = apply_t3(q.f, r);
    worst = std::max(worst, std::abs(t3 - target * v) / (rho6 * std::abs(v) + eps));
  }
  return worst;
}

/// (2, 2) for l in {1, 2}, after checking that q^1 and q^2 are independent.
inline std::pair<int, int> deficiency_indices(int l_value) {
  if (l_value == 3) throw Unsupported("deficiency_indices: l = 3 is not covered");
  const AngularMomentum l(l_value);
  for (auto sign : {DeficiencySign::plus, DeficiencySign::minus}) {
    const auto q1 = deficiency_solution<double>(l, BoundaryFamily(1), sign, 1.0);
    const auto q2 = deficiency_solution<double>(l, BoundaryFamily(2), sign, 1.0);
    const double ra = 0.7, rb = 2.3;
    const auto a11 = eval(q1.f, ra), a12 = eval(q1.f, rb);
    const auto a21 = eval(q2.f, ra), a22 = eval(q2.f, rb);
    const double det = std::abs(a11 * a22 - a12 * a21);
    const double n1 = std::hypot(std::abs(a11), std::abs(a12));
    const double n2 = std::hypot(std::abs(a21), std::abs(a22));
    if (!(det > 1e-6 * n1 * n2))
      throw InternalInconsistency("deficiency_indices: q1 and q2 are linearly dependent");
  }
  return {2, 2};
}

}  // namespace rss
