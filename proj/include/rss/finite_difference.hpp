#pragma once

// Finite-difference application of T^3 = (-d^2/dr^2 + L/r^2)^3, used as an
// oracle independent of the closed forms.

#include <array>
#include <cmath>
#include <vector>

#include "rss/core.hpp"

namespace rss {

/// Fornberg weights: w[m][j] is the weight of f(x[j]) in f^(m)(x0), m <= max_order.
template <typename Real>
std::vector<std::vector<Real>> fornberg_weights(Real x0, const std::vector<Real>& x, int max_order) {
  const int n = int(x.size());
  if (n == 0 || max_order < 0 || max_order >= n)
    throw InvalidInput("fornberg_weights: need more nodes than the derivative order");
  std::vector<std::vector<Real>> c(max_order + 1, std::vector<Real>(n, Real(0)));
  Real c1 = 1, c4 = x[0] - x0;
  c[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    Real c2 = 1;
    const Real c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const Real c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (Real(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - Real(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Coefficients a_m(r) of T^3 f = sum_m a_m f^(m), m = 0..6.
template <typename Real>
std::array<Real, 7> t3_expansion(int L, Real r) {
  const Real l = Real(L);
  return {l * (l - 20) * (l - 6) / std::pow(r, 6),
          12 * l * (l - 8) / std::pow(r, 5),
          -3 * l * (l - 14) / std::pow(r, 4),
          -12 * l / std::pow(r, 3),
          3 * l / (r * r),
          Real(0),
          Real(-1)};
}

constexpr int kFdHalfWidth = 6;

/// T^3 f at r from the 13 samples f(r + j h), j = -6..6.
template <typename Real, typename F>
auto fd_apply_uniform(AngularMomentum l, const F& f, Real r, Real h) {
  if (!(h > 0)) throw InvalidInput("fd_apply_uniform: h must be positive");
  if (!(r - kFdHalfWidth * h > 0)) throw GridError("fd_apply_uniform: stencil reaches the origin");
  std::vector<Real> x(2 * kFdHalfWidth + 1);
  for (int j = -kFdHalfWidth; j <= kFdHalfWidth; ++j) x[j + kFdHalfWidth] = r + Real(j) * h;
  const auto w = fornberg_weights(r, x, 6);
  const auto a = t3_expansion(l.L(), r);
  decltype(f(r)) acc{};
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto fx = f(x[j]);
    Real coef = 0;
    for (int m = 0; m <= 6; ++m) coef += a[m] * w[m][j];
    acc += coef * fx;
  }
  return acc;
}

/// T^3 f at grid point grid[i] of a (possibly nonuniform) grid.
template <typename Real, typename V>
V fd_apply_grid(AngularMomentum l, const std::vector<Real>& grid, const std::vector<V>& values,
                std::size_t i) {
  if (grid.size() != values.size()) throw InvalidInput("fd_apply_grid: size mismatch");
  if (i < std::size_t(kFdHalfWidth) || i + kFdHalfWidth >= grid.size())
    throw GridError("fd_apply_grid: stencil out of range");
  std::vector<Real> x(grid.begin() + (i - kFdHalfWidth), grid.begin() + (i + kFdHalfWidth + 1));
  const auto w = fornberg_weights(grid[i], x, 6);
  const auto a = t3_expansion(l.L(), grid[i]);
  V acc{};
  for (std::size_t j = 0; j < x.size(); ++j) {
    Real coef = 0;
    for (int m = 0; m <= 6; ++m) coef += a[m] * w[m][j];
    acc += coef * values[i - kFdHalfWidth + j];
  }
  return acc;
}

}  // namespace rss
