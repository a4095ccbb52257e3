#pragma once

// Gauss-Legendre rules and adaptive panel quadrature on finite intervals and
// the semi-axis.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "rss/core.hpp"

namespace rss {

template <typename Real = double>
struct GaussRule {
  std::vector<Real> nodes;    // on [-1, 1]
  std::vector<Real> weights;
};

/// n-point Gauss-Legendre rule by Golub-Welsch.
template <typename Real = double>
GaussRule<Real> gauss_legendre(int n) {
  if (n < 1) throw InvalidInput("gauss_legendre: n must be >= 1");
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  Mat J = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Real b = Real(k) / std::sqrt(Real(4 * k * k - 1));
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  GaussRule<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const Real v = es.eigenvectors()(0, i);
    rule.weights[i] = 2 * v * v;
  }
  return rule;
}

/// Cached rules; safe to call from several threads.
template <typename Real = double>
const GaussRule<Real>& cached_gauss_legendre(int n) {
  static std::mutex m;
  static std::map<int, GaussRule<Real>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre<Real>(n)).first;
  return it->second;
}

template <typename Real, typename F>
auto gauss_panel(const F& f, Real a, Real b, int n = 16) {
  const auto& rule = cached_gauss_legendre<Real>(n);
  const Real h = (b - a) / 2, c = (a + b) / 2;
  decltype(f(a)) acc{};
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(c + h * rule.nodes[i]);
  return acc * h;
}

template <typename Real = double>
struct QuadratureOptions {
  Real abs_tol = Real(1e-12);
  Real rel_tol = Real(1e-12);
  int max_depth = 40;
  int max_panels = 200000;
  int order = 16;
};

namespace detail {

template <typename Real, typename F, typename V>
V adaptive_step(const F& f, Real a, Real b, V whole, Real tol, int depth,
                const QuadratureOptions<Real>& opt, int& panels) {
  const Real m = (a + b) / 2;
  const V left = gauss_panel(f, a, m, opt.order);
  const V right = gauss_panel(f, m, b, opt.order);
  panels += 2;
  const V both = left + right;
  if (std::abs(both - whole) <= tol) return both;
  // Intervals at rounding scale cannot be refined further.
  if (b - a <= Real(1e3) * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(a))) return both;
  if (depth >= opt.max_depth || panels > opt.max_panels)
    throw QuadratureFailure("adaptive quadrature did not converge on [" + std::to_string(double(a)) +
                            ", " + std::to_string(double(b)) + "]");
  return adaptive_step(f, a, m, left, tol / 2, depth + 1, opt, panels) +
         adaptive_step(f, m, b, right, tol / 2, depth + 1, opt, panels);
}

}  // namespace detail

/// Adaptive bisection with the two-halves Gauss estimate as error control.
template <typename Real, typename F>
auto integrate(const F& f, Real a, Real b, const QuadratureOptions<Real>& opt = {}) {
  using V = decltype(f(a));
  if (!(b > a)) return V{};
  int panels = 1;
  const V whole = gauss_panel(f, a, b, opt.order);
  const Real tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole));
  return detail::adaptive_step(f, a, b, whole, tol, 0, opt, panels);
}

/// Sum of adaptive integrals over consecutive breakpoints.
template <typename Real, typename F>
auto integrate_breaks(const F& f, const std::vector<Real>& breaks,
                      const QuadratureOptions<Real>& opt = {}) {
  using V = decltype(f(breaks.front()));
  V acc{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) acc += integrate(f, breaks[i], breaks[i + 1], opt);
  return acc;
}

/// Truncation radius with exp(-decay R) < tol / 10.
template <typename Real>
Real truncation_radius(Real decay_rate, Real tol) {
  if (!(decay_rate > 0)) throw InvalidInput("truncation_radius: decay rate must be positive");
  if (!(tol > 0)) throw InvalidInput("truncation_radius: tol must be positive");
  return std::log(Real(10) / tol) / decay_rate;
}

/// Integral over [0, inf) of an exponentially decaying (possibly oscillating)
/// integrand. Integrates to R, then checks that [R, 2R] adds less than tol.
template <typename Real, typename F>
auto quad_semiaxis(const F& f, Real decay_rate, Real tol) {
  const Real R = truncation_radius(decay_rate, tol);
  QuadratureOptions<Real> opt;
  opt.abs_tol = tol / 10;
  opt.rel_tol = tol / 10;
  std::vector<Real> breaks;
  // Unit-decay panels keep the adaptive search local.
  const int n = std::max(1, int(std::ceil(R * decay_rate)));
  for (int i = 0; i <= n; ++i) breaks.push_back(R * Real(i) / Real(n));
  const auto main = integrate_breaks(f, breaks, opt);
  std::vector<Real> tail_breaks;
  for (int i = 0; i <= n; ++i) tail_breaks.push_back(R + R * Real(i) / Real(n));
  const auto tail = integrate_breaks(f, tail_breaks, opt);
  if (!(std::abs(tail) <= tol * std::max(Real(1), std::abs(main))))
    throw QuadratureFailure("quad_semiaxis: result not stable under R -> 2R");
  return main + tail;
}

}  // namespace rss
