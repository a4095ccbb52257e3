#pragma once

// Spectral transform of an extension: forward coefficients c(lambda) =
// <u^lambda, f> (plus <v, f> when a bound state exists), the inverse
// synthesis, functional calculus phi(T) f and the Parseval check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "rss/boundary_form.hpp"
#include "rss/core.hpp"
#include "rss/dl_operator.hpp"
#include "rss/finite_difference.hpp"
#include "rss/parallel.hpp"
#include "rss/quadrature.hpp"
#include "rss/resolvent.hpp"
#include "rss/spectrum.hpp"

namespace rss {

/// Samples (r_i, f_i) on a strictly increasing positive grid, interpolated by
/// a natural cubic spline and taken as zero beyond the last point.
template <typename Real = double>
class SampledFunction {
 public:
  SampledFunction(std::vector<Real> grid, std::vector<Real> values, Real decay_rate = 0)
      : grid_(std::move(grid)), values_(std::move(values)), decay_rate_(decay_rate) {
    if (grid_.size() != values_.size()) throw InvalidInput("SampledFunction: size mismatch");
    if (grid_.size() < 4) throw InvalidInput("SampledFunction: need at least 4 samples");
    if (!(grid_.front() > 0)) throw InvalidInput("SampledFunction: grid must be positive");
    for (std::size_t i = 1; i < grid_.size(); ++i)
      if (!(grid_[i] > grid_[i - 1])) throw InvalidInput("SampledFunction: grid must be strictly increasing");
    for (Real v : values_)
      if (!std::isfinite(v)) throw InvalidInput("SampledFunction: non-finite sample");
    build_spline();
  }

  const std::vector<Real>& grid() const { return grid_; }
  const std::vector<Real>& values() const { return values_; }
  Real decay_rate() const { return decay_rate_; }

  Real operator()(Real r) const {
    if (r > grid_.back()) return 0;
    if (r <= grid_.front()) {
      // The domain functions vanish at the origin; interpolate linearly to 0.
      return values_.front() * r / grid_.front();
    }
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
    const std::size_t i = std::size_t(it - grid_.begin()) - 1;
    const Real h = grid_[i + 1] - grid_[i];
    const Real a = (grid_[i + 1] - r) / h, b = (r - grid_[i]) / h;
    return a * values_[i] + b * values_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6;
  }

 private:
  void build_spline() {
    const std::size_t n = grid_.size();
    m_.assign(n, Real(0));
    std::vector<Real> c(n, Real(0)), d(n, Real(0));
    // Thomas algorithm for the natural spline second derivatives.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Real h0 = grid_[i] - grid_[i - 1], h1 = grid_[i + 1] - grid_[i];
      const Real diag = (h0 + h1) / 3 - h0 / 6 * c[i - 1];
      c[i] = h1 / 6 / diag;
      const Real rhs = (values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0;
      d[i] = (rhs - h0 / 6 * d[i - 1]) / diag;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = d[i] - c[i] * m_[i + 1];
      if (i == 1) break;
    }
  }

  std::vector<Real> grid_, values_, m_;
  Real decay_rate_;
};

/// Quadrature nodes and weights on a half line.
template <typename Real = double>
struct QuadratureGrid {
  std::vector<Real> nodes, weights;
  std::size_t size() const { return nodes.size(); }
};

template <typename Real = double>
struct TransformOptions {
  Real lambda_max = 40;
  Real lambda_panel = Real(0.25);
  Real lambda_log_min = Real(1e-8);
  Real lambda_log_end = Real(0.25);
  Real r_max = 0;    // 0 selects max(40, 36 / slowest bound-state decay)
  Real r_panel = 0;  // 0 selects 10 / lambda_max
  int order = 16;
};

template <typename Real>
QuadratureGrid<Real> panel_grid(const std::vector<Real>& breaks, int order) {
  const auto& rule = cached_gauss_legendre<Real>(order);
  QuadratureGrid<Real> g;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const Real a = breaks[p], b = breaks[p + 1];
    const Real h = (b - a) / 2, c = (a + b) / 2;
    for (int i = 0; i < order; ++i) {
      g.nodes.push_back(c + h * rule.nodes[i]);
      g.weights.push_back(h * rule.weights[i]);
    }
  }
  return g;
}

/// Geometric panels (ratio 2) on [lambda_log_min, lambda_log_end], then
/// uniform panels up to lambda_max.
template <typename Real>
QuadratureGrid<Real> make_lambda_grid(const TransformOptions<Real>& opt) {
  if (!(opt.lambda_log_min > 0) || !(opt.lambda_log_end > opt.lambda_log_min) ||
      !(opt.lambda_max > opt.lambda_log_end) || !(opt.lambda_panel > 0))
    throw GridError("make_lambda_grid: inconsistent lambda range");
  std::vector<Real> breaks = {opt.lambda_log_end};
  while (breaks.back() / 2 > opt.lambda_log_min) breaks.push_back(breaks.back() / 2);
  breaks.push_back(0);
  std::reverse(breaks.begin(), breaks.end());
  const int n = int(std::ceil((opt.lambda_max - opt.lambda_log_end) / opt.lambda_panel));
  for (int i = 1; i <= n; ++i)
    breaks.push_back(opt.lambda_log_end + (opt.lambda_max - opt.lambda_log_end) * Real(i) / Real(n));
  return panel_grid(breaks, opt.order);
}

template <typename Real>
QuadratureGrid<Real> make_radial_grid(const TransformOptions<Real>& opt) {
  const Real panel = opt.r_panel > 0 ? opt.r_panel : Real(10) / opt.lambda_max;
  if (!(opt.r_max > 0)) throw GridError("make_radial_grid: r_max must be positive");
  const int n = int(std::ceil(opt.r_max / panel));
  std::vector<Real> breaks;
  for (int i = 0; i <= n; ++i) breaks.push_back(opt.r_max * Real(i) / Real(n));
  if (!(panel > 0)) throw GridError("make_radial_grid: panel width must be positive");
  return panel_grid(breaks, opt.order);
}

template <typename Real = double>
struct SpectralCoefficients {
  std::vector<Real> lambda, weights, c;
  std::optional<Real> c_discrete;
};

/// phi(x) = sqrt(x); undefined on the negative bound-state energy.
inline std::complex<double> phi_sqrt(double x) {
  if (x < 0) throw FunctionDomainError("sqrt is undefined at the negative eigenvalue " + std::to_string(x));
  return std::sqrt(x);
}

template <typename Real = double>
class SpectralTransform {
 public:
  using Complex = std::complex<Real>;
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  SpectralTransform(const ExtensionSpec& spec, const TransformOptions<Real>& opt = {})
      : spec_(spec), lambda_(make_lambda_grid(opt)), bound_(bound_state<Real>(spec)) {
    TransformOptions<Real> ropt = opt;
    if (!(ropt.r_max > 0)) {
      ropt.r_max = 40;
      if (bound_) ropt.r_max = std::max(ropt.r_max, Real(36) / bound_->v.base().decay_rate());
    }
    r_ = make_radial_grid(ropt);
    U_.resize(Eigen::Index(lambda_.size()), Eigen::Index(r_.size()));
    parallel_for(lambda_.size(), [&](std::size_t i) {
      const auto u = continuous_eigenfunction(spec_, lambda_.nodes[i]);
      const CompiledRadialFunction<Real> cu(u.u);
      for (std::size_t j = 0; j < r_.size(); ++j) U_(Eigen::Index(i), Eigen::Index(j)) = cu(r_.nodes[j]).real();
    });
    if (bound_) v_ = sample(bound_->v);
  }

  const ExtensionSpec& spec() const { return spec_; }
  const QuadratureGrid<Real>& lambda_grid() const { return lambda_; }
  const QuadratureGrid<Real>& radial_grid() const { return r_; }
  const std::optional<BoundState<Real>>& bound() const { return bound_; }

  /// Real part of F at the radial nodes.
  Vector sample(const RadialFunction<Real>& F) const {
    const CompiledRadialFunction<Real> cf(F);
    Vector out(Eigen::Index(r_.size()));
    for (std::size_t j = 0; j < r_.size(); ++j) out(Eigen::Index(j)) = cf(r_.nodes[j]).real();
    return out;
  }

  template <typename F>
  Vector sample_callable(const F& f) const {
    Vector out(Eigen::Index(r_.size()));
    for (std::size_t j = 0; j < r_.size(); ++j) out(Eigen::Index(j)) = Real(f(r_.nodes[j]));
    return out;
  }

  Real norm2(const Vector& f) const {
    Real s = 0;
    for (std::size_t j = 0; j < r_.size(); ++j) s += r_.weights[j] * f(Eigen::Index(j)) * f(Eigen::Index(j));
    return s;
  }

  SpectralCoefficients<Real> forward(const Vector& f) const {
    if (std::size_t(f.size()) != r_.size()) throw InvalidInput("forward: sample size mismatch");
    Vector wf = f;
    for (std::size_t j = 0; j < r_.size(); ++j) wf(Eigen::Index(j)) *= r_.weights[j];
    const Vector c = U_ * wf;
    if (!c.allFinite()) throw QuadratureFailure("forward: non-finite spectral coefficients");
    SpectralCoefficients<Real> out;
    out.lambda = lambda_.nodes;
    out.weights = lambda_.weights;
    out.c.assign(c.data(), c.data() + c.size());
    if (bound_) out.c_discrete = v_.dot(wf);
    return out;
  }

  /// phi(T) f at the radial nodes from the coefficients of f.
  CVector apply_function(const std::function<Complex(Real)>& phi, const SpectralCoefficients<Real>& c) const {
    check_coefficients(c);
    CVector weighted(Eigen::Index(c.c.size()));
    for (std::size_t i = 0; i < c.c.size(); ++i) {
      const Complex ph = phi(std::pow(c.lambda[i], Real(6)));
      if (!std::isfinite(ph.real()) || !std::isfinite(ph.imag()))
        throw FunctionDomainError("phi is not finite on the continuous spectrum");
      weighted(Eigen::Index(i)) = c.weights[i] * c.c[i] * ph;
    }
    CVector out = U_.transpose().template cast<Complex>() * weighted;
    if (c.c_discrete && bound_) {
      const Complex ph = phi(bound_->energy);
      if (!std::isfinite(ph.real()) || !std::isfinite(ph.imag()))
        throw FunctionDomainError("phi is undefined at the bound-state energy");
      out += (ph * *c.c_discrete) * v_.template cast<Complex>();
    }
    return out;
  }

  /// Synthesis at the radial nodes; include_discrete = false drops the
  /// bound-state term.
  Vector inverse(const SpectralCoefficients<Real>& c, bool include_discrete = true) const {
    check_coefficients(c);
    Vector weighted(Eigen::Index(c.c.size()));
    for (std::size_t i = 0; i < c.c.size(); ++i) weighted(Eigen::Index(i)) = c.weights[i] * c.c[i];
    Vector out = U_.transpose() * weighted;
    if (include_discrete && c.c_discrete && bound_) out += *c.c_discrete * v_;
    return out;
  }

  /// Synthesis at arbitrary radii.
  SampledFunction<Real> inverse_at(const SpectralCoefficients<Real>& c, const std::vector<Real>& r_grid) const {
    std::vector<Real> values(r_grid.size(), Real(0));
    std::vector<std::vector<Real>> partial(c.c.size());
    parallel_for(c.c.size(), [&](std::size_t i) {
      const auto u = continuous_eigenfunction(spec_, c.lambda[i]);
      const CompiledRadialFunction<Real> cu(u.u);
      partial[i].resize(r_grid.size());
      for (std::size_t j = 0; j < r_grid.size(); ++j) partial[i][j] = c.weights[i] * c.c[i] * cu(r_grid[j]).real();
    });
    for (const auto& p : partial)
      for (std::size_t j = 0; j < r_grid.size(); ++j) values[j] += p[j];
    if (c.c_discrete && bound_) {
      const CompiledRadialFunction<Real> cv(bound_->v);
      for (std::size_t j = 0; j < r_grid.size(); ++j) values[j] += *c.c_discrete * cv(r_grid[j]).real();
    }
    return SampledFunction<Real>(r_grid, values);
  }

  /// |‖f‖² - (∫c² dλ + c_d²)| / ‖f‖², 0 for f = 0.
  Real parseval_defect(const Vector& f) const {
    const Real n2 = norm2(f);
    const auto c = forward(f);
    Real s = 0;
    for (std::size_t i = 0; i < c.c.size(); ++i) s += c.weights[i] * c.c[i] * c.c[i];
    if (c.c_discrete) s += *c.c_discrete * *c.c_discrete;
    if (n2 == 0) return s == 0 ? Real(0) : std::numeric_limits<Real>::infinity();
    return std::abs(n2 - s) / n2;
  }

  /// ‖inverse(forward(f)) - f‖ / ‖f‖ on the radial nodes.
  Real round_trip_error(const Vector& f) const {
    const Real n2 = norm2(f);
    const Vector back = inverse(forward(f));
    const Real e2 = norm2(back - f);
    if (n2 == 0) return std::sqrt(e2);
    return std::sqrt(e2 / n2);
  }

 private:
  void check_coefficients(const SpectralCoefficients<Real>& c) const {
    if (c.c.size() != lambda_.size() || c.weights.size() != lambda_.size())
      throw InvalidInput("spectral coefficients do not match the lambda grid");
    for (std::size_t i = 1; i < c.lambda.size(); ++i)
      if (!(c.lambda[i] > c.lambda[i - 1])) throw InvalidInput("lambda grid must be strictly increasing");
  }

  ExtensionSpec spec_;
  QuadratureGrid<Real> lambda_;
  std::optional<BoundState<Real>> bound_;
  QuadratureGrid<Real> r_;
  Matrix U_;
  Vector v_;
};

/// A real D_l-image of an exponential sum with exponents mu (-1, -e^{+-i pi/3})
/// whose jet, and the jet of its images under T^3 up to levels - 1, satisfy the
/// extension's conditions. Normalized to unit L2 norm. `which` selects a
/// vector of the admissible subspace.
template <typename Real>
RadialFunction<Real> domain_test_function(const ExtensionSpec& spec, const std::vector<Real>& mus, int which = 0,
                                          int levels = 2) {
  using Complex = std::complex<Real>;
  using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  if (mus.empty()) throw InvalidInput("domain_test_function: need at least one rate");
  std::vector<Complex> rates;
  for (Real mu : mus) {
    if (!(mu > 0)) throw InvalidInput("domain_test_function: rates must be positive");
    rates.push_back(Complex(-mu));
    rates.push_back(-cis_pi<Real>(1, 3) * mu);
    rates.push_back(-cis_pi<Real>(-1, 3) * mu);
  }
  const ExtensionParam slope = boundary_slope(spec);
  const Complex num = Real(slope.numerator()), den = Real(slope.denominator());
  const int n = int(rates.size());
  std::vector<std::vector<Complex>> rows;
  for (int q = 0; q < levels; ++q) {
    std::vector<std::vector<Complex>> cols(n);
    for (int m = 0; m < n; ++m) {
      const Complex lift = std::pow(rates[m], 6 * q);
      auto jet = detail::monomial_jet(spec.l, rates[m]);
      for (int j = 0; j < 6; ++j) jet[j] *= lift;
      cols[m] = membership_residuals(spec.l, spec.xi, num, den, jet);
      cols[m].insert(cols[m].begin(), lift);
    }
    for (std::size_t i = 0; i < cols[0].size(); ++i) {
      std::vector<Complex> row(n);
      for (int m = 0; m < n; ++m) row[m] = cols[m][i];
      rows.push_back(row);
    }
  }
  CMat A(Eigen::Index(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int m = 0; m < n; ++m) A(Eigen::Index(i), m) = rows[i][m];
    const Real norm = A.row(Eigen::Index(i)).norm();
    if (norm > 0) A.row(Eigen::Index(i)) /= norm;
  }
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > Real(1e-10) * sv(0)) ++rank;
  const int nullity = n - rank;
  if (nullity < 1) throw InvalidInput("domain_test_function: too few rates for the boundary conditions");
  const auto a = svd.matrixV().col(rank + (which % nullity));
  // Realness: pair each amplitude with the conjugate of its conjugate-rate partner.
  auto partner = [&](int m) { return m % 3 == 0 ? m : (m % 3 == 1 ? m + 1 : m - 1); };
  ExponentialSum<Real> base;
  std::vector<Complex> amp(n);
  Real size = 0;
  for (int m = 0; m < n; ++m) {
    amp[m] = a(m) + std::conj(a(partner(m)));
    size += std::abs(amp[m]);
  }
  if (size < Real(1e-8)) {
    for (int m = 0; m < n; ++m) amp[m] = Complex(0, 1) * a(m) + std::conj(Complex(0, 1) * a(partner(m)));
  }
  for (int m = 0; m < n; ++m) base.add(amp[m], rates[m]);
  RadialFunction<Real> f(base, spec.l);
  const CompiledRadialFunction<Real> cf(f);
  const Real norm2 = quad_semiaxis([&](Real r) { return std::norm(cf(r)); }, 2 * base.decay_rate(), Real(1e-13));
  return f.scaled(Complex(1 / std::sqrt(norm2)));
}

/// T^3 f on the interior of a sampled function's grid by finite differences.
template <typename Real>
Real fd_apply(AngularMomentum l, const SampledFunction<Real>& f, Real r) {
  const auto& g = f.grid();
  const auto it = std::lower_bound(g.begin(), g.end(), r);
  if (it == g.end()) throw GridError("fd_apply: r beyond the grid");
  std::size_t i = std::size_t(it - g.begin());
  if (i > 0 && std::abs(g[i - 1] - r) < std::abs(g[i] - r)) --i;
  if (std::abs(g[i] - r) > Real(1e-12) * std::max(Real(1), r))
    throw GridError("fd_apply: r is not a grid point");
  return fd_apply_grid(l, g, f.values(), i);
}

}  // namespace rss
