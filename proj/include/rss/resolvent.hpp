#pragma once

// Resolvent kernel of T^3 - z^6 in the sector 0 < arg z < pi/3.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "rss/boundary_form.hpp"
#include "rss/core.hpp"
#include "rss/dl_operator.hpp"
#include "rss/quadrature.hpp"

namespace rss {

template <typename Real = double>
class SpectralPointZ {
 public:
  using Complex = std::complex<Real>;

  /// allow_boundary admits arg z in {0, pi/3}, used for boundary values.
  explicit SpectralPointZ(Complex z, bool allow_boundary = false) : z_(z), boundary_(allow_boundary) {
    if (z == Complex{}) throw SectorError("z must be nonzero");
    const Real a = std::arg(z);
    const Real hi = pi_v<Real> / 3;
    const Real slack = 64 * std::numeric_limits<Real>::epsilon();
    const bool inside = allow_boundary ? (a >= -slack && a <= hi + slack) : (a > 0 && a < hi);
    if (!inside) throw SectorError("z must satisfy 0 < arg z < pi/3");
  }
  Complex value() const { return z_; }
  bool boundary_allowed() const { return boundary_; }

 private:
  Complex z_;
  bool boundary_;
};

/// zeta_k = i e^{i pi k / 3} z, the decay rate of g_k.
template <typename Real>
std::complex<Real> basis_rate(const SpectralPointZ<Real>& z, int k) {
  return std::complex<Real>(0, 1) * cis_pi<Real>(k % 3, 3) * z.value();
}

template <typename Real>
RadialFunction<Real> basis_g(AngularMomentum l, const SpectralPointZ<Real>& z, int k) {
  if (k < 0 || k > 2) throw InvalidInput("basis_g: k must be 0, 1 or 2");
  return RadialFunction<Real>(ExponentialSum<Real>{{{1, basis_rate(z, k)}}}, l);
}

template <typename Real>
RadialFunction<Real> basis_d(AngularMomentum l, const SpectralPointZ<Real>& z, int k) {
  if (k < 0 || k > 2) throw InvalidInput("basis_d: k must be 0, 1 or 2");
  return RadialFunction<Real>(ExponentialSum<Real>{{{1, -basis_rate(z, k)}}}, l);
}

/// W_k = d_k' g_k - d_k g_k' = -2i (e^{i pi k/3} z)^{2l+1}
template <typename Real>
std::complex<Real> wronskian(AngularMomentum l, const SpectralPointZ<Real>& z, int k) {
  return std::complex<Real>(0, -2) * std::pow(cis_pi<Real>(k, 3) * z.value(), 2 * l.value() + 1);
}

template <typename Real>
std::complex<Real> wronskian_numeric(AngularMomentum l, const SpectralPointZ<Real>& z, int k, Real r) {
  const auto g = basis_g(l, z, k);
  const auto d = basis_d(l, z, k);
  return derivative(d, r, 1) * derivative(g, r, 0) - derivative(d, r, 0) * derivative(g, r, 1);
}

template <typename Real = double>
struct CoefficientSet {
  using Complex = std::complex<Real>;
  std::array<Complex, 3> alpha{}, beta{}, gamma{};
  Complex p{};
};

enum class TableVariant { corrected, printed };

/// The denominator p(z) of the coefficient tables, homogeneous in
/// (kappa, z) so that kappa = inf is the projective limit.
template <typename Real>
std::complex<Real> denominator_p(const ExtensionSpec& spec, std::complex<Real> z) {
  const Real num = Real(spec.kappa.numerator());
  const Real den = Real(spec.kappa.denominator());
  const std::complex<Real> Z = z * den;
  const auto e = [](int a, int b) { return cis_pi<Real>(a, b); };
  const int xi = spec.xi.value(), l = spec.l.value();
  if (xi == 1 && l == 1) return Real(3) * Z + Real(2) * e(1, 6) * num;
  if (xi == 1 && l == 2) return Real(2) * Z + Real(3) * e(1, 6) * num;
  if (xi == 2 && l == 1) return Z + Real(2) * e(1, 6) * num;
  return std::pow(Z, 5) + Real(2) * e(5, 6) * std::pow(num, Real(5));
}

/// Pole z_p = -c e^{i pi/6} kappa with c = 2/3, 3/2, 2, 2^{1/5}.
template <typename Real>
Real pole_factor(const ExtensionSpec& spec) {
  const int xi = spec.xi.value(), l = spec.l.value();
  if (xi == 1) return l == 1 ? Real(2) / 3 : Real(3) / 2;
  return l == 1 ? Real(2) : std::pow(Real(2), Real(1) / 5);
}

template <typename Real>
std::complex<Real> pole_location(const ExtensionSpec& spec) {
  if (spec.kappa.is_infinite()) throw DomainError("pole_location: no pole for kappa = inf");
  return -pole_factor<Real>(spec) * cis_pi<Real>(1, 6) * Real(spec.kappa.value());
}

template <typename Real>
CoefficientSet<Real> coefficients_closed_form(const ExtensionSpec& spec, const SpectralPointZ<Real>& zp,
                                              TableVariant variant = TableVariant::corrected) {
  using Complex = std::complex<Real>;
  const auto e = [](int a, int b) { return cis_pi<Real>(a, b); };
  const Complex I(0, 1);
  const Real num = Real(spec.kappa.numerator());
  const Real den = Real(spec.kappa.denominator());
  const Complex z = zp.value() * den;
  const Complex k = num;
  const Complex p = denominator_p(spec, zp.value());
  const int xi = spec.xi.value(), l = spec.l.value();
  const Real scale = (xi == 2 && l == 2) ? std::pow(std::abs(z), Real(5)) + std::pow(std::abs(num), Real(5))
                                         : std::abs(z) + std::abs(num);
  if (std::abs(p) <= 1e3 * std::numeric_limits<Real>::epsilon() * scale)
    throw PoleError("coefficient denominator vanishes: z is the bound-state pole");
  const bool printed = variant == TableVariant::printed;
  CoefficientSet<Real> c;
  c.p = p;
  if (xi == 1 && l == 1) {
    c.alpha = {(Real(2) * e(5, 6) * k - Real(3) * z) / p, -Real(3) * z / p,
               printed ? -(Real(2) * e(5, 6) * k + Real(3) * z) / p : -(Real(2) * I * k + Real(3) * z) / p};
    c.beta = {printed ? Real(2) * std::exp(Complex(Real(7) * pi_v<Real> / 6)) * k / p
                      : Real(2) * e(7, 6) * k / p,
              Real(2) * e(5, 6) * k / p, Real(2) * I * k / p};
    c.gamma = {Real(2) * e(-1, 6) * k / p, -Real(2) * I * k / p, Real(2) * e(7, 6) * k / p};
  } else if (xi == 1 && l == 2) {
    c.alpha = {printed ? (Real(3) * e(7, 6) * k - Real(3) * e(1, 3) * z) / p
                       : (Real(3) * e(7, 6) * k - Real(2) * e(1, 3) * z) / p,
               Real(3) * e(7, 6) * k / p,
               printed ? (Real(3) * e(7, 6) * k + Real(2) * e(1, 3) * z) / p
                       : (Real(3) * e(7, 6) * k + Real(2) * e(2, 3) * z) / p};
    c.beta = {Real(2) * e(1, 3) * z / p, Real(2) * e(2, 3) * z / p, -Real(2) * z / p};
    c.gamma = {-Real(2) * z / p, -Real(2) * e(1, 3) * z / p, -Real(2) * e(2, 3) * z / p};
  } else if (xi == 2 && l == 1) {
    c.alpha = {printed ? (z - Real(2) * e(-1, 6) * k) / p : (z + Real(2) * e(-1, 6) * k) / p,
               -Real(3) * z / p, (z + Real(2) * I * k) / p};
    c.beta = {-Real(2) * (e(1, 3) * z + e(1, 6) * k) / p,
              printed ? Real(2) * (e(1, 3) * z + e(-1, 6) * k) / p
                      : Real(2) * (e(1, 3) * z + e(5, 6) * k) / p,
              -Real(2) * (e(1, 3) * z + I * k) / p};
    c.gamma = {Real(2) * (e(2, 3) * z + e(5, 6) * k) / p, -Real(2) * (e(2, 3) * z + I * k) / p,
               Real(2) * (e(2, 3) * z - e(1, 6) * k) / p};
  } else {
    const Complex Z = std::pow(z, 5);
    const Complex K = std::pow(num, Real(5));
    c.alpha = {(Real(2) * e(1, 6) * K - Z) / p, Real(3) * Z / p, -(Z + Real(2) * I * K) / p};
    c.beta = {Real(2) * (Z - e(1, 6) * K) / p, -Real(2) * (Z + I * K) / p,
              -Real(2) * (Z + e(5, 6) * K) / p};
    c.gamma = {-Real(2) * (Z + e(5, 6) * K) / p, Real(2) * (e(1, 6) * K - Z) / p,
               Real(2) * (Z + I * K) / p};
  }
  return c;
}

namespace detail {

/// Jet of D_l e^{chi r} (regular part), as used in linear boundary rows.
template <typename Real>
Jet6<Real> monomial_jet(AngularMomentum l, std::complex<Real> chi) {
  Jet6<Real> j;
  Real fact_j = 1;
  for (int m = 0; m < 6; ++m) {
    if (m > 0) fact_j *= Real(m);
    const int n = m + l.value();
    Real fact_n = 1;
    for (int i = 2; i <= n; ++i) fact_n *= Real(i);
    j[m] = fact_j * Real(dl_monomial_coefficient(l, n)) / fact_n * std::pow(chi, n);
  }
  return j;
}

}  // namespace detail

/// Solves the boundary rows (regularity plus the family's jet conditions) for
/// alpha_k, beta_k, gamma_k in least squares.
template <typename Real>
CoefficientSet<Real> coefficients_oracle(const ExtensionSpec& spec, const SpectralPointZ<Real>& z) {
  using Complex = std::complex<Real>;
  using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  const ExtensionParam slope = boundary_slope(spec);
  const Complex num = Real(slope.numerator()), den = Real(slope.denominator());
  CoefficientSet<Real> out;
  out.p = denominator_p(spec, z.value());
  for (int k = 0; k < 3; ++k) {
    const std::array<Complex, 4> rates = {-basis_rate(z, k), basis_rate(z, k), basis_rate(z, k + 1),
                                          basis_rate(z, k + 2)};
    std::array<std::vector<Complex>, 4> cols;
    for (int m = 0; m < 4; ++m) {
      const auto jet = detail::monomial_jet(spec.l, rates[m]);
      cols[m] = membership_residuals(spec.l, spec.xi, num, den, jet);
      cols[m].insert(cols[m].begin(), Complex(1));
    }
    const int rows = int(cols[0].size());
    Mat A(rows, 3);
    Vec b(rows);
    for (int i = 0; i < rows; ++i) {
      b(i) = -cols[0][i];
      for (int m = 1; m < 4; ++m) A(i, m - 1) = cols[m][i];
      const Real norm = std::max({std::abs(b(i)), A.row(i).norm(), std::numeric_limits<Real>::min()});
      b(i) /= norm;
      A.row(i) /= norm;
    }
    Eigen::ColPivHouseholderQR<Mat> qr(A);
    qr.setThreshold(Real(1e-10));
    if (qr.rank() < 3) throw InternalInconsistency("coefficients_oracle: singular boundary system");
    const Vec x = qr.solve(b);
    if ((A * x - b).norm() > Real(1e-8) * std::max(Real(1), b.norm()))
      throw InternalInconsistency("coefficients_oracle: boundary system is inconsistent");
    out.alpha[k] = x(0);
    out.beta[k] = x(1);
    out.gamma[k] = x(2);
  }
  return out;
}

/// Residuals of the three cross relations between beta, gamma and W.
template <typename Real>
std::array<Real, 3> cross_relation_residuals(AngularMomentum l, const SpectralPointZ<Real>& z,
                                             const CoefficientSet<Real>& c) {
  const auto W0 = wronskian(l, z, 0), W1 = wronskian(l, z, 1), W2 = wronskian(l, z, 2);
  const auto w1 = cis_pi<Real>(2, 3), w2 = cis_pi<Real>(4, 3);
  const std::array<std::complex<Real>, 6> q = {c.beta[0] / W0, w1 * c.gamma[1] / W1, c.gamma[0] / W0,
                                                 w2 * c.beta[2] / W2, w1 * c.beta[1] / W1, w2 * c.gamma[2] / W2};
  Real s = std::numeric_limits<Real>::min();
  for (const auto& x : q) s = std::max(s, std::abs(x));
  s = std::max({s, std::abs(c.alpha[0] / W0), std::abs(c.alpha[1] / W1), std::abs(c.alpha[2] / W2)});
  auto rel = [s](std::complex<Real> a, std::complex<Real> b) { return std::abs(a - b) / s; };
  return {rel(c.beta[0] / W0, w1 * c.gamma[1] / W1), rel(c.gamma[0] / W0, w2 * c.beta[2] / W2),
          rel(w1 * c.beta[1] / W1, w2 * c.gamma[2] / W2)};
}

/// h_k = d_k + alpha_k g_k + beta_k g_{k+1} + gamma_k g_{k+2}
template <typename Real>
RadialFunction<Real> h_solution(AngularMomentum l, const SpectralPointZ<Real>& z,
                                const CoefficientSet<Real>& c, int k) {
  if (k < 0 || k > 2) throw InvalidInput("h_solution: k must be 0, 1 or 2");
  ExponentialSum<Real> base;
  base.add(1, -basis_rate(z, k));
  base.add(c.alpha[k], basis_rate(z, k));
  base.add(c.beta[k], basis_rate(z, k + 1));
  base.add(c.gamma[k], basis_rate(z, k + 2));
  return RadialFunction<Real>(base, l);
}

template <typename Real>
RadialFunction<Real> h_solution(const ExtensionSpec& spec, const SpectralPointZ<Real>& z, int k,
                                TableVariant variant = TableVariant::corrected) {
  return h_solution(spec.l, z, coefficients_closed_form(spec, z, variant), k);
}

template <typename Real = double>
struct KernelValue {
  using Complex = std::complex<Real>;
  Complex total{};
  Complex R0{}, R1{}, R2{}, Rg{};
  Complex parts_sum() const { return R0 + R1 + R2 + Rg; }
};

/// R(r, s; z) for one extension and one z, with the coefficient set and the
/// h_k precomputed.
template <typename Real = double>
class ResolventKernel {
 public:
  using Complex = std::complex<Real>;

  ResolventKernel(const ExtensionSpec& spec, const SpectralPointZ<Real>& z,
                  TableVariant variant = TableVariant::corrected)
      : ResolventKernel(spec, z, coefficients_closed_form(spec, z, variant)) {}

  ResolventKernel(const ExtensionSpec& spec, const SpectralPointZ<Real>& z, CoefficientSet<Real> c)
      : spec_(spec), z_(z), c_(c) {
    const Complex zz = z.value();
    for (int k = 0; k < 3; ++k) {
      W_[k] = wronskian(spec.l, z, k);
      pref_[k] = cis_pi<Real>(2 * k, 3) / (Real(3) * std::pow(zz, 4) * W_[k]);
      g_.push_back(basis_g(spec.l, z, k));
      d_.push_back(basis_d(spec.l, z, k));
      h_.push_back(h_solution(spec.l, z, c_, k));
      gc_.emplace_back(g_.back());
      hc_.emplace_back(h_.back());
    }
  }

  const CoefficientSet<Real>& coefficients() const { return c_; }
  const ExtensionSpec& spec() const { return spec_; }
  const SpectralPointZ<Real>& z() const { return z_; }
  const RadialFunction<Real>& h(int k) const { return h_.at(k); }
  const RadialFunction<Real>& g(int k) const { return g_.at(k); }

  /// The theta-structured form: sum_k pref_k h_k(min) g_k(max).
  Complex operator()(Real r, Real s) const {
    check_radii(r, s);
    const Real lo = std::min(r, s), hi = std::max(r, s);
    Complex acc{};
    for (int k = 0; k < 3; ++k) acc += pref_[k] * hc_[k](lo) * gc_[k](hi);
    return acc;
  }

  /// Total plus the split into the growing-solution parts R_k and the
  /// symmetric smooth part R_g (written with beta only, through the cross
  /// relations).
  KernelValue<Real> split(Real r, Real s) const {
    check_radii(r, s);
    const Real lo = std::min(r, s), hi = std::max(r, s);
    KernelValue<Real> v;
    v.total = (*this)(r, s);
    std::array<Complex, 3> gr, gs;
    for (int k = 0; k < 3; ++k) {
      gr[k] = eval(g_[k], r);
      gs[k] = eval(g_[k], s);
    }
    std::array<Complex*, 3> parts = {&v.R0, &v.R1, &v.R2};
    for (int k = 0; k < 3; ++k) *parts[k] = pref_[k] * eval(d_[k], lo) * eval(g_[k], hi);
    Complex rg{};
    for (int k = 0; k < 3; ++k) {
      rg += pref_[k] * c_.alpha[k] * gr[k] * gs[k];
      const int k1 = (k + 1) % 3;
      rg += pref_[k] * c_.beta[k] * (gr[k1] * gs[k] + gr[k] * gs[k1]);
    }
    v.Rg = rg;
    return v;
  }

  enum class Side { below, above };

  /// d^order/dr^order of R at fixed s, using the r < s (below) or r > s
  /// (above) analytic branch regardless of where r lies.
  Complex derivative_r(Real r, Real s, int order, Side side) const {
    check_radii(r, s);
    Complex acc{};
    for (int k = 0; k < 3; ++k) {
      if (side == Side::below)
        acc += pref_[k] * derivative(h_[k], r, order) * eval(g_[k], s);
      else
        acc += pref_[k] * eval(h_[k], s) * derivative(g_[k], r, order);
    }
    return acc;
  }

  /// Slowest decay rate of the kernel in its larger argument.
  Real decay_rate() const {
    Real m = std::numeric_limits<Real>::infinity();
    for (int k = 0; k < 3; ++k) m = std::min(m, -basis_rate(z_, k).real());
    return m;
  }

 private:
  static void check_radii(Real r, Real s) {
    if (!(r > 0) || !(s > 0)) throw DomainError("kernel: r and s must be positive");
  }

  ExtensionSpec spec_;
  SpectralPointZ<Real> z_;
  CoefficientSet<Real> c_;
  std::array<Complex, 3> W_{}, pref_{};
  std::vector<RadialFunction<Real>> g_, d_, h_;
  std::vector<CompiledRadialFunction<Real>> gc_, hc_;
};

template <typename Real>
KernelValue<Real> kernel(const ExtensionSpec& spec, const SpectralPointZ<Real>& z, Real r, Real s) {
  return ResolventKernel<Real>(spec, z).split(r, s);
}

/// u(r) = int_0^inf R(r, s; z) f(s) ds, split at s = r where the kernel has a
/// kink in its fifth derivative.
template <typename Real, typename F>
std::complex<Real> apply_resolvent(const ResolventKernel<Real>& R, const F& f, Real r, Real f_decay,
                                   Real tol = Real(1e-10)) {
  if (!(r > 0)) throw DomainError("apply_resolvent: r must be positive");
  const Real decay = std::min(f_decay, R.decay_rate());
  if (!(decay > 0)) throw QuadratureFailure("apply_resolvent: integrand does not decay");
  const auto integrand = [&](Real s) { return R(r, s) * std::complex<Real>(f(s)); };
  QuadratureOptions<Real> opt;
  opt.abs_tol = tol / 10;
  opt.rel_tol = tol / 10;
  const Real R1 = r + truncation_radius(decay, tol);
  std::vector<Real> breaks = {0};
  const int n_in = std::max(1, int(std::ceil(r * decay)));
  for (int i = 1; i <= n_in; ++i) breaks.push_back(r * Real(i) / Real(n_in));
  const int n_out = std::max(1, int(std::ceil((R1 - r) * decay)));
  for (int i = 1; i <= n_out; ++i) breaks.push_back(r + (R1 - r) * Real(i) / Real(n_out));
  breaks.front() = std::numeric_limits<Real>::min();
  auto main = integrate_breaks(integrand, breaks, opt);
  const auto tail = integrate(integrand, R1, R1 + (R1 - r), opt);
  if (!(std::abs(tail) <= tol * std::max(Real(1), std::abs(main))))
    throw QuadratureFailure("apply_resolvent: truncation not converged");
  return main + tail;
}

}  // namespace rss
