#pragma once

// The Rayleigh operation D_l w = r^{l+1} (r^{-1} d/dr)^l (w / r) acting on
// exponential sums, in closed form away from the origin and as a power series
// near it.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "rss/core.hpp"

namespace rss {

/// exp(chi r) * sum_j c_j r^{-j}. Every closed-form quantity in the library
/// (D_l images, their derivatives, T_l applied to them) has this shape.
template <typename Real = double>
struct LaurentExp {
  using Complex = std::complex<Real>;
  static constexpr int kMaxDegree = 24;

  Complex rate{};
  std::array<Complex, kMaxDegree + 1> c{};
  int degree = 0;

  Complex evaluate(Real r) const {
    const Real inv = Real(1) / r;
    Complex acc = c[degree];
    for (int j = degree - 1; j >= 0; --j) acc = acc * inv + c[j];
    return acc * std::exp(rate * r);
  }

  /// d/dr: c'_j = chi c_j - (j-1) c_{j-1}
  LaurentExp derivative() const {
    if (degree + 1 > kMaxDegree) throw Unsupported("LaurentExp: degree overflow");
    LaurentExp out;
    out.rate = rate;
    out.degree = degree + 1;
    for (int j = 0; j <= out.degree; ++j) {
      Complex v{};
      if (j <= degree) v += rate * c[j];
      if (j >= 1) v -= Real(j - 1) * c[j - 1];
      out.c[j] = v;
    }
    return out;
  }

  /// Multiplies by r^{-shift} (shift may be negative, provided no positive
  /// powers of r would appear).
  LaurentExp shifted(int shift) const {
    LaurentExp out;
    out.rate = rate;
    out.degree = degree + shift;
    if (out.degree > kMaxDegree) throw Unsupported("LaurentExp: degree overflow");
    for (int j = 0; j <= degree; ++j) {
      const int k = j + shift;
      if (k < 0) {
        if (c[j] != Complex{}) throw InternalInconsistency("LaurentExp: positive power of r");
        continue;
      }
      out.c[k] = c[j];
    }
    if (out.degree < 0) out.degree = 0;
    return out;
  }

  /// T_l f = -f'' + L f / r^2
  LaurentExp apply_radial(int L) const {
    LaurentExp second = derivative().derivative();
    LaurentExp pot = shifted(2);
    LaurentExp out;
    out.rate = rate;
    out.degree = std::max(second.degree, pot.degree);
    for (int j = 0; j <= out.degree; ++j) {
      Complex v{};
      if (j <= second.degree) v -= second.c[j];
      if (j <= pot.degree) v += Real(L) * pot.c[j];
      out.c[j] = v;
    }
    return out;
  }
};

/// D_l exp(chi r) as a LaurentExp, derived by running the definition through
/// the (r^{-1} d/dr) cascade.
template <typename Real>
LaurentExp<Real> dl_laurent(AngularMomentum l, std::complex<Real> chi) {
  LaurentExp<Real> w;
  w.rate = chi;
  w.c[0] = 1;
  w.degree = 0;
  LaurentExp<Real> acc = w.shifted(1);  // w / r
  for (int i = 0; i < l.value(); ++i) acc = acc.derivative().shifted(1);
  return acc.shifted(-(l.value() + 1));
}

/// Coefficient of D_l r^k = coeff * r^{k-l}: the product (k-1)(k-3)...(k-2l+1).
inline double dl_monomial_coefficient(AngularMomentum l, int k) {
  if (k < 0) throw InvalidInput("dl_monomial_coefficient: k must be >= 0");
  double p = 1.0;
  for (int m = 0; m < l.value(); ++m) p *= double(k - 1 - 2 * m);
  return p;
}

template <typename Real>
std::complex<Real> dl_exponential(AngularMomentum l, std::complex<Real> chi, Real r) {
  if (!(r > 0)) throw DomainError("dl_exponential: r must be positive");
  return dl_laurent(l, chi).evaluate(r);
}

/// Laurent series sum_i c_i r^{min_power + i} around the origin.
template <typename Real = double>
struct OriginSeries {
  using Complex = std::complex<Real>;
  int min_power = 0;
  std::vector<Complex> coefficients;

  int truncation_order() const { return min_power + int(coefficients.size()) - 1; }

  Complex coefficient(int power) const {
    const int i = power - min_power;
    if (i < 0 || i >= int(coefficients.size())) return {};
    return coefficients[i];
  }

  Complex evaluate(Real r) const {
    Complex acc{};
    for (int i = int(coefficients.size()) - 1; i >= 0; --i) acc = acc * r + coefficients[i];
    return acc * std::pow(r, Real(min_power));
  }

  OriginSeries derivative() const {
    OriginSeries out;
    out.min_power = min_power - 1;
    out.coefficients.resize(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i)
      out.coefficients[i] = Real(min_power + int(i)) * coefficients[i];
    return out;
  }

  /// T_l termwise: c r^p -> (L - p(p-1)) c r^{p-2}.
  OriginSeries apply_radial(int L) const {
    OriginSeries out;
    out.min_power = min_power - 2;
    out.coefficients.resize(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      const Real p = Real(min_power + int(i));
      out.coefficients[i] = (Real(L) - p * (p - 1)) * coefficients[i];
    }
    return out;
  }
};

namespace detail {

template <typename Real>
void require_positive_radius(Real r, const char* who) {
  if (!(r > 0)) throw DomainError(std::string(who) + ": r must be positive");
}

/// Taylor coefficients of F up to power N (no validation).
template <typename Real>
OriginSeries<Real> series_unchecked(const RadialFunction<Real>& F, int N) {
  using Complex = std::complex<Real>;
  const int l = F.l().value();
  OriginSeries<Real> s;
  s.min_power = 0;
  s.coefficients.assign(N + 1, Complex{});
  const auto& terms = F.base().terms();
  // moments w_n = sum a chi^n, n = l .. N + l; iterate powers per term.
  std::vector<Complex> pw(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) pw[k] = std::pow(terms[k].rate, l);
  Real factorial = 1;
  for (int n = 2; n <= l; ++n) factorial *= Real(n);
  for (int m = 0; m <= N; ++m) {
    const int n = m + l;
    if (m > 0) factorial *= Real(n);
    Complex w{};
    Real w_abs = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      w += terms[k].amplitude * pw[k];
      w_abs += std::abs(terms[k].amplitude * pw[k]);
      pw[k] *= terms[k].rate;
    }
    // A moment lost entirely to cancellation carries no information; zero it
    // so that structural zeros (regularity, the mod-6 gap) stay exact.
    if (std::abs(w) <= Real(64) * std::numeric_limits<Real>::epsilon() * w_abs) w = 0;
    s.coefficients[m] = F.scale() * Real(dl_monomial_coefficient(F.l(), n)) / factorial * w;
  }
  return s;
}

/// The closed form of an order-n derivative cancels like r^{-(l+1+n)}, so the
/// series region widens with the order.
template <typename Real>
Real switch_radius(const RadialFunction<Real>& F, int order) {
  return F.r_switch() * (Real(1) + Real(order) / Real(4));
}

template <typename Real>
bool use_series(const RadialFunction<Real>& F, Real r, int order = 0) {
  return F.regular_at_origin() && r <= switch_radius(F, order);
}

}  // namespace detail

constexpr int kSeriesOrder = 16;
constexpr int kMaxSeriesOrder = 24;

template <typename Real>
OriginSeries<Real> origin_series(const RadialFunction<Real>& F, int N) {
  if (N < 0 || N > kMaxSeriesOrder) throw InvalidInput("origin_series: N must be in [0, 24]");
  if (!F.regular_at_origin())
    throw SingularityError("origin_series: base is not regular at the origin");
  return detail::series_unchecked(F, N);
}

template <typename Real>
Jet6<Real> jet_at_origin(const RadialFunction<Real>& F) {
  const auto s = origin_series(F, 5);
  Jet6<Real> j;
  Real fact = 1;
  for (int k = 0; k < 6; ++k) {
    if (k > 0) fact *= Real(k);
    j[k] = fact * s.coefficients[k];
  }
  return j;
}

/// Closed form: scale * sum_k a_k D_l exp(chi_k r), no cancellation handling.
template <typename Real>
std::complex<Real> eval_closed(const RadialFunction<Real>& F, Real r) {
  std::complex<Real> acc{};
  for (const auto& t : F.base().terms())
    acc += t.amplitude * dl_laurent(F.l(), t.rate).evaluate(r);
  return F.scale() * acc;
}

template <typename Real>
std::complex<Real> eval_series(const RadialFunction<Real>& F, Real r) {
  return origin_series(F, kSeriesOrder).evaluate(r);
}

template <typename Real>
std::complex<Real> eval(const RadialFunction<Real>& F, Real r) {
  if (std::isnan(r) || r < 0) throw DomainError("eval: r must be non-negative");
  if (r == 0) {
    if (!F.regular_at_origin()) throw SingularityError("eval: r = 0 on a non-regular function");
    return detail::series_unchecked(F, 0).coefficients[0];
  }
  if (detail::use_series(F, r)) return detail::series_unchecked(F, kSeriesOrder).evaluate(r);
  return eval_closed(F, r);
}

constexpr int kMaxDerivativeOrder = 6;

template <typename Real>
std::complex<Real> derivative(const RadialFunction<Real>& F, Real r, int order) {
  if (order < 0 || order > kMaxDerivativeOrder)
    throw Unsupported("derivative: order must be in [0, 6]");
  detail::require_positive_radius(r, "derivative");
  if (detail::use_series(F, r, order)) {
    auto s = detail::series_unchecked(F, kSeriesOrder + order);
    for (int i = 0; i < order; ++i) s = s.derivative();
    return s.evaluate(r);
  }
  std::complex<Real> acc{};
  for (const auto& t : F.base().terms()) {
    auto p = dl_laurent(F.l(), t.rate);
    for (int i = 0; i < order; ++i) p = p.derivative();
    acc += t.amplitude * p.evaluate(r);
  }
  return F.scale() * acc;
}

/// T_l^power F at r, applied analytically (termwise on the closed form, or on
/// the Laurent series near the origin).
template <typename Real>
std::complex<Real> apply_radial_power(const RadialFunction<Real>& F, Real r, int power) {
  if (power < 0 || power > 3) throw Unsupported("apply_radial_power: power must be in [0, 3]");
  detail::require_positive_radius(r, "apply_radial_power");
  const int L = F.l().L();
  if (detail::use_series(F, r, 2 * power)) {
    auto s = detail::series_unchecked(F, kSeriesOrder + 2 * power);
    for (int i = 0; i < power; ++i) s = s.apply_radial(L);
    return s.evaluate(r);
  }
  std::complex<Real> acc{};
  for (const auto& t : F.base().terms()) {
    auto p = dl_laurent(F.l(), t.rate);
    for (int i = 0; i < power; ++i) p = p.apply_radial(L);
    acc += t.amplitude * p.evaluate(r);
  }
  return F.scale() * acc;
}

template <typename Real>
std::complex<Real> apply_t3(const RadialFunction<Real>& F, Real r) {
  return apply_radial_power(F, r, 3);
}

/// F (or one of its derivatives) with the Laurent coefficients and the origin
/// series worked out once, for repeated evaluation on grids.
template <typename Real = double>
class CompiledRadialFunction {
 public:
  using Complex = std::complex<Real>;

  explicit CompiledRadialFunction(const RadialFunction<Real>& F, int order = 0)
      : regular_(F.regular_at_origin()), r_switch_(detail::switch_radius(F, order)) {
    if (order < 0 || order > kMaxDerivativeOrder)
      throw Unsupported("CompiledRadialFunction: order must be in [0, 6]");
    for (const auto& t : F.base().terms()) {
      auto p = dl_laurent(F.l(), t.rate);
      for (int i = 0; i < order; ++i) p = p.derivative();
      for (int j = 0; j <= p.degree; ++j) p.c[j] *= F.scale() * t.amplitude;
      terms_.push_back(p);
    }
    if (regular_) {
      series_ = detail::series_unchecked(F, kSeriesOrder + order);
      for (int i = 0; i < order; ++i) series_ = series_.derivative();
    }
  }

  Complex operator()(Real r) const {
    if (!(r > 0)) throw DomainError("CompiledRadialFunction: r must be positive");
    if (regular_ && r <= r_switch_) return series_.evaluate(r);
    Complex acc{};
    for (const auto& p : terms_) acc += p.evaluate(r);
    return acc;
  }

 private:
  bool regular_;
  Real r_switch_;
  std::vector<LaurentExp<Real>> terms_;
  OriginSeries<Real> series_;
};

/// |T_l D_l e^{chi r} - D_l(-chi^2 e^{chi r})| / (1 + |D_l e^{chi r}|)
template <typename Real>
Real verify_rayleigh(AngularMomentum l, std::complex<Real> chi, Real r) {
  detail::require_positive_radius(r, "verify_rayleigh");
  const auto base = dl_laurent(l, chi);
  const auto lhs = base.apply_radial(l.L()).evaluate(r);
  const auto value = base.evaluate(r);
  const auto rhs = -chi * chi * value;
  return std::abs(lhs - rhs) / (Real(1) + std::abs(value));
}

/// Relative deviation of F(r) from its leading large-r term scale*sum a chi^l e^{chi r}.
template <typename Real>
Real asymptotic_check(const RadialFunction<Real>& F, Real r) {
  detail::require_positive_radius(r, "asymptotic_check");
  const auto value = eval(F, r);
  std::complex<Real> lead{};
  for (const auto& t : F.base().terms())
    lead += t.amplitude * std::pow(t.rate, F.l().value()) * std::exp(t.rate * r);
  lead *= F.scale();
  const Real mag = std::abs(value);
  if (mag == 0) return std::abs(lead) == 0 ? Real(0) : std::numeric_limits<Real>::infinity();
  return std::abs(value - lead) / mag;
}

}  // namespace rss
