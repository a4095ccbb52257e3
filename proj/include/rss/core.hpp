#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rss {

// Error hierarchy. Every failure mode of the library maps to one type so the
// CLI can translate it into a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidSpec : public Error { using Error::Error; };
class InvalidInput : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class SingularityError : public Error { using Error::Error; };
class Unsupported : public Error { using Error::Error; };
class InternalInconsistency : public Error { using Error::Error; };
class SectorError : public Error { using Error::Error; };
class PoleError : public Error { using Error::Error; };
class QuadratureFailure : public Error { using Error::Error; };
class FunctionDomainError : public Error { using Error::Error; };
class GridError : public Error { using Error::Error; };

template <typename Real>
constexpr Real pi_v = std::numbers::pi_v<Real>;

/// e^{i theta}
template <typename Real>
inline std::complex<Real> cis(Real theta) {
  return {std::cos(theta), std::sin(theta)};
}

/// e^{i pi * num / den}, the phases that appear throughout the coefficient tables.
template <typename Real>
inline std::complex<Real> cis_pi(int num, int den) {
  return cis<Real>(pi_v<Real> * Real(num) / Real(den));
}

class AngularMomentum {
 public:
  explicit AngularMomentum(int l) : l_(l) {
    if (l != 1 && l != 2) {
      throw InvalidSpec("angular momentum l must be 1 or 2, got " + std::to_string(l));
    }
  }
  int value() const { return l_; }
  /// L = l(l+1)
  int L() const { return l_ * (l_ + 1); }
  friend bool operator==(AngularMomentum, AngularMomentum) = default;

 private:
  int l_;
};

class BoundaryFamily {
 public:
  explicit BoundaryFamily(int xi) : xi_(xi) {
    if (xi != 1 && xi != 2) {
      throw InvalidSpec("boundary family xi must be 1 or 2, got " + std::to_string(xi));
    }
  }
  int value() const { return xi_; }
  friend bool operator==(BoundaryFamily, BoundaryFamily) = default;

 private:
  int xi_;
};

/// Projective extension parameter: kappa = numerator / denominator, with
/// denominator 0 encoding kappa = +infinity. Always held in canonical form
/// (denominator in {0, 1}).
class ExtensionParam {
 public:
  ExtensionParam(double numerator, double denominator) {
    if (!std::isfinite(numerator) || !std::isfinite(denominator)) {
      throw InvalidSpec("extension parameter components must be finite");
    }
    if (numerator == 0.0 && denominator == 0.0) {
      throw InvalidSpec("extension parameter (0, 0) is not a projective point");
    }
    if (denominator == 0.0) {
      num_ = 1.0;
      den_ = 0.0;
    } else {
      num_ = numerator / denominator;
      den_ = 1.0;
    }
  }
  static ExtensionParam finite(double kappa) { return {kappa, 1.0}; }
  static ExtensionParam infinity() { return {1.0, 0.0}; }

  double numerator() const { return num_; }
  double denominator() const { return den_; }
  bool is_infinite() const { return den_ == 0.0; }
  /// Finite value; throws for the point at infinity.
  double value() const {
    if (is_infinite()) throw DomainError("kappa is infinite");
    return num_;
  }
  ExtensionParam canonical() const { return {num_, den_}; }
  friend bool operator==(const ExtensionParam&, const ExtensionParam&) = default;

 private:
  double num_ = 0.0;
  double den_ = 1.0;
};

struct ExtensionSpec {
  AngularMomentum l;
  BoundaryFamily xi;
  ExtensionParam kappa;

  std::string label() const {
    std::string k = kappa.is_infinite() ? std::string("inf") : std::to_string(kappa.value());
    return "T(l=" + std::to_string(l.value()) + ", xi=" + std::to_string(xi.value()) +
           ", kappa=" + k + ")";
  }
};

/// Validates (l, xi, kappa). kappa = +inf is accepted for l = 2 only: that is
/// where it names a distinct extension (the common xi=1/xi=2 extension and the
/// free l=2 density).
inline ExtensionSpec make_extension_spec(int l, int xi, double kappa) {
  AngularMomentum am(l);
  BoundaryFamily bf(xi);
  if (std::isnan(kappa)) throw InvalidSpec("kappa is NaN");
  if (std::isinf(kappa)) {
    if (kappa < 0) throw InvalidSpec("kappa = -inf is not supported; use +inf");
    if (l != 2) throw InvalidSpec("kappa = inf is only supported for l = 2");
    return {am, bf, ExtensionParam::infinity()};
  }
  return {am, bf, ExtensionParam::finite(kappa)};
}

/// u^{(j)}(0), j = 0..5.
template <typename Real = double>
struct Jet6 {
  using Complex = std::complex<Real>;
  std::array<Complex, 6> d{};

  Complex& operator[](std::size_t j) { return d[j]; }
  const Complex& operator[](std::size_t j) const { return d[j]; }
  Real magnitude() const {
    Real m = 0;
    for (const auto& v : d) m = std::max(m, std::abs(v));
    return m;
  }
  bool finite() const {
    return std::all_of(d.begin(), d.end(), [](const Complex& v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  }
};

/// A finite sum  sum_k a_k exp(chi_k r).
template <typename Real = double>
class ExponentialSum {
 public:
  using Complex = std::complex<Real>;
  struct Term {
    Complex amplitude;
    Complex rate;
  };

  ExponentialSum() = default;
  explicit ExponentialSum(std::vector<Term> terms) {
    for (const auto& t : terms) add(t.amplitude, t.rate);
  }
  ExponentialSum(std::initializer_list<Term> terms)
      : ExponentialSum(std::vector<Term>(terms)) {}

  /// Adds a term, merging it into an existing one when the exponents agree to
  /// 1e-14 relative.
  void add(Complex amplitude, Complex rate) {
    for (auto& t : terms_) {
      const Real scale = std::max<Real>({Real(1), std::abs(t.rate), std::abs(rate)});
      if (std::abs(t.rate - rate) <= Real(1e-14) * scale) {
        t.amplitude += amplitude;
        return;
      }
    }
    terms_.push_back({amplitude, rate});
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex amplitude_sum() const {
    Complex s{};
    for (const auto& t : terms_) s += t.amplitude;
    return s;
  }
  Real amplitude_norm() const {
    Real s = 0;
    for (const auto& t : terms_) s += std::abs(t.amplitude);
    return s;
  }
  /// sum_k a_k chi_k^n, i.e. the n-th derivative at the origin.
  Complex moment(int n) const {
    Complex s{};
    for (const auto& t : terms_) s += t.amplitude * std::pow(t.rate, n);
    return s;
  }
  Real max_rate() const {
    Real m = 0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.rate));
    return m;
  }
  /// Slowest exponential decay rate, -max Re chi (may be <= 0).
  Real decay_rate() const {
    Real m = std::numeric_limits<Real>::infinity();
    for (const auto& t : terms_) m = std::min(m, -t.rate.real());
    return m;
  }

  ExponentialSum scaled(Complex c) const {
    ExponentialSum out = *this;
    for (auto& t : out.terms_) t.amplitude *= c;
    return out;
  }

  friend ExponentialSum operator+(ExponentialSum a, const ExponentialSum& b) {
    for (const auto& t : b.terms_) a.add(t.amplitude, t.rate);
    return a;
  }

 private:
  std::vector<Term> terms_;
};

/// |sum a_k| <= tol * sum |a_k|: the function D_l(sum) has no negative powers
/// at the origin.
template <typename Real>
bool check_regularity(const ExponentialSum<Real>& s, Real tol) {
  if (s.empty()) throw InvalidInput("check_regularity: empty exponential sum");
  if (!(tol > 0)) throw InvalidInput("check_regularity: tol must be positive");
  return std::abs(s.amplitude_sum()) <= tol * s.amplitude_norm();
}

/// scale * D_l applied to an exponential sum.
template <typename Real = double>
class RadialFunction {
 public:
  using Complex = std::complex<Real>;

  RadialFunction(ExponentialSum<Real> base, AngularMomentum l, Complex scale = Complex(1))
      : base_(std::move(base)), l_(l), scale_(scale) {
    regular_ = base_.empty() || check_regularity(base_, Real(1e-12));
  }

  const ExponentialSum<Real>& base() const { return base_; }
  AngularMomentum l() const { return l_; }
  Complex scale() const { return scale_; }
  bool regular_at_origin() const { return regular_; }

  /// Radius below which the closed form loses digits to pole cancellation and
  /// the origin series is used instead.
  Real r_switch() const {
    const Real m = base_.max_rate();
    return m > 0 ? Real(0.5) / m : std::numeric_limits<Real>::infinity();
  }

  /// Folds the scale into the amplitudes.
  RadialFunction normalized() const { return RadialFunction(base_.scaled(scale_), l_); }

  RadialFunction scaled(Complex c) const { return RadialFunction(base_, l_, scale_ * c); }

  friend RadialFunction operator*(Complex c, const RadialFunction& f) { return f.scaled(c); }
  friend RadialFunction operator+(const RadialFunction& a, const RadialFunction& b) {
    if (!(a.l_ == b.l_)) throw InvalidInput("cannot add radial functions with different l");
    return RadialFunction(a.base_.scaled(a.scale_) + b.base_.scaled(b.scale_), a.l_);
  }
  friend RadialFunction operator-(const RadialFunction& a, const RadialFunction& b) {
    return a + b.scaled(Complex(-1));
  }

 private:
  ExponentialSum<Real> base_;
  AngularMomentum l_;
  Complex scale_;
  bool regular_ = false;
};

}  // namespace rss
