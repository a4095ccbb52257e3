#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rss/resolvent.hpp"

using namespace rss;
using C = std::complex<double>;

TEST_CASE("spectral point sector") {
  CHECK_NOTHROW(SpectralPointZ<double>(std::polar(1.0, 0.5)));
  CHECK_THROWS_AS(SpectralPointZ<double>(C(1.0, 0.0)), SectorError);
  CHECK_THROWS_AS(SpectralPointZ<double>(std::polar(1.0, 1.2)), SectorError);
  CHECK_THROWS_AS(SpectralPointZ<double>(C(0.0)), SectorError);
  CHECK_NOTHROW(SpectralPointZ<double>(C(1.0, 0.0), true));
}

TEST_CASE("basis functions decay") {
  const SpectralPointZ<double> z(cis_pi<double>(1, 6));
  CHECK(basis_rate(z, 0).real() == doctest::Approx(-0.5));
  for (int k = 0; k < 3; ++k) {
    CHECK(basis_rate(z, k).real() < 0);
    const auto g = basis_g(AngularMomentum(2), z, k);
    CHECK(std::abs(eval(g, 40.0)) < std::abs(eval(g, 20.0)));
  }
}

TEST_CASE("Wronskians") {
  const SpectralPointZ<double> one(C(1.0), true);
  CHECK(std::abs(wronskian(AngularMomentum(1), one, 0) - C(0, -2)) < 1e-15);
  CHECK(std::abs(wronskian(AngularMomentum(2), one, 1) - C(0, 2) * cis_pi<double>(2, 3)) < 4e-15);
  const SpectralPointZ<double> z(std::polar(1.3, 0.4));
  for (int l : {1, 2})
    for (int k = 0; k < 3; ++k) {
      const C w = wronskian(AngularMomentum(l), z, k);
      for (double r : {0.5, 1.0, 7.0})
        CHECK(std::abs(wronskian_numeric(AngularMomentum(l), z, k, r) - w) <= 1e-10 * std::abs(w));
    }
}

TEST_CASE("coefficients: closed form against the boundary-condition solve") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> kap(-2, 2), ang(0.1, 0.9), mod(0.5, 2.0);
  for (int l : {1, 2})
    for (int xi : {1, 2})
      for (int i = 0; i < 5; ++i) {
        const auto spec = make_extension_spec(l, xi, kap(rng));
        const SpectralPointZ<double> z(std::polar(mod(rng), ang(rng)));
        const auto a = coefficients_closed_form(spec, z);
        const auto b = coefficients_oracle(spec, z);
        double scale = 0;
        for (int k = 0; k < 3; ++k) scale = std::max({scale, std::abs(b.alpha[k]), std::abs(b.beta[k])});
        for (int k = 0; k < 3; ++k) {
          CHECK(std::abs(a.alpha[k] - b.alpha[k]) <= 1e-9 * scale);
          CHECK(std::abs(a.beta[k] - b.beta[k]) <= 1e-9 * scale);
          CHECK(std::abs(a.gamma[k] - b.gamma[k]) <= 1e-9 * scale);
        }
        for (double c : cross_relation_residuals(spec.l, z, b)) CHECK(c <= 1e-10);
      }
}

TEST_CASE("kappa = 0 has no cross terms for xi = 1, l = 1") {
  const auto c = coefficients_oracle(make_extension_spec(1, 1, 0.0), SpectralPointZ<double>(std::polar(1.0, 0.6)));
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(c.beta[k]) < 1e-12);
    CHECK(std::abs(c.gamma[k]) < 1e-12);
  }
}

TEST_CASE("printed and corrected tables differ on a known entry") {
  const auto spec = make_extension_spec(1, 1, 0.8);
  const SpectralPointZ<double> z(std::polar(1.0, 0.6));
  const auto a = coefficients_closed_form(spec, z, TableVariant::corrected);
  const auto b = coefficients_closed_form(spec, z, TableVariant::printed);
  CHECK(std::abs(a.beta[0] - b.beta[0]) > 1e-3);
  CHECK(std::abs(a.gamma[0] - b.gamma[0]) < 1e-15);
}

TEST_CASE("pole") {
  const auto spec = make_extension_spec(1, 2, -1.0);
  const C zp = pole_location<double>(spec);
  CHECK(std::abs(zp - 2.0 * cis_pi<double>(1, 6)) < 1e-15);
  CHECK_THROWS_AS(coefficients_closed_form(spec, SpectralPointZ<double>(zp)), PoleError);
  CHECK_THROWS_AS(ResolventKernel<double>(spec, SpectralPointZ<double>(zp)), PoleError);
}

TEST_CASE("kernel properties") {
  const auto spec = make_extension_spec(2, 1, 0.6);
  const ResolventKernel<double> R(spec, SpectralPointZ<double>(std::polar(0.9, 0.3)));
  const C a = R(0.4, 2.5), b = R(2.5, 0.4);
  CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  const auto kv = R.split(0.4, 2.5);
  CHECK(std::abs(kv.total - kv.parts_sum()) <= 1e-12 * std::abs(kv.total));
  CHECK(std::abs(kv.total - a) <= 1e-14 * std::abs(a));
  using Side = ResolventKernel<double>::Side;
  const C jump = R.derivative_r(1.2, 1.2, 5, Side::above) - R.derivative_r(1.2, 1.2, 5, Side::below);
  CHECK(std::abs(jump + 1.0) < 1e-6);
  // lower derivatives are continuous across the diagonal
  for (int order = 0; order < 5; ++order) {
    const C d = R.derivative_r(1.2, 1.2, order, Side::above) - R.derivative_r(1.2, 1.2, order, Side::below);
    CHECK(std::abs(d) < 1e-9);
  }
}

TEST_CASE("resolvent of zero is zero") {
  const ResolventKernel<double> R(make_extension_spec(1, 1, 0.3), SpectralPointZ<double>(std::polar(1.0, 0.5)));
  CHECK(apply_resolvent(R, [](double) { return 0.0; }, 1.0, 1.0) == C(0));
}
