#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rss/boundary_form.hpp"
#include "rss/quadrature.hpp"
#include "rss/spectrum.hpp"

using namespace rss;
using C = std::complex<double>;

TEST_CASE("bound state table") {
  const auto b = bound_state<double>(make_extension_spec(1, 1, -1.0));
  REQUIRE(b);
  CHECK(std::abs(b->z_p - (2.0 / 3.0) * cis_pi<double>(1, 6)) < 1e-15);
  CHECK(b->energy == doctest::Approx(-std::pow(2.0 / 3.0, 6)).epsilon(1e-14));

  const auto b2 = bound_state<double>(make_extension_spec(1, 2, -1.0));
  REQUIRE(b2);
  CHECK(std::abs(b2->z_p - 2.0 * cis_pi<double>(1, 6)) < 1e-15);
  CHECK(b2->energy == doctest::Approx(-64.0).epsilon(1e-14));

  CHECK_FALSE(bound_state<double>(make_extension_spec(1, 1, 1.0)));
  CHECK_FALSE(bound_state<double>(make_extension_spec(2, 1, 0.0)));
  CHECK_FALSE(bound_state<double>(make_extension_spec(2, 2, INFINITY)));
}

TEST_CASE("bound states are normalized eigenvectors in the domain") {
  for (int l : {1, 2})
    for (int xi : {1, 2}) {
      const auto spec = make_extension_spec(l, xi, -1.0);
      const auto b = bound_state<double>(spec);
      REQUIRE(b);
      const double n = quad_semiaxis([&](double r) { return std::norm(eval(b->v, r)); }, 2 * b->v.base().decay_rate(),
                                     1e-12);
      CHECK(std::abs(n - 1) <= 1e-8);
      CHECK(eigen_residual_discrete(*b) <= 1e-10);
      CHECK(check_membership(spec, jet_at_origin(b->v), 1e-10).member);
      for (double r : {0.1, 1.0, 5.0}) CHECK(std::abs(eval(b->v, r).imag()) <= 1e-12 * std::abs(eval(b->v, r)));
    }
  CHECK(eigen_residual_discrete(*bound_state<double>(make_extension_spec(1, 2, -2.0))) <= 1e-10);
}

TEST_CASE("continuous eigenfunctions") {
  for (int l : {1, 2})
    for (int xi : {1, 2})
      for (double kappa : {-0.7, 0.0, 1.3}) {
        const auto spec = make_extension_spec(l, xi, kappa);
        const auto u = continuous_eigenfunction(spec, 1.7);
        const double l6 = std::pow(1.7, 6);
        for (double r : {0.05, 0.8, 6.0}) {
          const C v = eval(u.u, r);
          CHECK(std::abs(v.imag()) <= 1e-12 * (1 + std::abs(v)));
          CHECK(std::abs(apply_t3(u.u, r) - l6 * v) <= 1e-10 * l6);
        }
        CHECK(check_membership(spec, jet_at_origin(u.u), 1e-10).member);
      }
  CHECK_THROWS(continuous_eigenfunction(make_extension_spec(1, 1, 0.0), 0.0));
}

TEST_CASE("spectral density") {
  const auto spec = make_extension_spec(2, 2, 0.5);
  for (double lam : {0.4, 2.0}) {
    CHECK(spectral_density(spec, lam, 0.7, 2.2) == doctest::Approx(spectral_density(spec, lam, 2.2, 0.7)));
    CHECK(spectral_density(spec, lam, 1.1, 1.1) >= 0);
    const C rd = resolvent_density(spec, lam, 0.7, 2.2);
    CHECK(std::abs(rd - spectral_density(spec, lam, 0.7, 2.2)) <= 1e-8);
  }
}

TEST_CASE("free density") {
  const double lam = 2.0;
  for (double r : {0.3, 1.0, 4.0}) {
    const double x = lam * r;
    const double expect = std::sqrt(2 / M_PI) * (std::cos(x) - std::sin(x) / x);
    CHECK(std::abs(std::abs(asymptotic_density(AngularMomentum(1), lam, r)) - std::abs(expect)) < 1e-14);
  }
  const auto u = continuous_eigenfunction(make_extension_spec(1, 1, 0.0), lam);
  for (double r : {0.3, 1.0, 4.0})
    CHECK(std::abs(std::abs(u(r)) - std::abs(asymptotic_density(AngularMomentum(1), lam, r))) < 1e-12);
}

TEST_CASE("common l = 2 extension") {
  const double lam = 0.9;
  const auto a = continuous_eigenfunction(make_extension_spec(2, 1, 0.0), lam);
  const auto b = continuous_eigenfunction(make_extension_spec(2, 2, INFINITY), lam);
  const auto c = common_extension_eigenfunction(lam);
  for (double r : {0.2, 1.5, 7.0}) {
    CHECK(std::abs(a(r) * a(r) - b(r) * b(r)) < 1e-10);
    CHECK(std::abs(std::abs(b(r)) - std::abs(eval(c, r).real())) < 1e-10);
  }
}
