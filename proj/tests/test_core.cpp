#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rss/core.hpp"

using namespace rss;
using C = std::complex<double>;

TEST_CASE("make_extension_spec") {
  const auto s = make_extension_spec(1, 1, -1.0);
  CHECK(s.l.value() == 1);
  CHECK(s.xi.value() == 1);
  CHECK(s.kappa.value() == -1.0);
  CHECK_THROWS_AS(make_extension_spec(3, 1, 0.0), InvalidSpec);
  CHECK_THROWS_AS(make_extension_spec(1, 3, 0.0), InvalidSpec);
  CHECK_THROWS_AS(make_extension_spec(1, 1, NAN), InvalidSpec);

  const auto inf = make_extension_spec(2, 2, INFINITY);
  CHECK(inf.kappa.is_infinite());
  CHECK_THROWS_AS(inf.kappa.value(), DomainError);
  CHECK_THROWS_AS(make_extension_spec(1, 1, INFINITY), InvalidSpec);
  CHECK_THROWS_AS(make_extension_spec(2, 2, -INFINITY), InvalidSpec);
}

TEST_CASE("extension parameter is projective") {
  CHECK(ExtensionParam(2.0, 4.0) == ExtensionParam::finite(0.5));
  CHECK(ExtensionParam(-3.0, 0.0) == ExtensionParam::infinity());
  CHECK_THROWS_AS(ExtensionParam(0.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(ExtensionParam(INFINITY, 1.0), InvalidSpec);
}

TEST_CASE("check_regularity") {
  const C chi0(-1, 0), chi1(-2, 0.5);
  CHECK(check_regularity(ExponentialSum<double>{{1.0, chi0}, {-1.0, chi1}}, 1e-12));
  CHECK_FALSE(check_regularity(ExponentialSum<double>{{1.0, chi0}}, 1e-12));
  const ExponentialSum<double> q{{1.0, C(-1, 0)}, {cis_pi<double>(-2, 3), C(0, -1)}, {cis_pi<double>(2, 3), C(-2, 0)}};
  CHECK(check_regularity(q, 1e-12));
  CHECK_THROWS_AS(check_regularity(ExponentialSum<double>{}, 1e-12), InvalidInput);
}

TEST_CASE("exponential sums merge equal exponents") {
  ExponentialSum<double> s;
  s.add(1.0, C(-1, 0));
  s.add(2.0, C(-1, 1e-16));
  s.add(3.0, C(-2, 0));
  CHECK(s.size() == 2);
  CHECK(s.amplitude_sum() == C(6.0));
  CHECK(s.moment(1) == C(-9.0));
  CHECK(s.decay_rate() == doctest::Approx(1.0));
}

TEST_CASE("Jet6 magnitude") {
  Jet6<double> j;
  j[3] = C(3, 4);
  CHECK(j.magnitude() == 5.0);
  CHECK(j.finite());
  j[0] = C(NAN, 0);
  CHECK_FALSE(j.finite());
}
