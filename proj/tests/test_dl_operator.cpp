#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rss/deficiency.hpp"
#include "rss/dl_operator.hpp"
#include "rss/finite_difference.hpp"

using namespace rss;
using C = std::complex<double>;

const AngularMomentum L1(1), L2(2);

TEST_CASE("monomial coefficients") {
  CHECK(dl_monomial_coefficient(L1, 1) == 0.0);
  CHECK(dl_monomial_coefficient(L1, 0) == -1.0);
  CHECK(dl_monomial_coefficient(L2, 2) == -1.0);
  CHECK(dl_monomial_coefficient(L2, 5) == 8.0);
  CHECK(dl_monomial_coefficient(L1, 6) == 5.0);
}

TEST_CASE("D_l of an exponential, closed values") {
  CHECK(std::abs(dl_exponential(L1, C(1), 1.0)) < 1e-15);
  CHECK(std::abs(dl_exponential(L1, C(0), 2.0) - C(-0.5)) < 1e-15);
  CHECK(std::abs(dl_exponential(L2, C(0), 1.0) - C(3.0)) < 1e-15);
  // D_2 e^{chi r} = (chi^2 - 3 chi / r + 3 / r^2) e^{chi r}
  const C chi(0.3, -1.2);
  const double r = 0.7;
  const C expect = (chi * chi - 3.0 * chi / r + 3.0 / (r * r)) * std::exp(chi * r);
  CHECK(std::abs(dl_exponential(L2, chi, r) - expect) < 1e-14);
}

TEST_CASE("eval") {
  const RadialFunction<double> zero(ExponentialSum<double>{{1.0, C(-1, 0.5)}, {-1.0, C(-1, 0.5)}}, L1);
  CHECK(std::abs(eval(zero, 0.3)) == 0.0);
  CHECK(std::abs(derivative(zero, 0.3, 6)) == 0.0);

  const auto q = deficiency_solution(L1, BoundaryFamily(1), DeficiencySign::plus, 1.0);
  CHECK(std::isfinite(std::abs(eval(q.f, 1e-9))));
  CHECK(std::abs(eval(q.f, 1e-9)) < 1e-6);

  const RadialFunction<double> singular(ExponentialSum<double>{{1.0, C(-1)}}, L1);
  CHECK_THROWS_AS(eval(singular, 0.0), SingularityError);
  CHECK_THROWS_AS(eval(singular, -1.0), DomainError);
  CHECK_THROWS_AS(origin_series(singular, 10), SingularityError);
  CHECK_THROWS_AS(jet_at_origin(singular), SingularityError);
}

TEST_CASE("origin series") {
  // Rates on the sixth roots of unity with zero amplitude sum: the power 6 - l is missing.
  const RadialFunction<double> odd(ExponentialSum<double>{{1.0, C(1)}, {-1.0, C(-1)}}, L1);
  const auto s1 = origin_series(odd, 12);
  CHECK(std::abs(s1.coefficient(5)) < 1e-15);
  CHECK(std::abs(s1.coefficient(2)) == doctest::Approx(2.0 / 3.0));

  const C chi(-0.8, 0.3);
  const RadialFunction<double> f2(
      ExponentialSum<double>{{1.0, chi}, {2.0, chi * cis_pi<double>(1, 3)}, {-3.0, chi * cis_pi<double>(2, 3)}}, L2);
  const auto s2 = origin_series(f2, 12);
  CHECK(std::abs(s2.coefficient(4)) < 1e-14);
  CHECK(std::abs(s2.coefficient(3)) > 1e-3);
  // D_2 r^3 = 0 * r, so the linear term is always absent.
  const RadialFunction<double> g2(ExponentialSum<double>{{1.0, C(-1)}, {-1.0, C(-2)}}, L2);
  CHECK(std::abs(origin_series(g2, 12).coefficient(1)) < 1e-15);

  const RadialFunction<double> zero(ExponentialSum<double>{{1.0, C(2)}, {-1.0, C(2)}}, L2);
  for (const auto& c : origin_series(zero, 10).coefficients) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("series and closed form agree at the switch radius") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const C a(u(rng), u(rng)), b(u(rng), u(rng));
    const RadialFunction<double> F(
        ExponentialSum<double>{{a, C(-1, u(rng))}, {b, C(-0.5, u(rng))}, {-a - b, C(-2, u(rng))}}, AngularMomentum(1 + i % 2));
    for (int order = 0; order <= 6; ++order) {
      const double rs = rss::detail::switch_radius(F, order);
      const C closed = derivative(F, rs * (1 + 1e-12), order);
      const C series = derivative(F, rs * (1 - 1e-12), order);
      CHECK(std::abs(closed - series) <= 1e-9 * (1 + std::abs(closed)));
    }
  }
}

TEST_CASE("jet at origin") {
  const RadialFunction<double> zero(ExponentialSum<double>{{1.0, C(-1)}, {-1.0, C(-1)}}, L1);
  CHECK(jet_at_origin(zero).magnitude() == 0.0);
  const auto q1 = deficiency_solution(L1, BoundaryFamily(1), DeficiencySign::plus, 1.0);
  const auto j1 = jet_at_origin(q1.f);
  CHECK(std::abs(j1[0]) < 1e-13);
  CHECK(std::abs(j1[1]) < 1e-13);
  const auto q2 = deficiency_solution(L2, BoundaryFamily(2), DeficiencySign::plus, 1.0);
  CHECK(std::abs(jet_at_origin(q2.f)[3]) < 1e-13);
}

TEST_CASE("derivative") {
  const RadialFunction<double> F(ExponentialSum<double>{{1.0, C(1)}}, L1);
  CHECK(std::abs(derivative(F, 1.0, 1) - C(std::exp(1.0))) < 1e-14);
  CHECK_THROWS_AS(derivative(F, 1.0, 7), Unsupported);
}

TEST_CASE("Rayleigh identity") {
  CHECK(verify_rayleigh(L1, C(0, 1), 1.0) <= 1e-10);
  CHECK(verify_rayleigh(L2, C(-1), 0.5) <= 1e-10);
  CHECK(verify_rayleigh(L1, C(0), 1.0) <= 1e-10);
}

TEST_CASE("asymptotic check") {
  const RadialFunction<double> F(ExponentialSum<double>{{1.0, C(-1)}}, L1);
  const double ratio = asymptotic_check(F, 80.0) / asymptotic_check(F, 40.0);
  CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
  CHECK(asymptotic_check(F, 100.0) <= 2e-2);
  const RadialFunction<double> zero(ExponentialSum<double>{{1.0, C(-1)}, {-1.0, C(-1)}}, L1);
  CHECK(asymptotic_check(zero, 50.0) == 0.0);
}

TEST_CASE("linearity") {
  const RadialFunction<double> F(ExponentialSum<double>{{1.0, C(-1, 0.3)}, {-1.0, C(-2)}}, L2);
  const RadialFunction<double> G(ExponentialSum<double>{{2.0, C(-0.7)}, {-2.0, C(-1.5, -1)}}, L2);
  const C a(0.3, -1.1), b(2.0, 0.4);
  for (double r : {0.01, 0.4, 3.0}) {
    const C lhs = eval(a * F + b * G, r), rhs = a * eval(F, r) + b * eval(G, r);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("T^3 applied termwise matches finite differences") {
  const RadialFunction<double> F(ExponentialSum<double>{{1.0, C(-1, 0.3)}, {-1.0, C(-1.4, -0.2)}}, L2);
  const auto f = [&](long double r) { return std::complex<long double>(eval(F, double(r))); };
  for (double r : {0.9, 2.0}) {
    const auto fd = fd_apply_uniform(L2, f, (long double)r, 0.05L);
    const C an = apply_t3(F, r);
    CHECK(std::abs(C(fd) - an) <= 1e-6 * std::abs(an));
  }
}

TEST_CASE("compiled functions agree with eval") {
  const RadialFunction<double> F(ExponentialSum<double>{{1.0, C(-1, 0.3)}, {-1.0, C(-1.4, -0.2)}}, L1);
  for (int order = 0; order <= 3; ++order) {
    const CompiledRadialFunction<double> cf(F, order);
    for (double r : {0.05, 0.5, 4.0}) CHECK(std::abs(cf(r) - derivative(F, r, order)) < 1e-12);
  }
}
