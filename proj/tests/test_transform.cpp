#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rss/boundary_form.hpp"
#include "rss/transform.hpp"

using namespace rss;
using C = std::complex<double>;

TEST_CASE("sampled functions") {
  std::vector<double> g, v;
  for (int i = 1; i <= 20; ++i) {
    g.push_back(0.5 * i);
    v.push_back(3.0 * 0.5 * i);
  }
  const SampledFunction<double> f(g, v);
  CHECK(f(1.25) == doctest::Approx(3.75));
  CHECK(f(0.25) == doctest::Approx(0.75));
  CHECK(f(11.0) == 0.0);
  CHECK_THROWS_AS(SampledFunction<double>({1, 2, 3}, {1, 2, 3}), InvalidInput);
  CHECK_THROWS_AS(SampledFunction<double>({1, 3, 2, 4}, {1, 2, 3, 4}), InvalidInput);
}

TEST_CASE("phi_sqrt domain") {
  CHECK(phi_sqrt(4.0) == C(2.0));
  CHECK_THROWS_AS(phi_sqrt(-1.0), FunctionDomainError);
}

TEST_CASE("grids") {
  TransformOptions<double> opt;
  const auto lg = make_lambda_grid(opt);
  CHECK(lg.nodes.front() > 0);
  CHECK(lg.nodes.back() < opt.lambda_max);
  double w = 0;
  for (double x : lg.weights) w += x;
  CHECK(w == doctest::Approx(opt.lambda_max).epsilon(1e-13));
}

TEST_CASE("domain test functions lie in the domain") {
  for (int l : {1, 2})
    for (int xi : {1, 2}) {
      const auto spec = make_extension_spec(l, xi, -0.5);
      const auto f = domain_test_function<double>(spec, {1.0, 1.5, 2.0, 2.5});
      CHECK(check_membership(spec, jet_at_origin(f), 1e-10).member);
      for (double r : {0.1, 1.0, 3.0}) CHECK(std::abs(eval(f, r).imag()) < 1e-12);
    }
}

TEST_CASE("transform round trip with a bound state") {
  const auto spec = make_extension_spec(1, 2, -1.0);
  const SpectralTransform<double> T(spec);
  const auto f = T.sample(domain_test_function<double>(spec, {1.0, 1.5, 2.0, 2.5}));
  CHECK(T.round_trip_error(f) <= 1e-4);
  CHECK(T.parseval_defect(f) <= 1e-3);
  const auto c1 = T.forward(f), c2 = T.forward(f);
  CHECK(c1.c == c2.c);
  REQUIRE(c1.c_discrete);
  CHECK_THROWS_AS(T.apply_function([](double x) { return phi_sqrt(x); }, c1), FunctionDomainError);
}

TEST_CASE("fd_apply needs a grid point") {
  std::vector<double> g, v;
  for (int i = 1; i <= 100; ++i) {
    g.push_back(0.1 * i);
    v.push_back(std::exp(-0.1 * i));
  }
  const SampledFunction<double> f(g, v);
  CHECK_NOTHROW(fd_apply(AngularMomentum(1), f, 5.0));
  CHECK_THROWS(fd_apply(AngularMomentum(1), f, 5.05));
}
