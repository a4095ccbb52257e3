#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rss/boundary_form.hpp"
#include "rss/deficiency.hpp"
#include "rss/quadrature.hpp"

using namespace rss;
using C = std::complex<double>;

TEST_CASE("amplitudes sum to zero") {
  for (int xi : {1, 2})
    for (auto s : {DeficiencySign::plus, DeficiencySign::minus}) {
      const auto q = deficiency_solution(AngularMomentum(1), BoundaryFamily(xi), s, 1.0);
      CHECK(std::abs(q.f.base().amplitude_sum()) < 1e-15);
      CHECK(q.f.regular_at_origin());
    }
}

TEST_CASE("kernel residual") {
  CHECK(kernel_residual(deficiency_solution(AngularMomentum(1), BoundaryFamily(1), DeficiencySign::plus, 1.0)) <= 1e-10);
  CHECK(kernel_residual(deficiency_solution(AngularMomentum(2), BoundaryFamily(2), DeficiencySign::minus, 2.0)) <=
        1e-10);
  for (double rho : {0.5, 1.0, 4.0})
    CHECK(kernel_residual(deficiency_solution(AngularMomentum(2), BoundaryFamily(1), DeficiencySign::plus, rho)) <=
          1e-10);
  CHECK_THROWS_AS(deficiency_solution(AngularMomentum(1), BoundaryFamily(1), DeficiencySign::plus, 0.0), InvalidInput);
}

TEST_CASE("conjugation symmetry") {
  for (int l : {1, 2})
    for (int xi : {1, 2}) {
      const auto p = deficiency_solution(AngularMomentum(l), BoundaryFamily(xi), DeficiencySign::plus, 1.3);
      const auto m = deficiency_solution(AngularMomentum(l), BoundaryFamily(xi), DeficiencySign::minus, 1.3);
      for (double r : {0.01, 0.4, 2.0, 9.0})
        CHECK(std::abs(eval(m.f, r) - std::conj(eval(p.f, r))) <= 1e-12 * std::abs(eval(p.f, r)));
    }
}

TEST_CASE("square integrable") {
  const auto q = deficiency_solution(AngularMomentum(2), BoundaryFamily(2), DeficiencySign::plus, 1.0);
  const double n = quad_semiaxis([&](double r) { return std::norm(eval(q.f, r)); }, 2 * q.f.base().decay_rate(), 1e-10);
  CHECK(std::isfinite(n));
  CHECK(n > 0);
}

TEST_CASE("deficiency indices") {
  CHECK(deficiency_indices(1) == std::make_pair(2, 2));
  CHECK(deficiency_indices(2) == std::make_pair(2, 2));
  CHECK_THROWS_AS(deficiency_indices(3), Unsupported);
}
