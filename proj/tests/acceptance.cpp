// One PASS/FAIL line per acceptance criterion, each backed by a verification suite.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rss/verify.hpp"

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  double budget_s;
};

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Rayleigh identity", "rayleigh", 1},
      {2, "boundary-form symmetricity", "symmetricity", 1},
      {3, "coefficient oracle equivalence", "coefficients", 5},
      {4, "Wronskians", "wronskian", 1},
      {5, "resolvent kernel", "kernel", 30},
      {6, "bound states", "bound_state", 5},
      {7, "continuous spectrum", "continuous", 30},
      {8, "completeness and Parseval", "transform", 180},
      {9, "limits", "limits", 30},
      {10, "orthogonality", "orthogonality", 10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = rss::run_suite(c.suite);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& r : results)
      std::printf("    %-4s %-88s %.3e (tol %.1e)%s%s\n", r.pass ? "ok" : "FAIL", r.name.c_str(), r.value, r.tolerance,
                  r.detail.empty() ? "" : "  ", r.detail.c_str());
    const bool ok = rss::all_passed(results) && dt <= c.budget_s;
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s [%.2f s, budget %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.title, dt, c.budget_s);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
