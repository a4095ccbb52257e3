#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rss/core.hpp"
#include "rss/verify.hpp"

using namespace rss;

TEST_CASE("suite registry") {
  const auto names = verify_suite_names();
  CHECK(names.size() == 11);
  CHECK(known_table_typos().size() == 6);
  CHECK_THROWS_AS(run_suite("nope"), InvalidInput);
}

TEST_CASE("cheap suites pass") {
  for (const char* s : {"rayleigh", "symmetricity", "deficiency", "wronskian", "coefficients"}) {
    const auto r = run_suite(s);
    INFO(s);
    CHECK(all_passed(r));
  }
}

TEST_CASE("an injected table fault is caught and named") {
  VerifyOptions o;
  o.inject_table_fault = true;
  const auto r = run_suite("coefficients", o);
  CHECK_FALSE(all_passed(r));
  bool named = false;
  for (const auto& c : r)
    if (!c.pass && c.detail.find("xi=1 l=1 gamma_0") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("empty result set does not pass") { CHECK_FALSE(all_passed({})); }
