#include <catch2/catch_amalgamated.hpp>

#include <symorb/selftest.hpp>

#include <set>
#include <string>

using namespace symorb;

TEST_CASE("the full battery passes on a small sweep") {
  SelftestOptions opt;
  opt.max_n = 6;
  const auto results = run_selftest(opt);

  REQUIRE(results.size() == selftest_suite_names().size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SuiteResult& r = results[i];
    CHECK(r.name == selftest_suite_names()[i]);
    CHECK(r.checks > 0);
    CHECK(r.passed());
    CHECK(r.failures.empty());
    seen.insert(r.name);
  }
  CHECK(seen.size() == results.size());
  CHECK(all_passed(results));

  const std::string text = render_selftest(results);
  CHECK(text.find("selftest: ok") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
  for (const auto& name : selftest_suite_names())
    CHECK(text.find("suite " + name) != std::string::npos);
}

TEST_CASE("a single suite can run alone") {
  SelftestOptions opt;
  opt.max_n = 5;
  opt.suite = "cocycle";
  const auto results = run_selftest(opt);
  REQUIRE(results.size() == 1);
  CHECK(results[0].name == "cocycle");
  CHECK(results[0].passed());
}

TEST_CASE("unknown suites and bad sweep sizes are rejected") {
  SelftestOptions opt;
  opt.suite = "nonsense";
  try {
    run_selftest(opt);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("nonsense") != std::string::npos);
    for (const auto& name : selftest_suite_names())
      CHECK(msg.find(name) != std::string::npos);
  }

  SelftestOptions tiny;
  tiny.max_n = 1;
  CHECK_THROWS_AS(run_selftest(tiny), InvalidArgument);

  SelftestOptions huge;
  huge.max_n = 25;
  CHECK_THROWS_AS(run_selftest(huge), RankLimit);
}

TEST_CASE("fault injection is caught") {
  SelftestOptions opt;
  opt.max_n = 5;
  opt.inject_zero_twist = true;

  SECTION("the signature suite notices the missing twist") {
    opt.suite = "signature";
    const auto results = run_selftest(opt);
    REQUIRE(results.size() == 1);
    CHECK_FALSE(results[0].passed());
    CHECK(results[0].failure_count > 0);
    CHECK_FALSE(results[0].failures.empty());
    CHECK(results[0].failures.size() <= 8);

    const std::string text = render_selftest(results);
    CHECK(text.find("FAIL") != std::string::npos);
    CHECK(text.find("selftest: FAIL") != std::string::npos);
    CHECK(text.find("    - ") != std::string::npos);
  }

  SECTION("the contrast suite notices too") {
    opt.suite = "contrast";
    const auto results = run_selftest(opt);
    REQUIRE(results.size() == 1);
    CHECK_FALSE(results[0].passed());
  }

  SECTION("the full battery reports overall failure") {
    const auto results = run_selftest(opt);
    CHECK_FALSE(all_passed(results));
  }
}

TEST_CASE("suite results are deterministic") {
  SelftestOptions opt;
  opt.max_n = 4;
  const auto a = run_selftest(opt);
  const auto b = run_selftest(opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].checks == b[i].checks);
    CHECK(a[i].failure_count == b[i].failure_count);
  }
  CHECK(render_selftest(a) == render_selftest(b));
}
