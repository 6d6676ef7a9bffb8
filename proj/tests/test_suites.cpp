#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <minuslat/suites.hpp>

using namespace minuslat;

TEST_CASE("every suite passes a short randomized run") {
    for (const std::string& name : suite_names()) {
        const int trials = name == "sup-lub" ? 12 : 24;  // LUB probes are the heavy ones
        SuiteReport rep = run_suite_serial(name, trials, {2, 6}, 42);
        if (rep.failed != 0) {
            CAPTURE(name);
            CAPTURE(rep.failures.front().trial);
            CAPTURE(rep.failures.front().message);
            CHECK(rep.failed == 0);
        } else {
            CHECK(rep.passed == trials);
        }
    }
}

TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 16);
    CHECK(is_suite("duality"));
    CHECK_FALSE(is_suite("no-such-suite"));
    CHECK_THROWS_AS(run_suite_serial("no-such-suite", 1, {2, 4}, 0), Error);
    try {
        run_suite_serial("no-such-suite", 1, {2, 4}, 0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownSuite);
    }
}

TEST_CASE("zero trials pass vacuously") {
    SuiteReport rep = run_suite_serial("duality", 0, {2, 8}, 1);
    CHECK(rep.trials == 0);
    CHECK(rep.passed == 0);
    CHECK(rep.failed == 0);
}

TEST_CASE("reruns with one seed are identical") {
    for (const std::string& name : {std::string("lemma21"), std::string("thm38")}) {
        SuiteReport a = run_suite_serial(name, 20, {2, 6}, 314159);
        SuiteReport b = run_suite_serial(name, 20, {2, 6}, 314159);
        CHECK(a.same_outcome(b));
    }
}

TEST_CASE("parallel runner matches the serial reference") {
    for (const std::string& name :
         {std::string("lemma21"), std::string("duality"), std::string("chains"),
          std::string("sqrt32"), std::string("cor34")}) {
        SuiteReport serial = run_suite_serial(name, 30, {2, 6}, 2718);
        SuiteReport parallel = run_suite_parallel(name, 30, {2, 6}, 2718, {}, 0);
        CHECK(serial.same_outcome(parallel));
        CHECK(parallel.failed == 0);
    }
}

TEST_CASE("failure reports carry reproducible seeds and inputs") {
    // An impossible tolerance forces failures without touching the library:
    // idem_tol = 0 rejects every generated idempotent.
    ToleranceConfig brutal;
    brutal.idem_tol = 0.0;
    SuiteReport rep = run_suite_serial("lemma21", 6, {3, 3}, 99, brutal);
    CHECK(rep.failed == rep.trials);
    REQUIRE(!rep.failures.empty());
    CHECK(rep.failures.front().trial == 0);
    CHECK(rep.failures.front().seed == derive_seed(99, 0));
    CHECK(!rep.failures.front().message.empty());
    for (std::size_t i = 1; i < rep.failures.size(); ++i) {
        CHECK(rep.failures[i].trial == static_cast<int>(i));
        CHECK(rep.failures[i].inputs.empty());  // only the first failure is serialized
    }

    SuiteReport again = run_suite_parallel("lemma21", 6, {3, 3}, 99, brutal, 0);
    CHECK(rep.same_outcome(again));
}

TEST_CASE("dimension range validation") {
    CHECK_THROWS_AS(run_suite_serial("duality", 1, {1, 4}, 0), Error);
    CHECK_THROWS_AS(run_suite_serial("duality", 1, {5, 4}, 0), Error);
    CHECK_THROWS_AS(run_suite_serial("duality", -1, {2, 4}, 0), Error);
}
