#include <doctest.h>

#include "dnls/checks.hpp"
#include "dnls/errors.hpp"

using namespace dnls;

TEST_CASE("every property suite passes") {
    for (const std::string& name : suite_names()) {
        const std::vector<SuiteResult> r = run_checks(name);
        REQUIRE(r.size() == 1);
        CHECK(r[0].suite == name);
        CHECK_FALSE(r[0].lines.empty());
        for (const CheckLine& line : r[0].lines) {
            INFO(name << ": " << line.name << " " << line.detail);
            CHECK(line.passed);
        }
    }
}

TEST_CASE("suite selection") {
    CHECK(run_checks("szego").size() == 1);
    CHECK_THROWS_AS(run_checks("unknown"), ConfigError);
}
