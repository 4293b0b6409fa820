#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <torusdiv/verify.hpp>

#include <string>
#include <vector>

using namespace torusdiv;
using verify::CheckReport;
using verify::Status;

TEST_CASE("template certification passes on the real templates") {
    for (int n = 1; n <= 4; ++n)
        for (int p = 1; p <= n; ++p) {
            const auto r = verify::check_template(n, p);
            INFO("n=", n, " p=", p, " witness=", r.witness);
            CHECK(r.status == Status::pass);
            CHECK(r.witness.empty());
            CHECK(r.params.at("n") == n);
            CHECK(r.params.at("p") == p);
        }
    CHECK_THROWS_AS(verify::check_template(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(verify::check_template(0, 0), std::invalid_argument);
}

TEST_CASE("a skewed split is caught") {
    // Move the inner child's low corner from 1/4 to 1/3 without touching the
    // flanks: volumes no longer add up and an interior wall tears.
    auto tpl = rule::build_template(2, 1);
    tpl.inner.frames[0][0] = geom::Point({rat(1, 3)});
    const auto r = verify::check_template_data(tpl);
    CHECK(r.status == Status::fail);
    CHECK(!r.witness.empty());
    CHECK(r.witness.find("volume") != std::string::npos);
}

TEST_CASE("a child poking outside its parent is caught") {
    // Slide the first flank from [0,1/4] to [-1/4,0]: same length, so volume
    // additivity still holds, but the dragged corner leaves the parent.
    auto tpl = rule::build_template(2, 1);
    tpl.flanks[0].frames[0][0] = geom::Point({rat(-1, 4)});
    tpl.flanks[0].frames[1][0] = geom::Point({Rational(0)});
    const auto r = verify::check_template_data(tpl);
    CHECK(r.status == Status::fail);
    CHECK(r.witness.find("outside") != std::string::npos);
}

TEST_CASE("a corrupted boundary trace is caught") {
    auto tpl = rule::build_template(3, 1);
    REQUIRE(tpl.boundary_trace.size() == 4);
    std::swap(tpl.boundary_trace[0].cover, tpl.boundary_trace[1].cover);
    const auto r = verify::check_template_data(tpl);
    CHECK(r.status == Status::fail);
    CHECK(!r.witness.empty());
}

TEST_CASE("count check ties both constructions to the matrix") {
    for (int k = 0; k <= 3; ++k) {
        const auto r = verify::check_counts(2, k);
        INFO("k=", k, " witness=", r.witness);
        CHECK(r.status == Status::pass);
    }
    CHECK(verify::check_counts(3, 2).status == Status::pass);
    CHECK_THROWS_AS(verify::check_counts(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(verify::check_counts(2, -1), std::invalid_argument);
}

TEST_CASE("isomorphism check reports a usable mapping") {
    const auto r = verify::check_isomorphism(2, 2, 60.0);
    REQUIRE(r.status == Status::pass);
    CHECK(r.mapping.size() == 20);  // 8k+4 tiles at k=2

    // Exhausted budget must surface as a skip, not a pass.
    const auto skipped = verify::check_isomorphism(2, 3, 0.0);
    CHECK(skipped.status == Status::skip);
    CHECK(skipped.mapping.empty());
}

TEST_CASE("euler check covers both constructions") {
    CHECK(verify::check_euler(2, 2).status == Status::pass);
    CHECK(verify::check_euler(3, 1).status == Status::pass);
    CHECK(verify::check_euler(1, 2).status == Status::pass);
}

TEST_CASE("suite runs a deterministic grid") {
    verify::SuiteOptions options;
    options.budget_seconds = 60.0;
    const auto reports = verify::run_suite(2, 1, options);
    // templates: (1,1),(2,1),(2,2); counts/euler/iso: n in {1,2} x k in {0,1}.
    REQUIRE(reports.size() == 3 + 4 + 4 + 4);
    CHECK(reports[0].name == "check_template");
    CHECK(reports[3].name == "check_counts");
    CHECK(verify::all_passed(reports));
    for (const auto& r : reports) CHECK(r.status == Status::pass);

    // Same grid again: same names and parameters in the same order.
    const auto again = verify::run_suite(2, 1, options);
    REQUIRE(again.size() == reports.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(again[i].name == reports[i].name);
        CHECK(again[i].params == reports[i].params);
    }

    verify::SuiteOptions only_counts;
    only_counts.templates = only_counts.euler = only_counts.iso = false;
    const auto counts_only = verify::run_suite(2, 1, only_counts);
    REQUIRE(counts_only.size() == 4);
    for (const auto& r : counts_only) CHECK(r.name == "check_counts");

    CHECK_THROWS_AS(verify::run_suite(0, 1, options), std::invalid_argument);
}

TEST_CASE("aggregate verdict tolerates skips but not failures") {
    CheckReport pass;
    pass.status = Status::pass;
    CheckReport skip;
    skip.status = Status::skip;
    CheckReport fail;
    fail.status = Status::fail;
    fail.witness = "boom";
    CHECK(verify::all_passed({pass, skip}));
    CHECK(!verify::all_passed({pass, fail, skip}));
    CHECK(verify::all_passed({}));
}

TEST_CASE("report formatting") {
    CheckReport r;
    r.name = "check_counts";
    r.params = {{"n", 2}, {"k", 3}};
    r.status = Status::pass;
    r.seconds = 0.25;
    CHECK(verify::format_report(r) == "PASS check_counts n=2 k=3 (0.250s)");

    r.status = Status::fail;
    r.witness = "off by one";
    CHECK(verify::format_report(r) == "FAIL check_counts n=2 k=3 (0.250s): off by one");

    r.status = Status::skip;
    r.witness.clear();
    CHECK(verify::format_report(r) == "SKIP check_counts n=2 k=3 (0.250s)");
}
