#include <doctest.h>

#include "coarsedim/error.hpp"
#include "coarsedim/json_io.hpp"
#include "coarsedim/oracle.hpp"

using namespace coarsedim;

TEST_CASE("documented oracle verdicts") {
    auto small = build_grid_space(1, 1, 2);
    CHECK(exhaustive_cover_oracle(small, {2}, 2) == SolveStatus::unsat);
    CHECK(exhaustive_cover_oracle(small, {2, 2}, 2) == SolveStatus::sat);
    CHECK(exhaustive_cover_oracle(FiniteMetricSpace::from_coords("pt", {{0}}), {9}, 0) == SolveStatus::sat);
}

TEST_CASE("suites pass at their documented sizes") {
    CHECK(run_suite("rank-equivalence", 7, 500).passed());
    CHECK(run_suite("solver-vs-oracle", 7, 200).passed());
    CHECK(run_suite("kb-order", 7, 300).passed());
    CHECK(run_suite("ord-vs-ta", 7, 200).passed());
}

TEST_CASE("every suite passes on a second seed") {
    for (const auto& name : suite_names()) {
        CAPTURE(name);
        auto rep = run_suite(name, 12345, 40);
        CHECK(rep.passed());
        CHECK(rep.suite == name);
    }
}

TEST_CASE("suites are deterministic under a fixed seed") {
    auto a = suite_report_to_json(run_suite("solver-vs-oracle", 99, 50));
    auto b = suite_report_to_json(run_suite("solver-vs-oracle", 99, 50));
    CHECK(canonical_dump(a) == canonical_dump(b));
}

TEST_CASE("suite selection") {
    auto all = run_suites("all", 7, 5);
    CHECK(all.size() == suite_names().size());
    CHECK(run_suites("kb-order", 7, 5).size() == 1);
    try {
        run_suite("no-such-suite", 7, 5);
        FAIL("expected unknown-suite");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_suite);
    }
}
