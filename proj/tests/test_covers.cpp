#include <doctest.h>

#include <random>

#include "coarsedim/error.hpp"
#include "coarsedim/json_io.hpp"
#include "coarsedim/oracle.hpp"
#include "coarsedim/solver.hpp"
#include "support.hpp"

using namespace coarsedim;
using testing_support::at;
using testing_support::naive_valid;
using testing_support::range_ids;

namespace {

// Intervals of random length dealt alternately to two families; same-family
// intervals are separated by a whole interval, so s = (2, 2) always holds.
SCover random_interval_cover(const FiniteMetricSpace& line, Dist lo, Dist hi, std::mt19937& rng) {
    std::uniform_int_distribution<Dist> len(1, 4);
    SCover c{line.label(), {2, 2}, 0, std::vector<SetFamily>(2)};
    std::size_t fam = 0;
    for (Dist x = lo; x <= hi;) {
        Dist y = std::min(hi, x + len(rng) - 1);
        c.families[fam].push_back(range_ids(line, x, y));
        c.D = std::max(c.D, y - x);
        fam ^= 1;
        x = y + 1;
    }
    return c;
}

}  // namespace

TEST_CASE("check_s_cover on the documented instances") {
    FiniteMetricSpace empty;
    CHECK(check_s_cover(empty, SCover{"", {2}, 0, std::vector<SetFamily>(1)}).ok());

    auto g = build_grid_space(1, 1, 4);
    SCover good{g.label(), {2, 2}, 3, {{range_ids(g, -4, -1), range_ids(g, 1, 4)}, {range_ids(g, 0, 0)}}};
    CHECK(check_s_cover(g, good).ok());
    CHECK(naive_valid(g, good));

    SCover wide{g.label(), {2, 2}, 3, {{range_ids(g, -4, 0), range_ids(g, 1, 4)}, {}}};
    auto rep = check_s_cover(g, wide);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violation->predicate == Predicate::diameter);
    CHECK(rep.violation->value == 4);
    CHECK_FALSE(naive_valid(g, wide));

    SCover close{g.label(), {2, 2}, 3, {{range_ids(g, -4, -1), range_ids(g, 0, 3)}, {range_ids(g, 4, 4)}}};
    auto rep2 = check_s_cover(g, close);
    REQUIRE_FALSE(rep2.ok());
    CHECK(rep2.violation->predicate == Predicate::disjointness);

    SCover gap{g.label(), {2, 2}, 3, {{range_ids(g, -4, -1)}, {range_ids(g, 1, 4)}}};
    auto rep3 = check_s_cover(g, gap);
    REQUIRE_FALSE(rep3.ok());
    CHECK(rep3.violation->predicate == Predicate::coverage);
}

TEST_CASE("exact solver verdicts and witnesses") {
    auto small = build_grid_space(1, 1, 2);
    auto unsat = solve_s_cover(small, {2}, 2);
    CHECK(unsat.status == SolveStatus::unsat);
    CHECK(exhaustive_cover_oracle(small, {2}, 2) == SolveStatus::unsat);

    auto g = build_grid_space(1, 1, 4);
    auto sat = solve_s_cover(g, {2, 2}, 3);
    REQUIRE(sat.status == SolveStatus::sat);
    REQUIRE(sat.witness.has_value());
    CHECK(naive_valid(g, *sat.witness));

    auto one = FiniteMetricSpace::from_coords("pt", {{7}});
    auto trivial = solve_s_cover(one, {9, 3}, 0);
    REQUIRE(trivial.status == SolveStatus::sat);
    std::size_t sets = 0;
    for (const auto& fam : trivial.witness->families) sets += fam.size();
    CHECK(sets == 1);

    // the same seed and budget give the same witness
    CHECK(solve_s_cover(g, {2, 2}, 3).witness == sat.witness);
}

TEST_CASE("node budget produces UNKNOWN rather than a wrong verdict") {
    auto g = build_grid_space(2, 1, 4);
    SolveOptions opts;
    opts.node_budget = 10;
    auto res = solve_s_cover(g, {4, 4}, 4, opts);
    CHECK(res.status == SolveStatus::unknown);
    CHECK(res.budget_exhausted);
}

TEST_CASE("solver agrees with enumeration on every small interval instance") {
    for (Dist hi = 0; hi <= 5; ++hi) {
        auto line = testing_support::interval(0, hi);
        for (Dist D = 0; D <= 3; ++D)
            for (Dist a = 1; a <= 3; ++a) {
                CHECK(solve_s_cover(line, {a}, D).status == exhaustive_cover_oracle(line, {a}, D));
                for (Dist b = 1; b <= 3; ++b)
                    CHECK(solve_s_cover(line, {a, b}, D).status == exhaustive_cover_oracle(line, {a, b}, D));
            }
    }
}

TEST_CASE("oracle caps are hard") {
    CHECK_THROWS_AS(exhaustive_cover_oracle(testing_support::interval(0, 10), {2}, 2), Error);
    CHECK_THROWS_AS(exhaustive_cover_oracle(testing_support::interval(0, 3), {2, 2, 2}, 2), Error);
    CHECK_THROWS_AS(exhaustive_cover_oracle(testing_support::interval(0, 3), {2}, 7), Error);
    CHECK(exhaustive_cover_oracle(build_grid_space(1, 1, 2), {2, 2}, 2) == SolveStatus::sat);
    CHECK(exhaustive_cover_oracle(FiniteMetricSpace::from_coords("pt", {{0}}), {9}, 0) == SolveStatus::sat);
}

TEST_CASE("sequence dimension") {
    auto line = build_grid_space(1, 1, 8);
    auto d = seq_dimension(line, {2}, 2, 4);
    REQUIRE(d.dimension.has_value());
    CHECK(*d.dimension == 1);
    CHECK(solve_s_cover(line, {2}, 2).status == SolveStatus::unsat);
    CHECK(solve_s_cover(line, {2, 2}, 2).status == SolveStatus::sat);

    auto one = FiniteMetricSpace::from_coords("pt", {{0}});
    CHECK(seq_dimension(one, {5}, 0, 3).dimension == std::optional<std::size_t>(0));

    // On the taxicab square r = 2 is beaten by a checkerboard, so the plane's
    // dimension shows at r = 3. Under the max metric it already shows at r = 2.
    auto square = build_grid_space(2, 1, 4);
    CHECK(seq_dimension(square, {2}, 2, 4).dimension == std::optional<std::size_t>(1));
    CHECK(seq_dimension(square, {3}, 2, 4).dimension == std::optional<std::size_t>(2));
    auto king = build_grid_space(2, 1, 4, kDefaultPointCap, MetricKind::chebyshev);
    CHECK(seq_dimension(king, {2}, 2, 4).dimension == std::optional<std::size_t>(2));
}

TEST_CASE("brick covers") {
    auto b1 = brick_cover(1, 2, 8);
    CHECK(b1.cover.families.size() == 2);
    CHECK(b1.cover.D <= 4);
    CHECK(naive_valid(b1.space, b1.cover));

    auto tiny = brick_cover(1, 1, 1);
    CHECK(tiny.cover.families.size() == 2);
    CHECK(naive_valid(tiny.space, tiny.cover));

    auto b2 = brick_cover(2, 2, 8);
    CHECK(b2.cover.families.size() == 3);
    CHECK(b2.cover.D <= b2.c_n * 2);
    CHECK(naive_valid(b2.space, b2.cover));
}

TEST_CASE("transport along coarse equivalences") {
    auto line = build_grid_space(1, 1, 4);
    SCover base{line.label(), {3, 3}, 1,
                {{range_ids(line, -4, -3), range_ids(line, 0, 1), range_ids(line, 4, 4)},
                 {range_ids(line, -2, -1), range_ids(line, 2, 3)}}};
    REQUIRE(naive_valid(line, base));

    CoarseMap id{line, line, {}, {}};
    for (PointIndex p = 0; p < line.size(); ++p) id.image.push_back(p);
    auto same = transport_cover(base, id, 1);
    CHECK(canonicalized(same.cover) == canonicalized(base));

    auto even = build_grid_space(1, 2, 8);
    CoarseMap twice{line, even, {}, {StepFunction::affine(2, 0), StepFunction::affine(2, 0), 0}};
    for (PointIndex p = 0; p < line.size(); ++p) twice.image.push_back(at(even, std::to_string(2 * line.coords(p)[0])));
    auto scaled = transport_cover(base, twice, 1);
    CHECK(scaled.cover.s == std::vector<Dist>{6, 6});
    CHECK(scaled.cover.D == 2);
    CHECK(naive_valid(even, scaled.cover));

    auto coarse = build_grid_space(1, 2, 4);
    SCover sparse{coarse.label(), {4, 4}, 0,
                  {{{at(coarse, "-4")}, {at(coarse, "0")}, {at(coarse, "4")}}, {{at(coarse, "-2")}, {at(coarse, "2")}}}};
    REQUIRE(naive_valid(coarse, sparse));
    CoarseMap incl{coarse, line, {}, {StepFunction::identity(), StepFunction::identity(), 1}};
    for (PointIndex p = 0; p < coarse.size(); ++p) incl.image.push_back(at(line, coarse.id(p)));
    auto hull = transport_cover(sparse, incl, 0);
    CHECK(hull.cover.s == std::vector<Dist>{2, 2});
    CHECK(hull.cover.D == 2);
    CHECK(naive_valid(line, hull.cover));
    CHECK(hull.degenerate == std::vector<bool>{false, false});
}

TEST_CASE("traces of covers") {
    auto line = build_grid_space(1, 1, 8);
    SCover c{line.label(), {2, 2}, 2,
             {{range_ids(line, -8, -6), range_ids(line, -2, 0), range_ids(line, 4, 6)},
              {range_ids(line, -5, -3), range_ids(line, 1, 3), range_ids(line, 7, 8)}}};
    REQUIRE(naive_valid(line, c));

    PointSet all(line.size());
    for (PointIndex p = 0; p < line.size(); ++p) all[p] = p;
    CHECK(canonicalized(trace_indices(c, all)) == canonicalized(c));

    auto zero = trace_indices(c, {at(line, "0")});
    CHECK(zero.families[0].size() == 1);
    CHECK(zero.families[1].empty());
    CHECK(zero.families[0][0] == PointSet{at(line, "0")});

    std::mt19937 rng(11);
    const PointSet mid = range_ids(line, -3, 3);
    const auto sub = subspace(line, mid);
    for (int trial = 0; trial < 100; ++trial) {
        SCover rc = random_interval_cover(line, -8, 8, rng);
        REQUIRE(naive_valid(line, rc));
        SCover local = trace_cover(rc, line, mid);
        CHECK(local.s == rc.s);
        CHECK(local.D == rc.D);
        CHECK(naive_valid(sub, local));
        CHECK(canonicalized(lift_cover(local, line, mid)) == canonicalized(trace_indices(rc, mid)));
    }
}

TEST_CASE("gluing covers along a chain") {
    auto g = build_grid_space(1, 1, 2);
    const PointSet b1 = range_ids(g, 0, 0), b2 = range_ids(g, -1, 1), b3 = range_ids(g, -2, 2);

    SCover only{g.label(), {2}, 2, {{b2}}};
    auto single = glue_covers(g, {b2}, {{only}}, GlueMode::chain);
    REQUIRE(single.cover.has_value());
    CHECK(*single.cover == only);

    SCover global{g.label(), {2, 2}, 2, {{range_ids(g, -2, 0)}, {range_ids(g, 2, 2)}}};
    global.families[0].push_back(range_ids(g, 2, 2));
    global.families[1] = {range_ids(g, 1, 1)};
    REQUIRE(naive_valid(g, global));
    // decoys first so the gluer has to backtrack
    SCover decoy1{g.label(), {2, 2}, 2, {{}, {b1}}};
    SCover decoy2{g.label(), {2, 2}, 2, {{range_ids(g, -1, 0)}, {range_ids(g, 1, 1)}}};
    std::vector<std::vector<SCover>> cands{{decoy1, trace_indices(global, b1)},
                                           {decoy2, trace_indices(global, b2)},
                                           {trace_indices(global, b3)}};
    auto glued = glue_covers(g, {b1, b2, b3}, cands, GlueMode::chain);
    REQUIRE(glued.cover.has_value());
    CHECK(naive_valid(g, *glued.cover));
    for (const PointSet& b : {b1, b2, b3})
        CHECK(canonicalized(trace_indices(*glued.cover, b)) == canonicalized(trace_indices(global, b)));

    // with s = (2) and D = 2 the big set has no candidate at all
    auto sub2 = subspace(g, b2);
    std::vector<SCover> small;
    for (const auto& c : enumerate_s_covers(sub2, {2}, 2, 100)) small.push_back(lift_cover(c, g, b2));
    REQUIRE_FALSE(small.empty());
    std::vector<SCover> big;
    for (const auto& c : enumerate_s_covers(g, {2}, 2, 100)) big.push_back(c);
    CHECK(big.empty());
    auto fail = glue_covers(g, {b2, b3}, {small, big}, GlueMode::chain);
    CHECK_FALSE(fail.cover.has_value());
}

TEST_CASE("fiber composition over a projection") {
    auto plane = build_grid_space(2, 1, 4);
    auto line = build_grid_space(1, 1, 4);
    CoarseMap proj{plane, line, {}, {StepFunction::shifted(1, 1000), StepFunction::identity(), 0}};
    for (PointIndex p = 0; p < plane.size(); ++p) proj.image.push_back(at(line, std::to_string(plane.coords(p)[0])));

    SCover base{line.label(), {3, 3}, 1,
                {{range_ids(line, -4, -3), range_ids(line, 0, 1), range_ids(line, 4, 4)},
                 {range_ids(line, -2, -1), range_ids(line, 2, 3)}}};
    REQUIRE(naive_valid(line, base));

    const std::vector<std::vector<std::pair<Dist, Dist>>> bands{{{-4, -3}, {0, 1}, {4, 4}}, {{-2, -1}, {2, 3}}};
    auto fibers_for = [&](Dist R) {
        std::vector<FiberFamily> out;
        for (const auto& fam : base.families) {
            FiberFamily ff{R, {}};
            for (const auto& set : fam) {
                SCover fiber{plane.label(), {2, 2}, 0, std::vector<SetFamily>(2)};
                for (std::size_t f = 0; f < 2; ++f)
                    for (auto [lo, hi] : bands[f]) {
                        PointSet block;
                        for (PointIndex x : set)
                            for (Dist y = lo; y <= hi; ++y)
                                block.push_back(at(plane, line.id(x) + "," + std::to_string(y)));
                        std::sort(block.begin(), block.end());
                        fiber.D = std::max(fiber.D, set_diameter(plane, block));
                        fiber.families[f].push_back(block);
                    }
                ff.fibers.push_back(fiber);
            }
            out.push_back(ff);
        }
        return out;
    };

    SCover product = fiber_compose(proj, base, fibers_for(2));
    CHECK(product.families.size() == 4);
    CHECK(product.s == std::vector<Dist>{2, 2, 2, 2});
    CHECK(naive_valid(plane, product));

    try {
        fiber_compose(proj, base, fibers_for(3));
        FAIL("expected a control violation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::control_violation);
    }
}

TEST_CASE("finite sums of separated parts") {
    std::vector<std::vector<Dist>> coords;
    for (Dist x = -2; x <= 2; ++x) coords.push_back({x});
    for (Dist x = 12; x <= 16; ++x) coords.push_back({x});
    auto amb = FiniteMetricSpace::from_coords("two-copies", coords);
    auto part = [&](Dist lo) {
        PointSet pts = range_ids(amb, lo, lo + 4);
        SCover c{amb.label(), {2, 2}, 3, {{range_ids(amb, lo, lo + 3)}, {range_ids(amb, lo + 4, lo + 4)}}};
        return SumPart{pts, c};
    };
    auto a = part(-2), b = part(12);

    SCover lone = finite_sum_cover(amb, {a}, 10);
    CHECK(canonicalized(lone) == canonicalized(a.cover));

    SCover merged = finite_sum_cover(amb, {a, b}, 10);
    CHECK(naive_valid(amb, merged));

    try {
        finite_sum_cover(amb, {a, b}, 1);
        FAIL("expected a separation error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::separation_too_small);
    }
}

TEST_CASE("uniform solving over a family of intervals") {
    std::vector<FiniteMetricSpace> gamma;
    for (Dist m = 0; m <= 12; ++m) gamma.push_back(testing_support::interval(0, m));

    auto loose = family_solve_uniform(gamma, {2}, 20);
    CHECK(loose.status == UniformStatus::uniform_sat);

    // each interval alone is coverable at D = m by its whole self
    for (Dist m = 0; m <= 12; ++m)
        CHECK(solve_s_cover(gamma[static_cast<std::size_t>(m)], {2}, m).status == SolveStatus::sat);

    auto tight = family_solve_uniform(gamma, {2}, 4);
    CHECK(tight.status == UniformStatus::unsat);
    REQUIRE(tight.failing_space.has_value());
    // one 2-disjoint family on an interval is a single set, so [0, 5] is the first failure
    CHECK(gamma[*tight.failing_space].size() == 6);

    CHECK(family_solve_uniform({}, {2}, 4).status == UniformStatus::uniform_sat);
}

TEST_CASE("cover JSON round-trips and rejects foreign spaces") {
    auto g = build_grid_space(1, 1, 4);
    auto w = *solve_s_cover(g, {2, 2}, 3).witness;
    auto j = cover_to_json(w, g);
    CHECK(canonicalized(cover_from_json(j, g)) == canonicalized(w));
    auto other = build_grid_space(1, 1, 3);
    try {
        cover_from_json(j, other);
        FAIL("expected label mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::label_mismatch);
    }
}
