#include <doctest.h>

#include <set>

#include "coarsedim/error.hpp"
#include "coarsedim/json_io.hpp"
#include "support.hpp"

using namespace coarsedim;
using testing_support::at;

namespace {

// Every triple, written out without reference to validate_metric.
bool naive_metric(const FiniteMetricSpace& s) {
    for (PointIndex a = 0; a < s.size(); ++a)
        for (PointIndex b = 0; b < s.size(); ++b) {
            if (s.dist(a, b) != s.dist(b, a)) return false;
            if ((s.dist(a, b) == 0) != (a == b)) return false;
            for (PointIndex c = 0; c < s.size(); ++c)
                if (s.dist(a, c) > s.dist(a, b) + s.dist(b, c)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("grid spaces enumerate lattice points with the taxicab metric") {
    auto line = build_grid_space(1, 1, 2);
    CHECK(line.size() == 5);
    CHECK(line.dist(at(line, "-2"), at(line, "2")) == 4);

    auto square = build_grid_space(2, 1, 1);
    CHECK(square.size() == 9);
    CHECK(square.dist(at(square, "1,1"), at(square, "-1,-1")) == 4);

    auto even = build_grid_space(1, 2, 4);
    std::set<std::string> got;
    for (PointIndex p = 0; p < even.size(); ++p) got.insert(even.id(p));
    CHECK(got == std::set<std::string>{"-4", "-2", "0", "2", "4"});
    for (PointIndex a = 0; a < even.size(); ++a)
        for (PointIndex b = a + 1; b < even.size(); ++b) CHECK(even.dist(a, b) >= 2);

    CHECK(naive_metric(square));
    CHECK(validate_metric(square).ok);
}

TEST_CASE("grid construction enforces the point cap and preconditions") {
    CHECK_THROWS_AS(build_grid_space(3, 1, 30, 1000), Error);
    try {
        build_grid_space(3, 1, 30, 1000);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::resource);
    }
    CHECK_THROWS_AS(build_grid_space(0, 1, 2), Error);
    CHECK_THROWS_AS(build_grid_space(1, 0, 2), Error);
}

TEST_CASE("max metric is available on request and is recorded in the label") {
    auto sq = build_grid_space(2, 1, 2, kDefaultPointCap, MetricKind::chebyshev);
    CHECK(sq.kind() == MetricKind::chebyshev);
    CHECK(sq.dist(at(sq, "2,2"), at(sq, "-2,-2")) == 4);
    CHECK(sq.dist(at(sq, "1,0"), at(sq, "0,1")) == 1);
    CHECK(sq.label() != build_grid_space(2, 1, 2).label());
    CHECK(naive_metric(sq));
}

TEST_CASE("asymptotic sums add the gaps between basepoints") {
    auto one = FiniteMetricSpace::from_coords("pt", {{0}});
    auto two = build_asymptotic_sum({one, one}, {0, 0}, {1, 2});
    REQUIRE(two.size() == 2);
    CHECK(two.dist(0, 1) == 3);

    auto g = build_grid_space(1, 1, 2);
    auto same = build_asymptotic_sum({g}, {at(g, "0")}, {4});
    CHECK(same.same_metric(g));

    auto pair = FiniteMetricSpace::from_coords("01", {{0}, {1}});
    auto three = build_asymptotic_sum({pair, pair, pair}, {0, 0, 0}, {2, 3, 5});
    CHECK(three.dist(at(three, "1:1"), at(three, "3:1")) == 12);
    CHECK(three.dist(at(three, "1:0"), at(three, "2:0")) == 5);
    CHECK(naive_metric(three));
    CHECK(validate_metric(three).ok);

    CHECK_THROWS_AS(build_asymptotic_sum({pair, pair}, {0, 0}, {3, 3}), Error);
}

TEST_CASE("union of scaled lattices") {
    auto s = build_cup_c_space({1, 2}, 2, 2);
    CHECK(s.find("0,2").has_value());
    CHECK_FALSE(s.find("0,1").has_value());
    CHECK(s.find("1,0").has_value());
    CHECK(s.find("-1,-2").has_value());

    auto small = build_cup_c_space({2, 3}, 1, 4);
    std::set<std::string> got;
    for (PointIndex p = 0; p < small.size(); ++p) got.insert(small.id(p));
    CHECK(got == std::set<std::string>{"-4", "-2", "0", "2", "4"});

    // set comprehension over the cube: x belongs iff some depth m has x_i in
    // c_i Z for i < m and x_i = 0 beyond
    const std::vector<Dist> c{1, 2, 4};
    std::size_t expected = 0;
    for (Dist x = -4; x <= 4; ++x)
        for (Dist y = -4; y <= 4; ++y)
            for (Dist z = -4; z <= 4; ++z) {
                bool in = (z == 0 && y == 0) || (z == 0 && y % 2 == 0) || (y % 2 == 0 && z % 4 == 0);
                expected += in ? 1 : 0;
            }
    auto big = build_cup_c_space(c, 3, 4);
    CHECK(big.size() == expected);
    CHECK(naive_metric(build_cup_c_space({1, 2}, 2, 2)));
}

TEST_CASE("greedy nets are separated and maximal") {
    auto line = testing_support::interval(0, 5);
    auto net = greedy_r_net(line, 2).net;
    std::set<std::string> got;
    for (PointIndex p = 0; p < net.size(); ++p) got.insert(net.id(p));
    CHECK(got == std::set<std::string>{"0", "2", "4"});

    auto g = build_grid_space(2, 1, 2);
    CHECK(greedy_r_net(g, 1).net.size() == g.size());

    auto res = greedy_r_net(g, 3);
    for (PointIndex a = 0; a < res.net.size(); ++a)
        for (PointIndex b = a + 1; b < res.net.size(); ++b) CHECK(res.net.dist(a, b) >= 3);
    for (PointIndex p = 0; p < g.size(); ++p) {
        Dist best = 1000;
        for (PointIndex q = 0; q < res.net.size(); ++q) best = std::min(best, g.dist(p, g.index_of(res.net.id(q))));
        CHECK(best <= 2);
    }
    // a net of a net is itself
    CHECK(greedy_r_net(res.net, 3).net.same_metric(res.net));
    CHECK(check_coarse_embedding(res.witness).ok);
}

TEST_CASE("coarse embeddings check both control functions") {
    auto g = testing_support::interval(0, 4);
    CoarseMap id{g, g, {0, 1, 2, 3, 4}, {}};
    CHECK(check_coarse_embedding(id).ok);

    auto even = build_grid_space(1, 2, 8);
    CoarseMap twice{g, even, {}, {StepFunction::affine(2, 0), StepFunction::affine(2, 0), 0}};
    for (Dist x = 0; x <= 4; ++x) twice.image.push_back(at(even, std::to_string(2 * x)));
    CHECK(check_coarse_embedding(twice).ok);

    CoarseMap constant{g, g, {0, 0, 0, 0, 0}, {}};
    auto rep = check_coarse_embedding(constant);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violating_pair.has_value());
    CHECK(rep.violating_pair->first == 0);
    CHECK(rep.violating_pair->second == 1);
    CHECK(rep.failed_bound == "lower");
}

TEST_CASE("step functions") {
    StepFunction f({{0, 0}, {3, 2}}, 5, 4, 2);
    CHECK(f(0) == 0);
    CHECK(f(2) == 0);
    CHECK(f(3) == 2);
    CHECK(f(5) == 4);
    CHECK(f(7) == 8);
    CHECK(StepFunction::shifted(1, 4)(2) == 0);
    CHECK(StepFunction::shifted(1, 4)(6) == 2);
    CHECK_THROWS_AS(StepFunction({{0, 5}}, 1, 4, 1), Error);
}

TEST_CASE("subspaces restrict the metric") {
    auto g = build_grid_space(1, 1, 2);
    CHECK(subspace(g, {0, 1, 2, 3, 4}).same_metric(g));
    CHECK(subspace(g, {at(g, "1")}).size() == 1);
    auto sub = subspace(g, testing_support::ids(g, {"-2", "0", "2"}));
    CHECK(sub.dist(at(sub, "-2"), at(sub, "2")) == 4);
    auto nested = subspace(sub, testing_support::ids(sub, {"-2", "2"}));
    CHECK(nested.same_metric(subspace(g, testing_support::ids(g, {"-2", "2"}))));
    CHECK_THROWS_AS(subspace(g, {}), Error);
}

TEST_CASE("matrix spaces are validated") {
    auto bad = FiniteMetricSpace::from_matrix("bad", {"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0});
    auto rep = validate_metric(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation == "triangle");
    CHECK_FALSE(naive_metric(bad));
}

TEST_CASE("space JSON round-trips") {
    auto g = build_grid_space(2, 1, 1);
    auto back = space_from_json(space_to_json(g));
    CHECK(back.same_metric(g));
    CHECK(back.label() == g.label());
    CHECK(canonical_dump(space_to_json(back)) == canonical_dump(space_to_json(g)));

    auto m = FiniteMetricSpace::from_matrix("m", {"x", "y"}, {0, 3, 3, 0});
    auto mb = space_from_json(space_to_json(m));
    CHECK(mb.dist(0, 1) == 3);

    auto j = parse_json(R"({"label":"t","points":["a","b"],"metric":{"kind":"matrix","rows":[[0,1],[2,0]]}})");
    CHECK_THROWS_AS(space_from_json(j), Error);
    CHECK_THROWS_AS(parse_json("{not json"), Error);
}
