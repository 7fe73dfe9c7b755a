#include "coarsedim/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "coarsedim/cover.hpp"
#include "coarsedim/error.hpp"
#include "coarsedim/game.hpp"
#include "coarsedim/tree.hpp"

namespace coarsedim {

using nlohmann::json;

// ---- the reference decider -----------------------------------------------

namespace {

// Every partition of `pts` into clusters (restricted growth strings), each
// checked in full: clusters D-bounded, distinct clusters at distance >= r.
bool partition_exists(const FiniteMetricSpace& space, const std::vector<PointIndex>& pts, Dist r, Dist D) {
    const std::size_t m = pts.size();
    if (m == 0) return true;
    std::vector<std::size_t> label(m, 0);
    auto valid = [&] {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                Dist d = space.dist(pts[a], pts[b]);
                if (label[a] == label[b] ? d > D : d < r) return false;
            }
        return true;
    };
    while (true) {
        if (valid()) return true;
        // next restricted growth string
        std::size_t i = m - 1;
        while (i > 0) {
            std::size_t max_before = *std::max_element(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(i));
            if (label[i] <= max_before) break;
            --i;
        }
        if (i == 0) return false;
        ++label[i];
        std::fill(label.begin() + static_cast<std::ptrdiff_t>(i) + 1, label.end(), 0);
    }
}

}  // namespace

SolveStatus exhaustive_cover_oracle(const FiniteMetricSpace& space, const std::vector<Dist>& s, Dist D) {
    if (s.empty()) throw Error(Errc::invalid_input, "demand sequence must be nonempty");
    if (D < 0) throw Error(Errc::invalid_input, "bound must be >= 0");
    if (space.size() > kOraclePointCap || s.size() > kOracleFamilyCap || D > kOracleBoundCap)
        throw Error(Errc::resource, "oracle caps: |X| <= 10, |s| <= 2, D <= 6");
    const std::size_t n = space.size();
    const std::size_t k = s.size();
    std::map<std::pair<std::uint32_t, Dist>, bool> memo;
    auto family_ok = [&](std::uint32_t mask, Dist r) {
        auto key = std::make_pair(mask, r);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::vector<PointIndex> pts;
        for (PointIndex p = 0; p < n; ++p)
            if (mask >> p & 1U) pts.push_back(p);
        bool ok = partition_exists(space, pts, r, D);
        memo.emplace(key, ok);
        return ok;
    };
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= k;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> masks(k, 0);
        std::size_t c = code;
        for (PointIndex p = 0; p < n; ++p) {
            masks[c % k] |= 1U << p;
            c /= k;
        }
        bool ok = true;
        for (std::size_t f = 0; f < k && ok; ++f) ok = family_ok(masks[f], s[f]);
        if (ok) return SolveStatus::sat;
    }
    return SolveStatus::unsat;
}

// ---- suite plumbing ------------------------------------------------------

namespace {

using Rng = std::mt19937_64;
using Coords = std::vector<std::vector<Dist>>;

Rng trial_rng(std::uint64_t seed, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    return Rng(seq);
}

Dist uniform(Rng& rng, Dist lo, Dist hi) { return std::uniform_int_distribution<Dist>(lo, hi)(rng); }

std::string fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void record(SuiteReport& rep, const std::string& expected, const std::string& got, const json& repro) {
    std::string text = repro.dump();
    rep.failures.push_back({fnv1a(text), expected, got, text});
}

FiniteMetricSpace space_of(const Coords& coords) { return FiniteMetricSpace::from_coords("sample", coords); }

/// Random subset of a small 1D or 2D lattice box.
Coords random_coords(Rng& rng, std::size_t max_points) {
    const bool planar = uniform(rng, 0, 1) == 1;
    Coords grid;
    if (planar) {
        for (Dist x = -3; x <= 3; ++x)
            for (Dist y = -3; y <= 3; ++y) grid.push_back({x, y});
    } else {
        for (Dist x = -8; x <= 8; ++x) grid.push_back({x});
    }
    std::shuffle(grid.begin(), grid.end(), rng);
    std::size_t m = static_cast<std::size_t>(uniform(rng, 1, static_cast<Dist>(std::min(max_points, grid.size()))));
    grid.resize(m);
    std::sort(grid.begin(), grid.end());
    return grid;
}

/// Drops points one at a time while the failure persists.
Coords shrink_coords(Coords coords, const std::function<bool(const Coords&)>& fails) {
    bool progress = true;
    while (progress && coords.size() > 1) {
        progress = false;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            Coords smaller = coords;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(smaller)) {
                coords = std::move(smaller);
                progress = true;
                break;
            }
        }
    }
    return coords;
}

/// Drops leaves one at a time while the failure persists.
FinTree shrink_tree(FinTree tree, const std::function<bool(const FinTree&)>& fails) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& s : tree.nodes()) {
            if (s.empty() || !tree.is_leaf(s)) continue;
            auto nodes = tree.nodes();
            nodes.erase(s);
            FinTree smaller(std::move(nodes));
            if (fails(smaller)) {
                tree = std::move(smaller);
                progress = true;
                break;
            }
        }
    }
    return tree;
}

json tree_json(const FinTree& t) { return json(std::vector<Sequence>(t.nodes().begin(), t.nodes().end())); }

/// Random tree: depth <= 4, every node has at most 4 children with distinct
/// labels in [0, 9].
FinTree random_tree(Rng& rng, std::size_t max_depth = 4, Dist max_branch = 4) {
    std::set<Sequence> nodes{Sequence{}};
    std::function<void(const Sequence&)> grow = [&](const Sequence& s) {
        if (s.size() == max_depth) return;
        Dist children = uniform(rng, 0, max_branch);
        if (s.empty()) children = std::max<Dist>(children, 1);
        std::vector<std::int64_t> labels(10);
        std::iota(labels.begin(), labels.end(), 0);
        std::shuffle(labels.begin(), labels.end(), rng);
        for (Dist c = 0; c < children; ++c) {
            // thin out deep levels so trees stay moderate
            if (s.size() >= 2 && uniform(rng, 0, 2) == 0) continue;
            Sequence child = s;
            child.push_back(labels[static_cast<std::size_t>(c)]);
            nodes.insert(child);
            grow(child);
        }
    };
    grow(Sequence{});
    return FinTree(std::move(nodes));
}

/// Plain O(n^2) check of an s-cover over the whole space, or over `region`.
bool naive_cover_ok(const FiniteMetricSpace& space, const SCover& cover,
                    const std::optional<PointSet>& region = std::nullopt) {
    if (cover.families.size() != cover.s.size()) return false;
    std::vector<char> in(space.size(), region ? 0 : 1), seen(space.size(), 0);
    if (region)
        for (PointIndex p : *region) in[p] = 1;
    for (std::size_t f = 0; f < cover.families.size(); ++f) {
        const auto& family = cover.families[f];
        for (std::size_t a = 0; a < family.size(); ++a) {
            if (family[a].empty()) return false;
            for (PointIndex p : family[a]) {
                if (p >= space.size() || !in[p]) return false;
                seen[p] = 1;
                for (PointIndex q : family[a])
                    if (space.dist(p, q) > cover.D) return false;
            }
            for (std::size_t b = a + 1; b < family.size(); ++b)
                for (PointIndex p : family[a])
                    for (PointIndex q : family[b])
                        if (space.dist(p, q) < cover.s[f]) return false;
        }
    }
    for (PointIndex p = 0; p < space.size(); ++p)
        if (in[p] && !seen[p]) return false;
    return true;
}

std::string status_text(SolveStatus s) { return std::string(status_name(s)); }

SolveStatus exact_status(const FiniteMetricSpace& space, const std::vector<Dist>& s, Dist D,
                         std::optional<SCover>* witness = nullptr) {
    SolveOptions opts;
    opts.mode = SolveMode::exact;
    auto res = solve_s_cover(space, s, D, opts);
    if (witness) *witness = res.witness;
    return res.status;
}

// ---- suites --------------------------------------------------------------

void solver_vs_oracle(SuiteReport& rep, std::size_t trials) {
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        Coords coords = random_coords(rng, kOraclePointCap);
        std::vector<Dist> s(static_cast<std::size_t>(uniform(rng, 1, 2)));
        for (auto& v : s) v = uniform(rng, 1, 4);
        Dist D = uniform(rng, 0, 4);
        auto disagree = [&](const Coords& c) {
            auto space = space_of(c);
            return exact_status(space, s, D) != exhaustive_cover_oracle(space, s, D);
        };
        if (!disagree(coords)) continue;
        coords = shrink_coords(coords, disagree);
        auto space = space_of(coords);
        record(rep, status_text(exhaustive_cover_oracle(space, s, D)), status_text(exact_status(space, s, D)),
               {{"coords", coords}, {"s", s}, {"D", D}});
    }
    rep.trials = trials;
}

std::set<std::set<Sequence>> all_small_trees(std::size_t max_nodes) {
    std::set<std::set<Sequence>> seen;
    std::vector<std::set<Sequence>> frontier{{Sequence{}}};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<std::set<Sequence>> next;
        for (const auto& t : frontier) {
            if (t.size() == max_nodes) continue;
            for (const auto& s : t)
                for (std::int64_t a = 0; a < static_cast<std::int64_t>(max_nodes); ++a) {
                    Sequence child = s;
                    child.push_back(a);
                    if (t.count(child)) continue;
                    auto bigger = t;
                    bigger.insert(child);
                    if (seen.insert(bigger).second) next.push_back(bigger);
                }
        }
        frontier = std::move(next);
    }
    return seen;
}

void rank_equivalence(SuiteReport& rep, std::size_t trials) {
    auto differs = [](const FinTree& t) {
        auto a = rank_recursive(t), b = rank_levels(t), c = rank_kb_order(t);
        return a.rank != b.rank || a.node_rank != b.node_rank || a.rank != c.rank || a.node_rank != c.node_rank;
    };
    auto check = [&](const FinTree& tree) {
        if (!differs(tree)) return;
        FinTree small = shrink_tree(tree, differs);
        auto a = rank_recursive(small), b = rank_levels(small);
        record(rep, "rank " + std::to_string(a.rank.value_or(0)), "levels " + std::to_string(b.rank.value_or(0)),
               {{"tree", tree_json(small)}});
    };
    std::size_t checks = 0;
    check(FinTree());
    ++checks;
    for (const auto& nodes : all_small_trees(4)) {
        check(FinTree(nodes));
        ++checks;
    }
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        check(random_tree(rng));
        ++checks;
    }
    rep.trials = checks;
}

OrdSet random_ord_set(Rng& rng) {
    OrdSet m;
    Dist members = uniform(rng, 0, 6);
    for (Dist i = 0; i < members; ++i) {
        FinSet member;
        while (member.empty())
            for (std::int64_t a = 1; a <= 5; ++a)
                if (uniform(rng, 0, 2) == 0) member.insert(a);
        m.members.insert(member);
    }
    return m;
}

void ord_vs_ta(SuiteReport& rep, std::size_t trials) {
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        OrdSet m = random_ord_set(rng);
        // the empty system has the empty tree, whose marker stands for 0
        std::uint64_t tree_rank = rank_recursive(ta_tree(m)).rank.value_or(0);
        std::uint64_t ord = ord_set(m);
        if (tree_rank == ord) continue;
        json members = json::array();
        for (const auto& s : m.members) members.push_back(std::vector<std::int64_t>(s.begin(), s.end()));
        record(rep, "ord " + std::to_string(ord), "rank " + std::to_string(tree_rank), {{"members", members}});
    }
    rep.trials = trials;
}

// reference reading of the order, written independently of kb_compare
bool kb_less_reference(const Sequence& s, const Sequence& t) {
    for (std::size_t i = 0; i < s.size() && i < t.size(); ++i)
        if (s[i] != t[i]) return s[i] < t[i];
    return s.size() > t.size();
}

void kb_order(SuiteReport& rep, std::size_t trials) {
    auto broken = [](const FinTree& tree) -> std::optional<std::string> {
        std::vector<Sequence> nodes(tree.nodes().begin(), tree.nodes().end());
        for (const auto& a : nodes)
            for (const auto& b : nodes) {
                auto ab = kb_compare(a, b), ba = kb_compare(b, a);
                if ((ab == 0) != (a == b)) return "equality";
                if ((ab < 0) != (ba > 0)) return "antisymmetry";
                if ((ab < 0) != kb_less_reference(a, b)) return "reference";
            }
        auto sorted = kb_sorted(tree);
        for (std::size_t i = 0; i < sorted.size(); ++i)
            for (std::size_t j = i + 1; j < sorted.size(); ++j)
                if (!(kb_compare(sorted[i], sorted[j]) < 0)) return "transitivity";
        std::map<Sequence, std::size_t> pos;
        for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i]] = i;
        for (const auto& s : nodes)
            if (!s.empty() && pos[s] >= pos[Sequence(s.begin(), s.end() - 1)]) return "child-precedes-parent";
        return std::nullopt;
    };
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        FinTree tree = random_tree(rng);
        auto why = broken(tree);
        if (!why) continue;
        FinTree small = shrink_tree(tree, [&](const FinTree& x) { return broken(x).has_value(); });
        record(rep, "strict total order", *why, {{"tree", tree_json(small)}});
    }
    rep.trials = trials;
}

void t_embedding(SuiteReport& rep, std::size_t trials) {
    auto broken = [](const FinTree& src) -> std::optional<std::string> {
        std::map<Sequence, Sequence> f;
        std::vector<Sequence> images;
        for (const auto& s : src.nodes()) {
            f[s] = canonical_increasing_embed(s);
            images.push_back(f[s]);
        }
        FinTree dst = tree_from_sequences(images);
        if (!check_t_embedding(f, src, dst)) return "not a t-embedding";
        if (rank_recursive(src).rank.value_or(0) > rank_recursive(dst).rank.value_or(0)) return "rank increased";
        return std::nullopt;
    };
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        FinTree tree = random_tree(rng);
        auto why = broken(tree);
        if (!why) continue;
        FinTree small = shrink_tree(tree, [&](const FinTree& x) { return broken(x).has_value(); });
        record(rep, "embedding with rank(src) <= rank(image)", *why, {{"tree", tree_json(small)}});
    }
    rep.trials = trials;
}

void fraktal_monotone(SuiteReport& rep, std::size_t trials) {
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        Coords coords = random_coords(rng, 12);
        std::vector<Dist> s(static_cast<std::size_t>(uniform(rng, 1, 3)));
        for (auto& v : s) v = uniform(rng, 1, 4);
        Dist D = uniform(rng, 0, 4);
        std::vector<Dist> stronger = s;
        for (auto& v : stronger) v += uniform(rng, 0, 2);
        Dist tighter = std::max<Dist>(D - uniform(rng, 0, 2), 0);

        // a harder instance may only be feasible if the easier one is, and
        // its witness must then serve the easier instance as is
        auto violation = [&](const Coords& c) -> std::optional<std::string> {
            auto space = space_of(c);
            auto base = exact_status(space, s, D);
            std::optional<SCover> w;
            if (exact_status(space, stronger, D, &w) == SolveStatus::sat) {
                if (base == SolveStatus::unsat) return "stronger demands SAT while base UNSAT";
                SCover relaxed = *w;
                relaxed.s = s;
                if (!naive_cover_ok(space, relaxed)) return "stronger witness fails base demands";
            }
            if (exact_status(space, s, tighter, &w) == SolveStatus::sat) {
                if (base == SolveStatus::unsat) return "smaller bound SAT while base UNSAT";
                SCover relaxed = *w;
                relaxed.D = D;
                if (!naive_cover_ok(space, relaxed)) return "tighter witness fails base bound";
            }
            return std::nullopt;
        };
        auto why = violation(coords);
        if (!why) continue;
        coords = shrink_coords(coords, [&](const Coords& c) { return violation(c).has_value(); });
        record(rep, "monotone verdicts", *violation(coords),
               {{"coords", coords}, {"s", s}, {"stronger", stronger}, {"D", D}, {"tighter", tighter}});
    }
    rep.trials = trials;
}

struct GameCase {
    FiniteMetricSpace space;
    Dist D;
};

std::vector<GameCase> game_cases() {
    auto interval = [](Dist lo, Dist hi) {
        Coords c;
        for (Dist x = lo; x <= hi; ++x) c.push_back({x});
        return c;
    };
    auto rect = [](Dist w, Dist h) {
        Coords c;
        for (Dist x = 0; x < w; ++x)
            for (Dist y = 0; y < h; ++y) c.push_back({x, y});
        return c;
    };
    return {
        {FiniteMetricSpace::from_coords("interval(-2,2)", interval(-2, 2)), 2},
        {FiniteMetricSpace::from_coords("interval(-7,7)", interval(-7, 7)), 2},
        {FiniteMetricSpace::from_coords("square(3)", rect(3, 3)), 1},
        {FiniteMetricSpace::from_coords("rect(3,4)", rect(3, 4)), 2},
        {build_cup_c_space({1, 2}, 2, 2), 2},
    };
}

void game_equals_tree(SuiteReport& rep, std::size_t) {
    constexpr Dist rmax = 3;
    constexpr std::size_t lmax = 3;
    std::size_t checks = 0;
    for (const auto& [space, D] : game_cases()) {
        EmpiricalTreeConfig tc;
        tc.rmax = rmax;
        tc.lmax = lmax;
        tc.D = D;
        tc.variant = TreeVariant::nondecreasing;
        FinTree tree = empirical_dim_tree(space, tc).tree;

        GameConfig gc;
        gc.space = space.label();
        gc.bound = D;
        gc.kcap = space.size();  // singletons always answer
        gc.rmax = rmax;
        gc.track_stabilization = false;
        for (const auto& script : enumerate_sequences(rmax, lmax, TreeVariant::nondecreasing)) {
            ++checks;
            GameTranscript g = play_script(space, gc, script);
            bool defeated = g.status != GameStatus::a_wins && g.rounds.size() == script.size();
            auto valid = validate_transcript(g, &space);
            if (defeated == tree.contains(script) && valid.ok) continue;
            json repro = {{"space", space.label()}, {"D", D}, {"script", script}};
            if (!valid.ok)
                record(rep, "valid transcript", valid.detail, repro);
            else
                record(rep, tree.contains(script) ? "in tree" : "not in tree",
                       defeated ? "B defeats A" : "A wins", repro);
        }
    }
    rep.trials = checks;
}

/// Blocks of side 2 coloured by block parity; `offset` shifts the blocks.
SCover parity_block_cover(const FiniteMetricSpace& space, Dist ox, Dist oy) {
    auto floordiv = [](Dist a, Dist b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    std::map<std::pair<Dist, Dist>, PointSet> blocks;
    for (PointIndex p = 0; p < space.size(); ++p) {
        auto c = space.coords(p);
        blocks[{floordiv(c[0] + ox, 2), floordiv(c[1] + oy, 2)}].push_back(p);
    }
    SCover cover{space.label(), {3, 3, 3, 3}, 2, std::vector<SetFamily>(4)};
    for (auto& [key, pts] : blocks) {
        std::size_t family = static_cast<std::size_t>(((key.first % 2) + 2) % 2 * 2 + ((key.second % 2) + 2) % 2);
        cover.families[family].push_back(pts);
    }
    return canonicalized(cover);
}

void glue_roundtrip(SuiteReport& rep, std::size_t trials) {
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        Coords coords;
        for (Dist x = -3; x <= 3; ++x)
            for (Dist y = -3; y <= 3; ++y) coords.push_back({x, y});
        std::shuffle(coords.begin(), coords.end(), rng);
        coords.resize(static_cast<std::size_t>(uniform(rng, 12, 40)));
        std::sort(coords.begin(), coords.end());
        auto space = space_of(coords);

        PointSet top(space.size());
        std::iota(top.begin(), top.end(), PointIndex{0});
        auto shrink = [&](const PointSet& from) {
            PointSet out;
            for (PointIndex p : from)
                if (uniform(rng, 0, 2) > 0) out.push_back(p);
            if (out.empty()) out.push_back(from.front());
            return out;
        };
        PointSet middle = shrink(top);
        PointSet bottom = shrink(middle);
        std::vector<PointSet> chain{bottom, middle, top};

        std::vector<SCover> covers;
        for (Dist ox = 0; ox < 2; ++ox)
            for (Dist oy = 0; oy < 2; ++oy) covers.push_back(parity_block_cover(space, ox, oy));
        std::vector<std::vector<SCover>> candidates(3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (const auto& c : covers) candidates[i].push_back(canonicalized(trace_indices(c, chain[i])));
            std::shuffle(candidates[i].begin(), candidates[i].end(), rng);
        }
        auto glued = glue_covers(space, chain, candidates, GlueMode::chain);
        json repro = {{"coords", coords}, {"chain", chain}};
        if (!glued.cover) {
            record(rep, "glued cover", "none found", repro);
            continue;
        }
        if (!naive_cover_ok(space, *glued.cover, top)) {
            record(rep, "valid glued cover", "invalid cover", repro);
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i) {
            const SCover& chosen = candidates[i][glued.selection[i]];
            if (canonicalized(trace_indices(*glued.cover, chain[i])) != chosen) {
                record(rep, "trace equals selected candidate", "trace differs on subset " + std::to_string(i),
                       repro);
                break;
            }
        }
    }
    rep.trials = trials;
}

void transport_lemma(SuiteReport& rep, std::size_t trials) {
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(rep.seed, t);
        const Dist a = uniform(rng, 4, 20);
        const Dist slope = uniform(rng, 1, 3);
        const Dist noise = uniform(rng, 0, 2);
        Coords src;
        for (Dist x = 0; x <= a; ++x) src.push_back({x});
        std::vector<Dist> image_x;
        for (Dist x = 0; x <= a; ++x) image_x.push_back(slope * x + noise + uniform(rng, -noise, noise));
        const Dist top = *std::max_element(image_x.begin(), image_x.end());
        Coords dst;
        for (Dist y = 0; y <= top; ++y) dst.push_back({y});
        auto X = FiniteMetricSpace::from_coords("interval(0," + std::to_string(a) + ")", src);
        auto Y = FiniteMetricSpace::from_coords("interval(0," + std::to_string(top) + ")", dst);

        Dist N = 0;
        for (Dist y = 0; y <= top; ++y) {
            Dist best = top + 1;
            for (Dist v : image_x) best = std::min(best, std::abs(v - y));
            N = std::max(N, best);
        }
        CoarseMap map{X, Y, {}, {StepFunction::shifted(slope, 2 * noise), StepFunction::affine(slope, 2 * noise), N}};
        for (Dist v : image_x) map.image.push_back(static_cast<PointIndex>(v));

        // alternating blocks of E + 1 points: two families, (E + 2)-disjoint
        const Dist E = uniform(rng, 0, 4);
        SCover cover{X.label(), {uniform(rng, 1, E + 2), uniform(rng, 1, E + 2)}, E, std::vector<SetFamily>(2)};
        for (Dist start = 0, b = 0; start <= a; start += E + 1, ++b) {
            PointSet block;
            for (Dist x = start; x <= std::min(a, start + E); ++x) block.push_back(static_cast<PointIndex>(x));
            cover.families[static_cast<std::size_t>(b % 2)].push_back(block);
        }
        json repro = {{"a", a}, {"image", image_x}, {"slope", slope}, {"noise", noise}, {"N", N},
                      {"E", E}, {"s", cover.s}};
        auto moved = transport_cover(cover, map, E).cover;
        std::vector<Dist> declared;
        for (Dist si : cover.s) declared.push_back(std::max<Dist>(slope * si - 2 * noise - 2 * N, 0));
        const Dist declared_D = slope * E + 2 * noise + 2 * N;
        if (moved.s != declared || moved.D != declared_D) {
            record(rep, "declared (p1(s)-2N, p2(E)+2N)", "different declared parameters", repro);
            continue;
        }
        if (!naive_cover_ok(Y, moved)) record(rep, "transported cover valid", "predicate violated", repro);
    }
    rep.trials = trials;
}

using SuiteFn = void (*)(SuiteReport&, std::size_t);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> suites{
        {"solver-vs-oracle", solver_vs_oracle}, {"rank-equivalence", rank_equivalence},
        {"ord-vs-ta", ord_vs_ta},               {"kb-order", kb_order},
        {"t-embedding", t_embedding},           {"fraktal-monotone", fraktal_monotone},
        {"game-equals-tree", game_equals_tree}, {"glue-roundtrip", glue_roundtrip},
        {"transport-lemma", transport_lemma},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "solver-vs-oracle", "rank-equivalence", "ord-vs-ta",      "kb-order",        "t-embedding",
        "fraktal-monotone", "game-equals-tree", "glue-roundtrip", "transport-lemma",
    };
    return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error(Errc::unknown_suite, "unknown suite '" + name + "'");
    SuiteReport rep;
    rep.suite = name;
    rep.seed = seed;
    auto start = std::chrono::steady_clock::now();
    it->second(rep, trials);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, std::size_t trials) {
    std::vector<SuiteReport> out;
    if (name == "all") {
        for (const auto& n : suite_names()) out.push_back(run_suite(n, seed, trials));
    } else {
        out.push_back(run_suite(name, seed, trials));
    }
    return out;
}

}  // namespace coarsedim
