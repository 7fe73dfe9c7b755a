#include "coarsedim/cover.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "coarsedim/error.hpp"

namespace coarsedim {

std::string_view predicate_name(Predicate p) {
    switch (p) {
    case Predicate::structure: return "structure";
    case Predicate::empty_set: return "empty-set";
    case Predicate::unknown_point: return "unknown-point";
    case Predicate::diameter: return "diameter";
    case Predicate::disjointness: return "disjointness";
    case Predicate::coverage: return "coverage";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kSignVectorDimLimit = 12;

bool taxicab_fast_path(const FiniteMetricSpace& space) {
    return space.kind() == MetricKind::taxicab && space.dimension() <= kSignVectorDimLimit;
}

struct DiameterWitness {
    Dist value = 0;
    PointIndex p = 0;
    PointIndex q = 0;
};

// Taxicab diameter is the maximum over sign vectors e (first entry fixed to +)
// of max <e, x> - min <e, x>.
DiameterWitness taxicab_diameter(const FiniteMetricSpace& space, const PointSet& set) {
    DiameterWitness best{0, set.front(), set.front()};
    const std::size_t dim = space.dimension();
    const std::size_t masks = dim == 0 ? 1 : (std::size_t{1} << (dim - 1));
    for (std::size_t mask = 0; mask < masks; ++mask) {
        Dist hi = std::numeric_limits<Dist>::min(), lo = std::numeric_limits<Dist>::max();
        PointIndex hi_p = set.front(), lo_p = set.front();
        for (PointIndex p : set) {
            auto c = space.coords(p);
            Dist v = 0;
            for (std::size_t j = 0; j < dim; ++j) {
                bool negate = j > 0 && ((mask >> (j - 1)) & 1U);
                v += negate ? -c[j] : c[j];
            }
            if (v > hi) {
                hi = v;
                hi_p = p;
            }
            if (v < lo) {
                lo = v;
                lo_p = p;
            }
        }
        if (hi - lo > best.value) best = {hi - lo, lo_p, hi_p};
    }
    return best;
}

DiameterWitness pairwise_diameter(const FiniteMetricSpace& space, const PointSet& set) {
    DiameterWitness best{0, set.front(), set.front()};
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            Dist d = space.dist(set[i], set[j]);
            if (d > best.value) best = {d, set[i], set[j]};
        }
    return best;
}

DiameterWitness diameter_of(const FiniteMetricSpace& space, const PointSet& set) {
    if (set.empty()) return {};
    return taxicab_fast_path(space) ? taxicab_diameter(space, set) : pairwise_diameter(space, set);
}

struct CloseWitness {
    Dist value;
    PointIndex p;
    PointIndex q;
};

// First cross pair closer than r, if any.
std::optional<CloseWitness> close_pair(const FiniteMetricSpace& space, const PointSet& a,
                                       const PointSet& b, Dist r) {
    for (PointIndex p : a)
        for (PointIndex q : b) {
            Dist d = space.dist(p, q);
            if (d < r) return CloseWitness{d, p, q};
        }
    return std::nullopt;
}

struct Box {
    std::vector<Dist> lo, hi;
};

Box bounding_box(const FiniteMetricSpace& space, const PointSet& set) {
    const std::size_t dim = space.dimension();
    Box box{std::vector<Dist>(dim, std::numeric_limits<Dist>::max()),
            std::vector<Dist>(dim, std::numeric_limits<Dist>::min())};
    for (PointIndex p : set) {
        auto c = space.coords(p);
        for (std::size_t j = 0; j < dim; ++j) {
            box.lo[j] = std::min(box.lo[j], c[j]);
            box.hi[j] = std::max(box.hi[j], c[j]);
        }
    }
    return box;
}

Dist box_gap(const Box& a, const Box& b) {
    Dist total = 0;
    for (std::size_t j = 0; j < a.lo.size(); ++j) {
        if (b.lo[j] > a.hi[j]) total += b.lo[j] - a.hi[j];
        else if (a.lo[j] > b.hi[j]) total += a.lo[j] - b.hi[j];
    }
    return total;
}

std::optional<Violation> check_disjointness(const FiniteMetricSpace& space, const SetFamily& family,
                                            std::size_t fam, Dist r) {
    if (r <= 0 || family.size() < 2) return std::nullopt;
    auto report = [&](std::size_t a, std::size_t b, const CloseWitness& w) {
        Violation v{Predicate::disjointness, fam, std::min(a, b), std::max(a, b), w.p, w.q, w.value, {}};
        v.detail = "sets at distance " + std::to_string(w.value) + " < " + std::to_string(r);
        return v;
    };
    if (!taxicab_fast_path(space) || space.dimension() == 0) {
        for (std::size_t a = 0; a < family.size(); ++a)
            for (std::size_t b = a + 1; b < family.size(); ++b)
                if (auto w = close_pair(space, family[a], family[b], r)) return report(a, b, *w);
        return std::nullopt;
    }
    // sweep along the first axis over bounding boxes; the box gap is a lower
    // bound on the taxicab set distance
    std::vector<Box> boxes;
    boxes.reserve(family.size());
    for (const auto& set : family) boxes.push_back(bounding_box(space, set));
    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return boxes[a].lo[0] < boxes[b].lo[0]; });
    std::optional<Violation> first;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Box& bi = boxes[order[i]];
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const Box& bj = boxes[order[j]];
            if (bj.lo[0] - bi.hi[0] >= r) break;
            if (box_gap(bi, bj) >= r) continue;
            if (auto w = close_pair(space, family[order[i]], family[order[j]], r)) {
                auto v = report(order[i], order[j], *w);
                if (!first || std::pair{v.set_a, v.set_b} < std::pair{first->set_a, first->set_b})
                    first = v;
            }
        }
    }
    return first;
}

std::optional<Violation> check_impl(const FiniteMetricSpace& space, const SCover& cover,
                                    const std::vector<char>& in_region) {
    if (cover.space != space.label())
        throw Error(Errc::label_mismatch,
                    "cover references '" + cover.space + "' but space is '" + space.label() + "'");
    if (cover.families.size() != cover.s.size()) {
        Violation v{Predicate::structure};
        v.detail = "cover has " + std::to_string(cover.families.size()) + " families for |s| = " +
                   std::to_string(cover.s.size());
        return v;
    }
    if (cover.D < 0) return Violation{Predicate::structure, 0, 0, 0, {}, {}, cover.D, "negative bound"};
    const std::size_t n = space.size();
    std::vector<char> covered(n, 0);
    for (std::size_t f = 0; f < cover.families.size(); ++f) {
        const auto& family = cover.families[f];
        for (std::size_t a = 0; a < family.size(); ++a) {
            if (family[a].empty()) {
                Violation v{Predicate::empty_set, f, a, a};
                v.detail = "empty set";
                return v;
            }
            for (PointIndex p : family[a]) {
                if (p >= n || !in_region[p]) {
                    Violation v{Predicate::unknown_point, f, a, a, p};
                    v.detail = "point outside the covered region";
                    return v;
                }
                covered[p] = 1;
            }
        }
        for (std::size_t a = 0; a < family.size(); ++a) {
            auto w = diameter_of(space, family[a]);
            if (w.value > cover.D) {
                Violation v{Predicate::diameter, f, a, a, w.p, w.q, w.value};
                v.detail = "diameter " + std::to_string(w.value) + " > " + std::to_string(cover.D);
                return v;
            }
        }
        if (auto v = check_disjointness(space, family, f, cover.s[f])) return v;
    }
    for (PointIndex p = 0; p < n; ++p) {
        if (in_region[p] && !covered[p]) {
            Violation v{Predicate::coverage, 0, 0, 0, p};
            v.detail = "point not covered";
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace

CoverReport check_s_cover(const FiniteMetricSpace& space, const SCover& cover) {
    std::vector<char> all(space.size(), 1);
    return {check_impl(space, cover, all)};
}

CoverReport check_cover_of(const FiniteMetricSpace& space, const SCover& cover,
                           const PointSet& region) {
    std::vector<char> in(space.size(), 0);
    for (PointIndex p : region) {
        if (p >= space.size()) throw Error(Errc::invalid_input, "region point out of range");
        in[p] = 1;
    }
    return {check_impl(space, cover, in)};
}

Dist set_diameter(const FiniteMetricSpace& space, const PointSet& set) {
    return diameter_of(space, set).value;
}

Dist set_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b) {
    Dist best = std::numeric_limits<Dist>::max();
    for (PointIndex p : a)
        for (PointIndex q : b) best = std::min(best, space.dist(p, q));
    return best;
}

SCover canonicalized(SCover cover) {
    for (auto& family : cover.families) {
        for (auto& set : family) {
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
        }
        std::sort(family.begin(), family.end());
    }
    return cover;
}

// ---- shifted cubes -------------------------------------------------------

BrickCover brick_cover(std::size_t n, Dist r, Dist box, std::size_t point_cap) {
    if (r < 1) throw Error(Errc::invalid_input, "r must be >= 1");
    FiniteMetricSpace space = build_grid_space(n, 1, box, point_cap);
    const Dist side = static_cast<Dist>(n + 1) * r;
    // per axis, residues in a window of r - 1 around each shifted boundary are
    // excluded; windows of distinct shifts are disjoint, so each axis rules
    // out at most one of the n + 1 shifts
    const Dist below = (r - 1) / 2;     // residues side-below .. side-1
    const Dist above = r - 1 - below;   // residues 0 .. above-1
    auto floor_div = [](Dist a, Dist b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };

    SCover cover;
    cover.space = space.label();
    cover.s.assign(n + 1, r);
    cover.D = static_cast<Dist>(n * n) * r;
    cover.families.resize(n + 1);
    std::vector<Dist> key(n);
    for (std::size_t i = 0; i <= n; ++i) {
        const Dist shift = static_cast<Dist>(i) * r;
        std::map<std::vector<Dist>, std::size_t> cube_index;
        auto& family = cover.families[i];
        for (PointIndex p = 0; p < space.size(); ++p) {
            auto c = space.coords(p);
            bool inside = true;
            for (std::size_t j = 0; j < n && inside; ++j) {
                Dist q = floor_div(c[j] - shift, side);
                Dist u = c[j] - shift - q * side;
                inside = u >= above && u <= side - below - 1;
                key[j] = q;
            }
            if (!inside) continue;
            auto [it, fresh] = cube_index.emplace(key, family.size());
            if (fresh) family.emplace_back();
            family[it->second].push_back(p);
        }
    }
    return {space, std::move(cover), static_cast<Dist>(n * n)};
}

// ---- transport -----------------------------------------------------------

TransportResult transport_cover(const SCover& cover, const CoarseMap& map, Dist E) {
    const auto& X = map.source;
    const auto& Y = map.target;
    SCover at_E = cover;
    at_E.D = E;
    if (auto rep = check_s_cover(X, at_E); !rep.ok())
        throw Error(Errc::invalid_input,
                    "input cover is not valid at bound E: " + rep.violation->detail);
    if (auto rep = check_coarse_embedding(map); !rep.ok)
        throw Error(Errc::precondition, "map is not a coarse embedding (" + rep.failed_bound + ")");
    if (auto gaps = hull_gaps(map); !gaps.empty())
        throw Error(Errc::hull_coverage,
                    "target point '" + Y.id(gaps.front()) + "' is farther than N from the image");

    const Dist N = map.controls.N;
    TransportResult out;
    out.cover.space = Y.label();
    out.cover.D = map.controls.p2(E) + 2 * N;
    for (std::size_t i = 0; i < cover.families.size(); ++i) {
        Dist declared = std::max<Dist>(map.controls.p1(cover.s[i]) - 2 * N, 0);
        out.cover.s.push_back(declared);
        out.degenerate.push_back(declared == 0);
        SetFamily family;
        for (const auto& set : cover.families[i]) {
            PointSet image;
            for (PointIndex x : set) image.push_back(map.image[x]);
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            PointSet hull;
            for (PointIndex y = 0; y < Y.size(); ++y) {
                for (PointIndex z : image) {
                    if (Y.dist(y, z) <= N) {
                        hull.push_back(y);
                        break;
                    }
                }
            }
            family.push_back(std::move(hull));
        }
        out.cover.families.push_back(std::move(family));
    }
    return out;
}

// ---- traces --------------------------------------------------------------

namespace {

std::string subspace_label(const FiniteMetricSpace& space, const PointSet& subset) {
    return subset.size() == space.size() ? space.label() : space.label() + "/sub";
}

}  // namespace

SCover trace_indices(const SCover& cover, const PointSet& subset) {
    SCover out{cover.space, cover.s, cover.D, {}};
    for (const auto& family : cover.families) {
        SetFamily traced;
        for (const auto& set : family) {
            PointSet t;
            for (PointIndex p : set)
                if (std::binary_search(subset.begin(), subset.end(), p)) t.push_back(p);
            if (!t.empty()) traced.push_back(std::move(t));
        }
        out.families.push_back(std::move(traced));
    }
    return out;
}

SCover localize_cover(const SCover& ambient, const FiniteMetricSpace& space, const PointSet& subset) {
    SCover out{subspace_label(space, subset), ambient.s, ambient.D, {}};
    for (const auto& family : ambient.families) {
        SetFamily local;
        for (const auto& set : family) {
            PointSet t;
            for (PointIndex p : set) {
                auto it = std::lower_bound(subset.begin(), subset.end(), p);
                if (it == subset.end() || *it != p)
                    throw Error(Errc::invalid_input, "cover point outside the subset");
                t.push_back(static_cast<PointIndex>(it - subset.begin()));
            }
            local.push_back(std::move(t));
        }
        out.families.push_back(std::move(local));
    }
    return out;
}

SCover lift_cover(const SCover& local, const FiniteMetricSpace& space, const PointSet& subset) {
    SCover out{space.label(), local.s, local.D, {}};
    for (const auto& family : local.families) {
        SetFamily lifted;
        for (const auto& set : family) {
            PointSet t;
            for (PointIndex p : set) {
                if (p >= subset.size()) throw Error(Errc::invalid_input, "local point out of range");
                t.push_back(subset[p]);
            }
            lifted.push_back(std::move(t));
        }
        out.families.push_back(std::move(lifted));
    }
    return out;
}

SCover trace_cover(const SCover& cover, const FiniteMetricSpace& space, const PointSet& subset) {
    if (subset.empty()) throw Error(Errc::invalid_input, "trace on an empty subset");
    if (cover.space != space.label())
        throw Error(Errc::label_mismatch, "cover does not reference '" + space.label() + "'");
    return localize_cover(trace_indices(cover, subset), space, subset);
}

// ---- gluing --------------------------------------------------------------

namespace {

PointSet intersect(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool traces_agree(const SCover& a, const SCover& b, const PointSet& on) {
    return canonicalized(trace_indices(a, on)) == canonicalized(trace_indices(b, on));
}

SCover merge_overlapping(const std::vector<const SCover*>& covers) {
    const SCover& first = *covers.front();
    SCover out{first.space, first.s, first.D, {}};
    for (std::size_t f = 0; f < first.s.size(); ++f) {
        std::vector<PointSet> sets;
        for (const SCover* c : covers)
            for (const auto& set : c->families[f]) sets.push_back(set);
        std::vector<std::size_t> parent(sets.size());
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto root = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::map<PointIndex, std::size_t> owner;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (PointIndex p : sets[i]) {
                auto [it, fresh] = owner.emplace(p, i);
                if (!fresh) parent[root(i)] = root(it->second);
            }
        std::map<std::size_t, PointSet> groups;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            auto& g = groups[root(i)];
            g.insert(g.end(), sets[i].begin(), sets[i].end());
        }
        SetFamily family;
        for (auto& [r, g] : groups) {
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            family.push_back(std::move(g));
        }
        out.families.push_back(std::move(family));
    }
    return canonicalized(std::move(out));
}

}  // namespace

GlueResult glue_covers(const FiniteMetricSpace& space, const std::vector<PointSet>& subsets,
                       const std::vector<std::vector<SCover>>& candidates, GlueMode mode) {
    if (subsets.empty()) throw Error(Errc::invalid_input, "nothing to glue");
    if (candidates.size() != subsets.size())
        throw Error(Errc::invalid_input, "one candidate list per subset required");
    const SCover* reference = nullptr;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (const auto& c : candidates[i]) {
            if (!reference) reference = &c;
            if (c.s != reference->s || c.D != reference->D)
                throw Error(Errc::inconsistent_input, "candidates must share s and D");
            if (auto rep = check_cover_of(space, c, subsets[i]); !rep.ok())
                throw Error(Errc::invalid_input, "candidate for subset " + std::to_string(i) +
                                                     " is invalid: " + rep.violation->detail);
        }
    }
    if (mode == GlueMode::chain) {
        for (std::size_t i = 1; i < subsets.size(); ++i)
            if (!std::includes(subsets[i].begin(), subsets[i].end(), subsets[i - 1].begin(),
                               subsets[i - 1].end()))
                throw Error(Errc::inconsistent_input, "chain is not ascending at position " +
                                                          std::to_string(i));
    }
    PointSet all;
    for (const auto& b : subsets) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    const std::size_t m = subsets.size();
    GlueResult result;
    std::vector<std::size_t> pick(m, 0);
    // chain mode assigns from the largest subset down; finite-sums in order
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (mode == GlueMode::chain) std::reverse(order.begin(), order.end());

    auto consistent = [&](std::size_t level) {
        std::size_t i = order[level];
        const SCover& gi = candidates[i][pick[i]];
        for (std::size_t l = 0; l < level; ++l) {
            std::size_t j = order[l];
            const SCover& gj = candidates[j][pick[j]];
            PointSet on = intersect(subsets[i], subsets[j]);
            if (!on.empty() && !traces_agree(gi, gj, on)) return false;
        }
        return true;
    };

    auto finish = [&]() -> std::optional<SCover> {
        if (mode == GlueMode::chain) return canonicalized(candidates[m - 1][pick[m - 1]]);
        std::vector<const SCover*> chosen;
        for (std::size_t i = 0; i < m; ++i) chosen.push_back(&candidates[i][pick[i]]);
        SCover merged = merge_overlapping(chosen);
        if (check_cover_of(space, merged, all).ok()) return merged;
        return std::nullopt;
    };

    // iterative backtracking over candidate indices
    std::size_t level = 0;
    std::vector<std::size_t> next(m, 0);
    while (true) {
        std::size_t i = order[level];
        bool placed = false;
        while (next[level] < candidates[i].size()) {
            pick[i] = next[level]++;
            ++result.nodes;
            if (consistent(level)) {
                placed = true;
                break;
            }
        }
        if (!placed) {
            next[level] = 0;
            if (level == 0) return result;
            --level;
            continue;
        }
        if (level + 1 == m) {
            if (auto glued = finish()) {
                result.cover = std::move(glued);
                result.selection = pick;
                return result;
            }
            continue;
        }
        ++level;
    }
}

// ---- fibering and finite sums --------------------------------------------

SCover fiber_compose(const CoarseMap& f, const SCover& base, const std::vector<FiberFamily>& fibers) {
    const auto& X = f.source;
    const auto& Y = f.target;
    if (auto rep = check_s_cover(Y, base); !rep.ok())
        throw Error(Errc::invalid_input, "base cover invalid: " + rep.violation->detail);
    if (auto rep = check_uniformly_expansive(f); !rep.ok)
        throw Error(Errc::precondition, "map is not uniformly expansive under p2");
    if (fibers.size() != base.families.size())
        throw Error(Errc::invalid_input, "one fiber family per base family required");

    for (std::size_t j = 0; j < fibers.size(); ++j) {
        Dist R = fibers[j].R;
        if (R < 1) throw Error(Errc::invalid_input, "R_j must be >= 1");
        if (f.controls.p2(R) >= base.s[j])
            throw Error(Errc::control_violation,
                        "p2(R_" + std::to_string(j + 1) + ") = " + std::to_string(f.controls.p2(R)) +
                            " is not below S_" + std::to_string(j + 1) + " = " +
                            std::to_string(base.s[j]));
    }

    SCover out{X.label(), {}, 0, {}};
    for (std::size_t j = 0; j < fibers.size(); ++j) {
        const auto& fam = fibers[j];
        const auto& base_sets = base.families[j];
        if (fam.fibers.size() != base_sets.size())
            throw Error(Errc::invalid_input, "one fiber cover per base set required");
        if (base_sets.empty()) continue;
        const std::vector<Dist>& tau = fam.fibers.front().s;
        for (std::size_t b = 0; b < base_sets.size(); ++b) {
            const SCover& fiber = fam.fibers[b];
            if (fiber.s != tau)
                throw Error(Errc::invalid_input, "fibers over one base family must share demands");
            PointSet pre;
            for (PointIndex x = 0; x < X.size(); ++x)
                if (std::binary_search(base_sets[b].begin(), base_sets[b].end(), f.image[x]))
                    pre.push_back(x);
            if (auto rep = check_cover_of(X, fiber, pre); !rep.ok())
                throw Error(Errc::invalid_input, "fiber cover invalid: " + rep.violation->detail);
            out.D = std::max(out.D, fiber.D);
        }
        for (std::size_t i = 0; i < tau.size(); ++i) {
            out.s.push_back(std::min(tau[i], fam.R));
            SetFamily merged;
            for (const auto& fiber : fam.fibers)
                merged.insert(merged.end(), fiber.families[i].begin(), fiber.families[i].end());
            out.families.push_back(std::move(merged));
        }
    }
    if (auto rep = check_s_cover(X, out); !rep.ok())
        throw std::logic_error("fiber composition produced an invalid cover: " + rep.violation->detail);
    return out;
}

SCover finite_sum_cover(const FiniteMetricSpace& ambient, const std::vector<SumPart>& parts,
                        Dist separation) {
    if (parts.empty()) throw Error(Errc::invalid_input, "no parts");
    const auto& s = parts.front().cover.s;
    const Dist D = parts.front().cover.D;
    PointSet all;
    for (const auto& part : parts) {
        if (part.cover.s != s || part.cover.D != D)
            throw Error(Errc::invalid_input, "all parts must share the demand sequence and bound");
        if (auto rep = check_cover_of(ambient, part.cover, part.points); !rep.ok())
            throw Error(Errc::invalid_input, "part cover invalid: " + rep.violation->detail);
        all.insert(all.end(), part.points.begin(), part.points.end());
    }
    Dist max_s = s.empty() ? 0 : *std::max_element(s.begin(), s.end());
    if (separation < max_s)
        throw Error(Errc::separation_too_small, "separation " + std::to_string(separation) +
                                                    " is below max demand " + std::to_string(max_s));
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b)
            if (set_distance(ambient, parts[a].points, parts[b].points) < separation)
                throw Error(Errc::invalid_input, "parts are closer than the declared separation");

    SCover out{ambient.label(), s, D, std::vector<SetFamily>(s.size())};
    for (const auto& part : parts)
        for (std::size_t i = 0; i < s.size(); ++i)
            out.families[i].insert(out.families[i].end(), part.cover.families[i].begin(),
                                   part.cover.families[i].end());
    std::sort(all.begin(), all.end());
    if (auto rep = check_cover_of(ambient, out, all); !rep.ok())
        throw std::logic_error("finite sum produced an invalid cover: " + rep.violation->detail);
    return out;
}

}  // namespace coarsedim
