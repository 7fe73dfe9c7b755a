#include "coarsedim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include "coarsedim/error.hpp"
#include "coarsedim/solver.hpp"

namespace coarsedim {

const CupcCell* CupcReport::cell(Dist D, Dist r1, Dist r2) const {
    for (const auto& c : cells)
        if (c.D == D && c.r1 == r1 && c.r2 == r2) return &c;
    return nullptr;
}

namespace {

using CellKey = std::vector<Dist>;

Dist floor_div(Dist a, Dist b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

struct Blocks {
    std::vector<PointSet> sets;
    std::vector<CellKey> keys;
    Dist side = 1;
    // per block: (other block, set distance) for blocks closer than rmax
    std::vector<std::vector<std::pair<std::size_t, Dist>>> near;
};

std::map<CellKey, PointSet> group(const FiniteMetricSpace& space, Dist side, Dist offset) {
    std::map<CellKey, PointSet> cells;
    for (PointIndex p = 0; p < space.size(); ++p) {
        auto x = space.coords(p);
        CellKey key(x.size());
        for (std::size_t a = 0; a < x.size(); ++a) key[a] = floor_div(x[a] + offset, side);
        cells[key].push_back(p);
    }
    return cells;
}

/// Cubical cells of the largest side whose traces are all D-bounded.
std::optional<Blocks> make_blocks(const FiniteMetricSpace& space, Dist D, Dist offset, Dist rmax) {
    for (Dist side = D + 1; side >= 1; --side) {
        auto cells = group(space, side, side > 1 ? offset % side : 0);
        bool bounded = std::all_of(cells.begin(), cells.end(),
                                   [&](const auto& kv) { return set_diameter(space, kv.second) <= D; });
        if (!bounded) continue;
        Blocks b;
        b.side = side;
        std::map<CellKey, std::size_t> index;
        for (auto& [key, pts] : cells) {
            index.emplace(key, b.sets.size());
            b.keys.push_back(key);
            b.sets.push_back(std::move(pts));
        }
        // points m cells apart along an axis differ by at least (m - 1) * side + 1
        const Dist reach = (rmax - 1 + side - 1) / side + 1;
        b.near.resize(b.sets.size());
        const std::size_t dim = space.dimension();
        for (std::size_t i = 0; i < b.sets.size(); ++i) {
            CellKey delta(dim, -reach);
            bool more = true;
            while (more) {
                CellKey other = b.keys[i];
                for (std::size_t a = 0; a < dim; ++a) other[a] += delta[a];
                if (auto it = index.find(other); it != index.end() && it->second > i) {
                    Dist d = set_distance(space, b.sets[i], b.sets[it->second]);
                    if (d < rmax) {
                        b.near[i].push_back({it->second, d});
                        b.near[it->second].push_back({i, d});
                    }
                }
                more = false;
                for (std::size_t a = dim; a-- > 0;) {
                    if (delta[a] < reach) {
                        ++delta[a];
                        more = true;
                        break;
                    }
                    delta[a] = -reach;
                }
            }
        }
        return b;
    }
    return std::nullopt;
}

/// First-fit of blocks into families with demands s = (r1, r2, r2, ...).
SCover greedy_cover(const FiniteMetricSpace& space, const Blocks& b, const std::vector<std::size_t>& order,
                    Dist r1, Dist r2, Dist D, std::size_t kcap) {
    std::vector<int> family_of(b.sets.size(), -1);
    std::size_t used = 0;
    for (std::size_t i : order) {
        for (std::size_t f = 0; f < kcap; ++f) {
            const Dist need = f == 0 ? r1 : r2;
            bool fits = std::none_of(b.near[i].begin(), b.near[i].end(), [&](const auto& e) {
                return family_of[e.first] == static_cast<int>(f) && e.second < need;
            });
            if (fits) {
                family_of[i] = static_cast<int>(f);
                used = std::max(used, f + 1);
                break;
            }
        }
        if (family_of[i] < 0) return {};
    }
    used = std::max<std::size_t>(used, 2);
    std::vector<Dist> s(used, r2);
    s[0] = r1;
    SCover cover{space.label(), s, D, std::vector<SetFamily>(used)};
    for (std::size_t i = 0; i < b.sets.size(); ++i) cover.families[static_cast<std::size_t>(family_of[i])].push_back(b.sets[i]);
    return cover;
}

std::vector<std::vector<std::size_t>> block_orders(const Blocks& b) {
    std::vector<std::size_t> lex(b.sets.size());
    std::iota(lex.begin(), lex.end(), std::size_t{0});
    // cells of equal parity pattern first: colour classes of the cell lattice
    std::vector<std::size_t> parity = lex;
    auto pattern = [&](std::size_t i) {
        Dist code = 0;
        for (Dist v : b.keys[i]) code = code * 2 + ((v % 2) + 2) % 2;
        return code;
    };
    std::stable_sort(parity.begin(), parity.end(), [&](std::size_t x, std::size_t y) { return pattern(x) < pattern(y); });
    return {lex, parity};
}

std::vector<Dist> demands(Dist r1, Dist r2, std::size_t k) {
    std::vector<Dist> s(k, r2);
    s[0] = r1;
    return s;
}

}  // namespace

CupcReport run_cupc(const CupcConfig& cfg) {
    if (cfg.c.empty()) throw Error(Errc::invalid_config, "c must be nonempty");
    for (std::size_t i = 1; i < cfg.c.size(); ++i)
        if (cfg.c[i] <= cfg.c[i - 1]) throw Error(Errc::invalid_config, "c must be strictly increasing");
    if (cfg.bounds.empty()) throw Error(Errc::invalid_config, "at least one bound required");
    if (cfg.rmax < 1) throw Error(Errc::invalid_config, "rmax must be >= 1");
    if (cfg.kcap < 2) throw Error(Errc::invalid_config, "kcap must be >= 2");
    for (Dist D : cfg.bounds)
        if (D < 0) throw Error(Errc::invalid_config, "bounds must be >= 0");

    const auto start = std::chrono::steady_clock::now();
    CupcReport rep;
    rep.config = cfg;
    std::sort(rep.config.bounds.begin(), rep.config.bounds.end());
    rep.config.bounds.erase(std::unique(rep.config.bounds.begin(), rep.config.bounds.end()), rep.config.bounds.end());
    const auto space = build_cup_c_space(cfg.c, cfg.c.size(), cfg.box, cfg.point_cap);
    rep.space = space.label();
    rep.points = space.size();
    const bool small = space.size() <= cfg.solver_point_limit;

    // direct attempts per cell
    for (Dist D : rep.config.bounds) {
        std::vector<Blocks> partitions;
        for (Dist offset : {Dist{0}, D / 2 + 1})
            if (auto b = make_blocks(space, D, offset, cfg.rmax)) partitions.push_back(std::move(*b));
        for (Dist r1 = 1; r1 <= cfg.rmax; ++r1) {
            for (Dist r2 = r1; r2 <= cfg.rmax; ++r2) {
                CupcCell cell{D, r1, r2};
                for (const auto& b : partitions) {
                    for (const auto& order : block_orders(b)) {
                        SCover cover = greedy_cover(space, b, order, r1, r2, D, cfg.kcap);
                        if (cover.families.empty()) continue;
                        if (!cell.k || cover.families.size() < *cell.k) {
                            cell.k = cover.families.size();
                            cell.witness = std::move(cover);
                            cell.source = "blocks";
                        }
                    }
                }
                if (small) {
                    SolveOptions opts;
                    opts.node_budget = cfg.node_budget;
                    bool proven_below = true;
                    const std::size_t top = cell.k.value_or(cfg.kcap);
                    for (std::size_t k = 2; k <= top; ++k) {
                        auto res = solve_s_cover(space, demands(r1, r2, k), D, opts);
                        if (res.status == SolveStatus::sat) {
                            cell.k = k;
                            cell.witness = std::move(res.witness);
                            cell.source = "solver";
                            cell.exact = proven_below;
                            break;
                        }
                        if (res.status == SolveStatus::unknown) proven_below = false;
                    }
                }
                rep.cells.push_back(std::move(cell));
            }
        }
    }

    // A witness for (D', r1', r2') serves every (D, r1, r2) with D >= D',
    // r1 <= r1', r2 <= r2'.
    const std::vector<CupcCell> direct = rep.cells;
    for (auto& cell : rep.cells) {
        for (const auto& from : direct) {
            if (from.D > cell.D || from.r1 < cell.r1 || from.r2 < cell.r2 || !from.k) continue;
            if (cell.k && *from.k >= *cell.k) continue;
            SCover moved = *from.witness;
            moved.s = demands(cell.r1, cell.r2, moved.families.size());
            moved.D = cell.D;
            cell.k = from.k;
            cell.witness = std::move(moved);
            cell.exact = false;
            std::ostringstream src;
            src << "transfer(" << from.D << "," << from.r1 << "," << from.r2 << ")";
            cell.source = src.str();
        }
        if (cell.witness && !check_s_cover(space, *cell.witness).ok())
            throw std::logic_error("cupc harness produced an invalid witness");
    }

    auto value = [&](const CupcCell* c) { return c && c->k ? *c->k : cfg.kcap + 1; };
    const auto& bounds = rep.config.bounds;
    for (Dist r1 = 1; r1 <= cfg.rmax; ++r1)
        for (Dist r2 = r1; r2 <= cfg.rmax; ++r2) {
            for (std::size_t i = 1; i < bounds.size(); ++i)
                if (value(rep.cell(bounds[i], r1, r2)) > value(rep.cell(bounds[i - 1], r1, r2)))
                    rep.nonincreasing_in_D = false;
            for (Dist D : bounds)
                if (r1 > 1 && value(rep.cell(D, r1, r2)) < value(rep.cell(D, r1 - 1, r2)))
                    rep.nondecreasing_in_r1 = false;
        }
    for (Dist D : bounds)
        for (Dist r1 = 1; r1 <= cfg.rmax; ++r1) {
            CupcStability st{D, r1, true};
            for (Dist r2 = r1 + 1; r2 <= cfg.rmax; ++r2)
                if (value(rep.cell(D, r1, r2)) != value(rep.cell(D, r1, r1))) st.constant_over_r2 = false;
            rep.stability.push_back(st);
        }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string format_cupc_table(const CupcReport& rep) {
    std::ostringstream out;
    out << "space " << rep.space << ", " << rep.points << " points\n";
    out << "least k found for demands (r1, r2, r2, ...); '*' = proven minimal, '-' = none up to kcap "
        << rep.config.kcap << "\n";
    for (Dist D : rep.config.bounds) {
        out << "\nD = " << D << "\n  r1\\r2";
        for (Dist r2 = 1; r2 <= rep.config.rmax; ++r2) out << "  " << (r2 < 10 ? " " : "") << r2 << " ";
        out << "  k constant over r2\n";
        for (Dist r1 = 1; r1 <= rep.config.rmax; ++r1) {
            out << "  " << (r1 < 10 ? " " : "") << r1 << "   ";
            for (Dist r2 = 1; r2 <= rep.config.rmax; ++r2) {
                const CupcCell* c = r2 >= r1 ? rep.cell(D, r1, r2) : nullptr;
                std::string v = !c ? "." : c->k ? std::to_string(*c->k) + (c->exact ? "*" : " ") : "- ";
                if (v.size() < 2) v += " ";
                out << "  " << (v.size() < 3 ? " " : "") << v;
            }
            for (const auto& st : rep.stability)
                if (st.D == D && st.r1 == r1) out << "   " << (st.constant_over_r2 ? "yes" : "no");
            out << "\n";
        }
    }
    out << "\nnonincreasing in D: " << (rep.nonincreasing_in_D ? "yes" : "no")
        << "; nondecreasing in r1: " << (rep.nondecreasing_in_r1 ? "yes" : "no") << "\n";
    return out.str();
}

}  // namespace coarsedim
