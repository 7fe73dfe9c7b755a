#include "coarsedim/tree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "coarsedim/error.hpp"

namespace coarsedim {

FinTree::FinTree(std::set<Sequence> nodes) : nodes_(std::move(nodes)) {
    for (const auto& s : nodes_) {
        if (s.empty()) continue;
        Sequence parent(s.begin(), s.end() - 1);
        if (!nodes_.count(parent))
            throw Error(Errc::invalid_input, "node set is not closed under prefixes");
    }
}

std::vector<Sequence> FinTree::children(const Sequence& s) const {
    std::vector<Sequence> out;
    // children of s are contiguous right after s in lexicographic order,
    // interleaved with their own descendants
    for (auto it = nodes_.upper_bound(s); it != nodes_.end(); ++it) {
        const Sequence& c = *it;
        if (c.size() <= s.size() || !std::equal(s.begin(), s.end(), c.begin())) break;
        if (c.size() == s.size() + 1) out.push_back(c);
    }
    return out;
}

bool FinTree::is_leaf(const Sequence& s) const {
    auto it = nodes_.upper_bound(s);
    return it == nodes_.end() || it->size() <= s.size() ||
           !std::equal(s.begin(), s.end(), it->begin());
}

FinTree tree_from_sequences(const std::vector<Sequence>& seqs) {
    std::set<Sequence> nodes;
    for (const auto& s : seqs)
        for (std::size_t len = 0; len <= s.size(); ++len) nodes.emplace(s.begin(), s.begin() + len);
    return FinTree(std::move(nodes));
}

RankResult rank_recursive(const FinTree& t) {
    RankResult out;
    if (t.empty()) return out;
    std::function<std::uint64_t(const Sequence&)> rank = [&](const Sequence& s) -> std::uint64_t {
        std::uint64_t r = 0;
        bool leaf = true;
        for (const auto& c : t.children(s)) {
            leaf = false;
            r = std::max(r, rank(c) + 1);
        }
        if (leaf) r = 0;
        out.node_rank[s] = r;
        return r;
    };
    out.rank = rank(Sequence{});
    return out;
}

RankResult rank_levels(const FinTree& t) {
    RankResult out;
    if (t.empty()) return out;
    // remaining-children counts; each round strips the current leaves
    std::map<Sequence, std::size_t> live_children;
    for (const auto& s : t.nodes()) {
        live_children.emplace(s, 0);
        if (!s.empty()) ++live_children[Sequence(s.begin(), s.end() - 1)];
    }
    std::vector<Sequence> level;
    for (const auto& [s, count] : live_children)
        if (count == 0) level.push_back(s);
    std::uint64_t alpha = 0;
    while (!level.empty()) {
        std::vector<Sequence> next;
        for (const auto& s : level) out.node_rank[s] = alpha;
        for (const auto& s : level) {
            if (s.empty()) continue;
            Sequence parent(s.begin(), s.end() - 1);
            if (--live_children[parent] == 0) next.push_back(parent);
        }
        level = std::move(next);
        ++alpha;
    }
    out.rank = out.node_rank.at(Sequence{});
    return out;
}

std::strong_ordering kb_compare(const Sequence& s, const Sequence& t) {
    const std::size_t common = std::min(s.size(), t.size());
    for (std::size_t i = 0; i < common; ++i)
        if (s[i] != t[i]) return s[i] < t[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    // one is a prefix of the other: the longer one comes first
    if (s.size() == t.size()) return std::strong_ordering::equal;
    return s.size() > t.size() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::vector<Sequence> kb_sorted(const FinTree& t) {
    std::vector<Sequence> out(t.nodes().begin(), t.nodes().end());
    std::sort(out.begin(), out.end(), [](const Sequence& a, const Sequence& b) { return kb_compare(a, b) < 0; });
    return out;
}

RankResult rank_kb_order(const FinTree& t) {
    RankResult out;
    if (t.empty()) return out;
    for (const auto& s : kb_sorted(t)) {
        std::uint64_t r = 0;
        for (const auto& c : t.children(s)) {
            auto it = out.node_rank.find(c);
            if (it == out.node_rank.end())
                throw std::logic_error("child visited after its parent in Kleene-Brouwer order");
            r = std::max(r, it->second + 1);
        }
        out.node_rank[s] = r;
    }
    out.rank = out.node_rank.at(Sequence{});
    return out;
}

// ---- Ord -----------------------------------------------------------------

OrdSet restrict(const OrdSet& m, const FinSet& sigma) {
    OrdSet out;
    for (const auto& member : m.members) {
        if (!std::includes(member.begin(), member.end(), sigma.begin(), sigma.end())) continue;
        FinSet tau;
        std::set_difference(member.begin(), member.end(), sigma.begin(), sigma.end(),
                            std::inserter(tau, tau.end()));
        if (!tau.empty()) out.members.insert(std::move(tau));
    }
    return out;
}

std::uint64_t ord_set(const OrdSet& m) {
    if (m.members.empty()) return 0;
    FinSet ground;
    for (const auto& member : m.members) ground.insert(member.begin(), member.end());
    // Ord M = sup { Ord M^a + 1 : a in L }; points outside every member give
    // M^a empty and contribute 1, which any member already matches
    std::uint64_t best = 1;
    for (std::int64_t a : ground) best = std::max(best, ord_set(restrict(m, FinSet{a})) + 1);
    return best;
}

FinTree ta_tree(const OrdSet& m, std::optional<FinSet> ground) {
    if (!ground) {
        ground.emplace();
        for (const auto& member : m.members) ground->insert(member.begin(), member.end());
    }
    std::set<Sequence> nodes;
    if (m.members.empty()) return FinTree();
    std::function<void(const Sequence&)> grow = [&](const Sequence& sigma) {
        nodes.insert(sigma);
        FinSet as_set(sigma.begin(), sigma.end());
        if (restrict(m, as_set).members.empty()) return;  // sigma is a leaf
        for (std::int64_t a : *ground) {
            if (!sigma.empty() && a <= sigma.back()) continue;
            Sequence child = sigma;
            child.push_back(a);
            grow(child);
        }
    };
    grow(Sequence{});
    return FinTree(std::move(nodes));
}

// ---- embeddings ----------------------------------------------------------

bool check_t_embedding(const std::map<Sequence, Sequence>& f, const FinTree& src, const FinTree& dst) {
    for (const auto& s : src.nodes()) {
        auto it = f.find(s);
        if (it == f.end()) return false;
        const Sequence& image = it->second;
        if (image.size() != s.size() || !dst.contains(image)) return false;
        for (std::size_t len = 0; len < s.size(); ++len) {
            auto pit = f.find(Sequence(s.begin(), s.begin() + len));
            if (pit == f.end()) return false;
            const Sequence& pimg = pit->second;
            if (pimg.size() > image.size() || !std::equal(pimg.begin(), pimg.end(), image.begin()))
                return false;
        }
    }
    return true;
}

Sequence canonical_increasing_embed(const Sequence& s) {
    Sequence out;
    out.reserve(s.size());
    for (std::int64_t v : s) out.push_back(out.empty() ? v : std::max(v, out.back() + 1));
    return out;
}

FinTree subtree_matrix(const FinTree& t, const Sequence& root) {
    if (!t.contains(root)) throw Error(Errc::not_found, "root is not a node of the tree");
    std::set<Sequence> nodes;
    for (auto it = t.nodes().lower_bound(root); it != t.nodes().end(); ++it) {
        const Sequence& s = *it;
        if (s.size() < root.size() || !std::equal(root.begin(), root.end(), s.begin())) break;
        nodes.emplace(s.begin() + static_cast<std::ptrdiff_t>(root.size()), s.end());
    }
    return FinTree(std::move(nodes));
}

// ---- empirical trees -----------------------------------------------------

std::string_view variant_name(TreeVariant v) {
    switch (v) {
    case TreeVariant::any: return "any";
    case TreeVariant::nondecreasing: return "nondecreasing";
    case TreeVariant::strictly_increasing: return "strictly-increasing";
    }
    return "any";
}

std::optional<TreeVariant> parse_variant(std::string_view name) {
    if (name == "any") return TreeVariant::any;
    if (name == "nondecreasing") return TreeVariant::nondecreasing;
    if (name == "strictly-increasing" || name == "increasing") return TreeVariant::strictly_increasing;
    return std::nullopt;
}

std::vector<Sequence> enumerate_sequences(std::int64_t rmax, std::size_t lmax, TreeVariant variant) {
    std::vector<Sequence> out;
    Sequence cur;
    std::function<void()> extend = [&] {
        if (!cur.empty()) out.push_back(cur);
        if (cur.size() == lmax) return;
        std::int64_t lo = 1;
        if (!cur.empty() && variant == TreeVariant::nondecreasing) lo = cur.back();
        if (!cur.empty() && variant == TreeVariant::strictly_increasing) lo = cur.back() + 1;
        for (std::int64_t v = lo; v <= rmax; ++v) {
            cur.push_back(v);
            extend();
            cur.pop_back();
        }
    };
    extend();
    std::sort(out.begin(), out.end());
    return out;
}

EmpiricalTree empirical_dim_tree(const FiniteMetricSpace& space, const EmpiricalTreeConfig& cfg,
                                 const SolveOptions& options) {
    if (cfg.rmax < 1 || cfg.lmax < 1) throw Error(Errc::invalid_config, "rmax and lmax must be >= 1");
    if (cfg.D < 0) throw Error(Errc::invalid_config, "bound must be >= 0");
    SolveOptions opts = options;
    opts.mode = cfg.mode;
    EmpiricalTree out;
    out.config = cfg;
    // feasibility does not depend on the order of the demands
    std::map<Sequence, bool> infeasible_by_multiset;
    std::vector<Sequence> members;
    for (const auto& s : enumerate_sequences(cfg.rmax, cfg.lmax, cfg.variant)) {
        Sequence key = s;
        std::sort(key.begin(), key.end());
        auto it = infeasible_by_multiset.find(key);
        if (it == infeasible_by_multiset.end()) {
            auto res = solve_s_cover(space, std::vector<Dist>(key.begin(), key.end()), cfg.D, opts);
            ++out.solves;
            if (res.status == SolveStatus::unknown)
                throw Error(Errc::budget_exhausted, "solver verdict UNKNOWN inside the budget");
            it = infeasible_by_multiset.emplace(key, res.status == SolveStatus::unsat).first;
        }
        if (it->second) members.push_back(s);
    }
    std::set<Sequence> nodes(members.begin(), members.end());
    if (!nodes.empty()) nodes.insert(Sequence{});
    for (const auto& s : nodes) {
        if (s.size() > 1 && !nodes.count(Sequence(s.begin(), s.end() - 1)))
            throw std::logic_error("empirical tree is not prefix closed: solver verdicts inconsistent");
    }
    out.tree = FinTree(std::move(nodes));
    return out;
}

}  // namespace coarsedim
