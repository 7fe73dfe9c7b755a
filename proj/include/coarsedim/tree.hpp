#pragma once

// Finite trees of sequences of naturals, their rank (computed recursively, by
// leaf stripping, and along the Kleene-Brouwer order), systems of finite sets
// with their ordinal Ord, and dimension trees built from solver verdicts.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coarsedim/metric_space.hpp"
#include "coarsedim/solver.hpp"

namespace coarsedim {

using Sequence = std::vector<std::int64_t>;

/// Prefix-closed finite set of sequences. Nonempty trees contain the empty
/// sequence.
class FinTree {
public:
    FinTree() = default;
    /// Throws invalid-input when `nodes` is not prefix closed.
    explicit FinTree(std::set<Sequence> nodes);

    const std::set<Sequence>& nodes() const { return nodes_; }
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    bool contains(const Sequence& s) const { return nodes_.count(s) > 0; }
    std::vector<Sequence> children(const Sequence& s) const;
    bool is_leaf(const Sequence& s) const;

    bool operator==(const FinTree&) const = default;

private:
    std::set<Sequence> nodes_;
};

FinTree tree_from_sequences(const std::vector<Sequence>& seqs);

struct RankResult {
    std::optional<std::uint64_t> rank;  // nullopt: empty tree
    std::map<Sequence, std::uint64_t> node_rank;
};

RankResult rank_recursive(const FinTree& t);
RankResult rank_levels(const FinTree& t);
/// Single pass in Kleene-Brouwer order; children always precede parents.
RankResult rank_kb_order(const FinTree& t);

/// s <kb t iff t is a proper prefix of s, or s is smaller at the first index
/// where they differ.
std::strong_ordering kb_compare(const Sequence& s, const Sequence& t);

std::vector<Sequence> kb_sorted(const FinTree& t);

// ---- systems of finite sets ----------------------------------------------

using FinSet = std::set<std::int64_t>;

struct OrdSet {
    std::set<FinSet> members;  // finite nonempty subsets of the ground set

    bool operator==(const OrdSet&) const = default;
};

/// M^sigma = { tau nonempty : tau u sigma in M, tau n sigma empty }.
OrdSet restrict(const OrdSet& m, const FinSet& sigma);

std::uint64_t ord_set(const OrdSet& m);

/// Strictly increasing sequences sigma over `ground` with M^{father(sigma)}
/// nonempty. `ground` defaults to the union of the members.
FinTree ta_tree(const OrdSet& m, std::optional<FinSet> ground = std::nullopt);

// ---- embeddings ----------------------------------------------------------

bool check_t_embedding(const std::map<Sequence, Sequence>& f, const FinTree& src,
                       const FinTree& dst);

/// Pointwise least strictly increasing sequence dominating s.
Sequence canonical_increasing_embed(const Sequence& s);

/// The suffix tree {g : root ^ g in t}. Throws not-found when root is absent.
FinTree subtree_matrix(const FinTree& t, const Sequence& root);

// ---- empirical dimension trees -------------------------------------------

enum class TreeVariant { any, nondecreasing, strictly_increasing };

std::string_view variant_name(TreeVariant v);
std::optional<TreeVariant> parse_variant(std::string_view name);

struct EmpiricalTreeConfig {
    std::int64_t rmax = 1;
    std::size_t lmax = 1;
    Dist D = 0;
    TreeVariant variant = TreeVariant::any;
    SolveMode mode = SolveMode::exact;
};

struct EmpiricalTree {
    FinTree tree;
    EmpiricalTreeConfig config;
    std::size_t solves = 0;  // distinct solver calls (verdicts are cached by multiset)
};

/// All sequences with entries in [1, rmax], length in [1, lmax], matching the
/// variant, for which no D-bounded cover exists, plus the empty sequence when
/// any such sequence exists. Throws budget-exhausted on an UNKNOWN verdict and
/// std::logic_error if the verdicts are not prefix closed.
EmpiricalTree empirical_dim_tree(const FiniteMetricSpace& space, const EmpiricalTreeConfig& cfg,
                                 const SolveOptions& options = {});

/// Sequences of the variant with entries in [1, rmax] and lengths 1..lmax, in
/// lexicographic order.
std::vector<Sequence> enumerate_sequences(std::int64_t rmax, std::size_t lmax, TreeVariant variant);

}  // namespace coarsedim
