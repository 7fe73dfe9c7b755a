#include "coarsedim/solver.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <stdexcept>

#include "coarsedim/error.hpp"

namespace coarsedim {

std::string_view status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::sat: return "SAT";
    case SolveStatus::unsat: return "UNSAT";
    case SolveStatus::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::string_view mode_name(SolveMode m) { return m == SolveMode::exact ? "exact" : "heuristic"; }

namespace {

using Clock = std::chrono::steady_clock;

// Backtracking over assignments point -> (family, cluster). Clusters become the
// sets of the cover. A point may join cluster c of family f iff every member of
// c is within D and no other cluster of f has a member closer than s(f).
// Only pairs within max(D, max s - 1) ever interact, so constraints are
// evaluated over precomputed neighbour lists.
class CoverSearch {
public:
    enum class Outcome { found, exhausted, limit };

    struct Option {
        int family;
        int cluster;  // -1: open a new cluster
    };

    CoverSearch(const FiniteMetricSpace& space, std::vector<Dist> s, Dist D, bool break_symmetry)
        : space_(space), s_(std::move(s)), D_(D), break_symmetry_(break_symmetry) {
        n_ = space_.size();
        K_ = static_cast<int>(s_.size());
        Dist reach = D_;
        for (Dist v : s_) reach = std::max(reach, v - 1);
        offsets_.assign(n_ + 1, 0);
        for (PointIndex p = 0; p < n_; ++p) {
            for (PointIndex q = 0; q < n_; ++q) {
                if (p == q) continue;
                Dist d = space_.dist(p, q);
                if (d <= reach) {
                    nbr_.push_back(static_cast<std::uint32_t>(q));
                    nbr_dist_.push_back(d);
                }
            }
            offsets_[p + 1] = nbr_.size();
        }
        prev_same_.assign(K_, -1);
        for (int f = 0; f < K_; ++f)
            for (int g = f - 1; g >= 0; --g)
                if (s_[g] == s_[f]) {
                    prev_same_[f] = g;
                    break;
                }
        reset();
    }

    void reset() {
        fam_.assign(n_, -1);
        clus_.assign(n_, -1);
        touched_.assign(n_, 0);
        cluster_family_.clear();
        cluster_size_.clear();
        family_clusters_.assign(K_, 0);
        cnt_.assign(n_ + 1, 0);
        assigned_ = 0;
    }

    Outcome run(std::uint64_t node_limit, std::optional<Clock::time_point> deadline,
                std::mt19937_64* rng, const std::function<bool()>& on_solution) {
        node_limit_ = node_limit;
        deadline_ = deadline;
        rng_ = rng;
        on_solution_ = &on_solution;
        nodes_ = 0;
        return dfs();
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t backtracks() const { return backtracks_; }

    /// The most recent complete assignment, captured before the search unwinds.
    const SCover& solution() const { return solution_; }

private:
    SCover snapshot() const {
        SCover cover{space_.label(), s_, D_, std::vector<SetFamily>(K_)};
        std::vector<int> slot(cluster_family_.size(), -1);
        for (PointIndex p = 0; p < n_; ++p) {
            int c = clus_[p];
            auto& family = cover.families[fam_[p]];
            if (slot[c] < 0) {
                slot[c] = static_cast<int>(family.size());
                family.emplace_back();
            }
            family[slot[c]].push_back(p);
        }
        return cover;
    }

    bool new_allowed(int f) const {
        if (family_clusters_[f] > 0 || !break_symmetry_) return true;
        // interchangeable empty families are opened in index order
        return prev_same_[f] < 0 || family_clusters_[prev_same_[f]] > 0;
    }

    void collect_options(PointIndex p, std::vector<Option>& out) {
        out.clear();
        near_a_.assign(K_, -1);
        near_b_.assign(K_, -1);
        touched_clusters_.clear();
        for (std::size_t e = offsets_[p]; e < offsets_[p + 1]; ++e) {
            PointIndex q = nbr_[e];
            int f = fam_[q];
            if (f < 0) continue;
            int c = clus_[q];
            Dist d = nbr_dist_[e];
            if (d < s_[f]) {
                if (near_a_[f] < 0) near_a_[f] = c;
                else if (near_a_[f] != c) near_b_[f] = c;
            }
            if (d <= D_) {
                if (cnt_[c]++ == 0) touched_clusters_.push_back(c);
            }
        }
        for (int f = 0; f < K_; ++f) {
            if (near_b_[f] >= 0) continue;
            if (near_a_[f] >= 0) {
                int c = near_a_[f];
                if (cnt_[c] == cluster_size_[c]) out.push_back({f, c});
                continue;
            }
            for (int c : touched_clusters_)
                if (cluster_family_[c] == f && cnt_[c] == cluster_size_[c]) out.push_back({f, c});
            if (new_allowed(f)) out.push_back({f, -1});
        }
        for (int c : touched_clusters_) cnt_[c] = 0;
    }

    void assign(PointIndex p, const Option& o) {
        int c = o.cluster;
        if (c < 0) {
            c = static_cast<int>(cluster_family_.size());
            cluster_family_.push_back(o.family);
            cluster_size_.push_back(0);
            ++family_clusters_[o.family];
        }
        fam_[p] = o.family;
        clus_[p] = c;
        ++cluster_size_[c];
        ++assigned_;
        for (std::size_t e = offsets_[p]; e < offsets_[p + 1]; ++e) ++touched_[nbr_[e]];
    }

    void unassign(PointIndex p) {
        int c = clus_[p];
        for (std::size_t e = offsets_[p]; e < offsets_[p + 1]; ++e) --touched_[nbr_[e]];
        --assigned_;
        --cluster_size_[c];
        fam_[p] = -1;
        clus_[p] = -1;
        if (cluster_size_[c] == 0) {
            // clusters are opened and closed in stack order
            --family_clusters_[cluster_family_[c]];
            cluster_family_.pop_back();
            cluster_size_.pop_back();
        }
    }

    // Fail-first: the unassigned point with the fewest options; ties go to the
    // lowest index.
    PointIndex select(std::vector<Option>& options) {
        PointIndex best = n_;
        std::size_t best_count = static_cast<std::size_t>(-1);
        PointIndex first_free = n_;
        for (PointIndex p = 0; p < n_; ++p) {
            if (fam_[p] >= 0) continue;
            if (first_free == n_) first_free = p;
            if (touched_[p] == 0) continue;
            collect_options(p, scratch_);
            if (scratch_.size() < best_count) {
                best = p;
                best_count = scratch_.size();
                options.swap(scratch_);
                if (best_count <= 1) break;
            }
        }
        if (best == n_ || best_count > static_cast<std::size_t>(K_)) {
            // untouched points can only open new clusters
            std::size_t free_count = 0;
            for (int f = 0; f < K_; ++f) free_count += new_allowed(f) ? 1 : 0;
            if (best == n_ || free_count < best_count) {
                best = first_free;
                collect_options(best, options);
            }
        }
        return best;
    }

    Outcome dfs() {
        if (assigned_ == n_) {
            solution_ = snapshot();
            return (*on_solution_)() ? Outcome::exhausted : Outcome::found;
        }
        if (++nodes_ > node_limit_) return Outcome::limit;
        if (deadline_ && (nodes_ & 1023U) == 0 && Clock::now() > *deadline_) return Outcome::limit;
        std::vector<Option> options;
        PointIndex p = select(options);
        if (rng_) std::shuffle(options.begin(), options.end(), *rng_);
        for (const Option& o : options) {
            assign(p, o);
            Outcome r = dfs();
            unassign(p);
            if (r != Outcome::exhausted) return r;
        }
        ++backtracks_;
        return Outcome::exhausted;
    }

    const FiniteMetricSpace& space_;
    std::vector<Dist> s_;
    Dist D_;
    bool break_symmetry_;
    std::size_t n_ = 0;
    int K_ = 0;

    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> nbr_;
    std::vector<Dist> nbr_dist_;
    std::vector<int> prev_same_;

    std::vector<int> fam_, clus_, touched_;
    std::vector<int> cluster_family_, cluster_size_, family_clusters_;
    std::vector<int> cnt_;
    std::size_t assigned_ = 0;

    std::vector<int> near_a_, near_b_, touched_clusters_;
    std::vector<Option> scratch_;

    std::uint64_t node_limit_ = 0;
    std::uint64_t nodes_ = 0;
    std::uint64_t backtracks_ = 0;
    std::optional<Clock::time_point> deadline_;
    std::mt19937_64* rng_ = nullptr;
    const std::function<bool()>* on_solution_ = nullptr;
    SCover solution_;
};

void validate_request(const std::vector<Dist>& s, Dist D) {
    if (s.empty()) throw Error(Errc::invalid_input, "demand sequence must be nonempty");
    for (Dist v : s)
        if (v < 1) throw Error(Errc::invalid_input, "demands must be >= 1");
    if (D < 0) throw Error(Errc::invalid_input, "bound must be >= 0");
}

void certify(const FiniteMetricSpace& space, const SCover& cover) {
    if (auto rep = check_s_cover(space, cover); !rep.ok())
        throw std::logic_error("solver produced an invalid witness: " + rep.violation->detail);
}

}  // namespace

SolveResult solve_s_cover(const FiniteMetricSpace& space, const std::vector<Dist>& s, Dist D,
                          const SolveOptions& options) {
    validate_request(s, D);
    const auto start = Clock::now();
    std::optional<Clock::time_point> deadline;
    if (options.time_budget_s)
        deadline = start + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(*options.time_budget_s));
    SolveResult result;
    result.exact = options.mode == SolveMode::exact;
    result.seed = options.seed;
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    if (space.empty()) {
        result.status = SolveStatus::sat;
        result.witness = SCover{space.label(), s, D, std::vector<SetFamily>(s.size())};
        return result;
    }

    CoverSearch search(space, s, D, /*break_symmetry=*/true);
    auto stop = [] { return false; };
    if (options.mode == SolveMode::exact) {
        auto outcome = search.run(options.node_budget, deadline, nullptr, stop);
        result.stats.nodes = search.nodes();
        result.stats.backtracks = search.backtracks();
        if (outcome == CoverSearch::Outcome::found) {
            result.status = SolveStatus::sat;
            result.witness = search.solution();
        } else if (outcome == CoverSearch::Outcome::exhausted) {
            result.status = SolveStatus::unsat;
        } else {
            result.status = SolveStatus::unknown;
            result.budget_exhausted = true;
        }
    } else {
        std::mt19937_64 rng(options.seed);
        const std::uint64_t per_restart =
            options.restart_nodes ? options.restart_nodes : 64 * static_cast<std::uint64_t>(space.size());
        std::uint64_t spent = 0;
        result.status = SolveStatus::unknown;
        while (spent < options.node_budget) {
            if (deadline && Clock::now() > *deadline) break;
            search.reset();
            auto outcome = search.run(std::min(per_restart, options.node_budget - spent), deadline,
                                      &rng, stop);
            spent += search.nodes();
            ++result.stats.restarts;
            if (outcome == CoverSearch::Outcome::found) {
                result.status = SolveStatus::sat;
                result.witness = search.solution();
                break;
            }
        }
        result.stats.nodes = spent;
        result.stats.backtracks = search.backtracks();
        result.budget_exhausted = result.status == SolveStatus::unknown;
    }
    result.stats.seconds = elapsed();
    if (result.witness) certify(space, *result.witness);
    return result;
}

std::vector<SCover> enumerate_s_covers(const FiniteMetricSpace& space, const std::vector<Dist>& s,
                                       Dist D, std::size_t limit) {
    validate_request(s, D);
    std::vector<SCover> out;
    if (limit == 0) return out;
    if (space.empty()) {
        out.push_back(SCover{space.label(), s, D, std::vector<SetFamily>(s.size())});
        return out;
    }
    CoverSearch search(space, s, D, /*break_symmetry=*/false);
    std::function<bool()> collect = [&] {
        out.push_back(search.solution());
        return out.size() < limit;
    };
    search.run(static_cast<std::uint64_t>(-1), std::nullopt, nullptr, collect);
    for (const auto& c : out) certify(space, c);
    return out;
}

SeqDimension seq_dimension(const FiniteMetricSpace& space, const std::vector<Dist>& r, Dist D,
                           std::size_t cap, const SolveOptions& options) {
    if (r.empty()) throw Error(Errc::invalid_input, "r must be nonempty");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] < r[i - 1]) throw Error(Errc::invalid_input, "r must be nondecreasing");
    SeqDimension out;
    for (std::size_t k = r.size(); k <= cap; ++k) {
        std::vector<Dist> s = r;
        s.resize(k, r.back());
        auto res = solve_s_cover(space, s, D, options);
        if (res.status == SolveStatus::sat) {
            out.dimension = k - 1;
            out.witness = std::move(res.witness);
            return out;
        }
        if (res.status == SolveStatus::unknown) {
            out.budget_exhausted = true;
            return out;
        }
    }
    return out;
}

UniformResult family_solve_uniform(const std::vector<FiniteMetricSpace>& spaces,
                                   const std::vector<Dist>& s, Dist D, const SolveOptions& options) {
    validate_request(s, D);
    UniformResult out;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        out.per_space.push_back(solve_s_cover(spaces[i], s, D, options));
        const auto status = out.per_space.back().status;
        if (status == SolveStatus::unsat) {
            out.status = UniformStatus::unsat;
            out.failing_space = i;
            return out;
        }
        if (status == SolveStatus::unknown && out.status == UniformStatus::uniform_sat)
            out.status = UniformStatus::unknown;
    }
    return out;
}

}  // namespace coarsedim
