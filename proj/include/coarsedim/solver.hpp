#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coarsedim/cover.hpp"

namespace coarsedim {

enum class SolveMode { exact, heuristic };
enum class SolveStatus { sat, unsat, unknown };

std::string_view status_name(SolveStatus s);
std::string_view mode_name(SolveMode m);

struct SolveOptions {
    SolveMode mode = SolveMode::exact;
    std::uint64_t node_budget = 20'000'000;
    std::optional<double> time_budget_s;
    std::uint64_t seed = 0;
    // heuristic mode: nodes per randomized restart
    std::uint64_t restart_nodes = 0;  // 0 => 64 * |X|
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t restarts = 0;
    double seconds = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::unknown;
    std::optional<SCover> witness;
    SearchStats stats;
    bool exact = true;             // false for heuristic mode
    bool budget_exhausted = false;
    std::uint64_t seed = 0;
};

/// Decides whether an (s, D)-cover of the space exists. Exact mode is a
/// complete backtracking search over assignments of points to
/// (family, cluster); heuristic mode runs randomized restarts and never
/// reports UNSAT.
SolveResult solve_s_cover(const FiniteMetricSpace& space, const std::vector<Dist>& s, Dist D,
                          const SolveOptions& options = {});

/// All partition-style (s, D)-covers (every point in exactly one set),
/// families distinguished by position. Stops after `limit` covers.
std::vector<SCover> enumerate_s_covers(const FiniteMetricSpace& space, const std::vector<Dist>& s,
                                       Dist D, std::size_t limit);

struct SeqDimension {
    std::optional<std::size_t> dimension;  // least feasible length minus one
    bool budget_exhausted = false;
    std::optional<SCover> witness;
};

/// Least k >= |r| such that r padded with its last entry to length k admits a
/// D-bounded cover, minus one. Lengths beyond `cap` are not tried.
SeqDimension seq_dimension(const FiniteMetricSpace& space, const std::vector<Dist>& r, Dist D,
                           std::size_t cap, const SolveOptions& options = {});

enum class UniformStatus { uniform_sat, unsat, unknown };

struct UniformResult {
    UniformStatus status = UniformStatus::uniform_sat;
    std::optional<std::size_t> failing_space;
    std::vector<SolveResult> per_space;
};

UniformResult family_solve_uniform(const std::vector<FiniteMetricSpace>& spaces,
                                   const std::vector<Dist>& s, Dist D,
                                   const SolveOptions& options = {});

}  // namespace coarsedim
