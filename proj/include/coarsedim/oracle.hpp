#pragma once

// Brute-force reference deciders and the randomized property suites that
// compare them against the production code paths.

#include <cstdint>
#include <string>
#include <vector>

#include "coarsedim/metric_space.hpp"
#include "coarsedim/solver.hpp"

namespace coarsedim {

inline constexpr std::size_t kOraclePointCap = 10;
inline constexpr std::size_t kOracleFamilyCap = 2;
inline constexpr Dist kOracleBoundCap = 6;

/// Ground-truth feasibility by enumerating every assignment of points to a
/// family and every partition of each family's points into clusters. No
/// pruning and no symmetry reduction. Throws resource beyond the caps.
SolveStatus exhaustive_cover_oracle(const FiniteMetricSpace& space, const std::vector<Dist>& s, Dist D);

struct SuiteFailure {
    std::string digest;    // FNV-1a of the reproduction input
    std::string expected;
    std::string got;
    std::string repro;     // minimized input, JSON text
};

struct SuiteReport {
    std::string suite;
    std::size_t trials = 0;
    std::vector<SuiteFailure> failures;
    std::uint64_t seed = 0;
    double seconds = 0;

    bool passed() const { return failures.empty(); }
};

/// Suite names in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Deterministic given (name, seed, trials). Exhaustive suites ignore
/// `trials` and report the number of checks performed. Throws unknown-suite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials);

/// Expands "all" to every suite; otherwise runs the single named suite.
std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, std::size_t trials);

}  // namespace coarsedim
