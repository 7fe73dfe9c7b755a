#pragma once

// Round-two response table for truncations of the union space built from a
// strictly increasing sequence c: for every bound D and radii r1 <= r2 the
// harness reports the least number of families k found for demands
// (r1, r2, r2, ...). Values are certified upper bounds (every one carries a
// checked witness); `exact` marks values proven minimal by the exact solver.

#include <optional>
#include <string>
#include <vector>

#include "coarsedim/cover.hpp"

namespace coarsedim {

struct CupcConfig {
    std::vector<Dist> c;
    Dist box = 16;
    std::vector<Dist> bounds{4, 8, 16};
    Dist rmax = 5;
    std::size_t kcap = 12;
    // the exact solver is only consulted on spaces up to this size
    std::size_t solver_point_limit = 200;
    std::uint64_t node_budget = 200'000;
    std::size_t point_cap = kDefaultPointCap;
};

struct CupcCell {
    Dist D = 0;
    Dist r1 = 0;
    Dist r2 = 0;
    std::optional<std::size_t> k;  // nullopt: nothing found up to kcap
    bool exact = false;
    std::string source;            // "blocks", "solver" or "transfer(D,r1,r2)"
    std::optional<SCover> witness;
};

struct CupcStability {
    Dist D = 0;
    Dist r1 = 0;
    bool constant_over_r2 = false;  // observed only; not a proof of anything
};

struct CupcReport {
    CupcConfig config;
    std::string space;
    std::size_t points = 0;
    std::vector<CupcCell> cells;  // ordered by (D, r1, r2)
    std::vector<CupcStability> stability;
    bool nonincreasing_in_D = true;
    bool nondecreasing_in_r1 = true;
    double seconds = 0;

    const CupcCell* cell(Dist D, Dist r1, Dist r2) const;
};

/// Throws invalid-config for empty or non-increasing c, empty bounds, rmax < 1
/// or kcap < 2.
CupcReport run_cupc(const CupcConfig& cfg);

/// Plain-text table: one block per bound, rows r1, columns r2.
std::string format_cupc_table(const CupcReport& report);

}  // namespace coarsedim
