#pragma once

// Small helpers shared by the unit tests. The checkers here are deliberately
// naive so they stay independent of the library code they judge.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "coarsedim/cover.hpp"
#include "coarsedim/metric_space.hpp"

namespace testing_support {

using namespace coarsedim;

inline PointIndex at(const FiniteMetricSpace& s, const std::string& id) { return s.index_of(id); }

inline PointSet ids(const FiniteMetricSpace& s, std::initializer_list<const char*> names) {
    PointSet out;
    for (const char* n : names) out.push_back(s.index_of(n));
    std::sort(out.begin(), out.end());
    return out;
}

inline PointSet range_ids(const FiniteMetricSpace& s, Dist lo, Dist hi) {
    PointSet out;
    for (Dist x = lo; x <= hi; ++x) out.push_back(s.index_of(std::to_string(x)));
    std::sort(out.begin(), out.end());
    return out;
}

/// Pairwise brute force over the definition of an s-cover.
inline bool naive_valid(const FiniteMetricSpace& space, const SCover& c) {
    if (c.s.size() != c.families.size()) return false;
    std::set<PointIndex> seen;
    for (std::size_t f = 0; f < c.families.size(); ++f) {
        const auto& fam = c.families[f];
        for (std::size_t a = 0; a < fam.size(); ++a) {
            if (fam[a].empty()) return false;
            for (PointIndex p : fam[a]) {
                if (p >= space.size()) return false;
                seen.insert(p);
                for (PointIndex q : fam[a])
                    if (space.dist(p, q) > c.D) return false;
            }
            for (std::size_t b = a + 1; b < fam.size(); ++b)
                for (PointIndex p : fam[a])
                    for (PointIndex q : fam[b])
                        if (space.dist(p, q) < c.s[f]) return false;
        }
    }
    return seen.size() == space.size();
}

inline FiniteMetricSpace interval(Dist lo, Dist hi) {
    std::vector<std::vector<Dist>> coords;
    for (Dist x = lo; x <= hi; ++x) coords.push_back({x});
    return FiniteMetricSpace::from_coords("[" + std::to_string(lo) + "," + std::to_string(hi) + "]", coords);
}

}  // namespace testing_support
