#pragma once

// s-covers: a sequence of set families, family i being s(i)-disjoint, every
// set D-bounded, jointly covering the space. Checking, and the cover-level
// transformations (transport along coarse maps, traces, gluing, fibering,
// finite sums, the shifted-cube construction for lattices).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coarsedim/metric_space.hpp"

namespace coarsedim {

using SetFamily = std::vector<PointSet>;

struct SCover {
    std::string space;
    std::vector<Dist> s;  // demand sequence
    Dist D = 0;           // uniform diameter bound
    std::vector<SetFamily> families;

    bool operator==(const SCover&) const = default;
};

enum class Predicate { structure, empty_set, unknown_point, diameter, disjointness, coverage };

std::string_view predicate_name(Predicate p);

struct Violation {
    Predicate predicate;
    std::size_t family = 0;
    std::size_t set_a = 0;
    std::size_t set_b = 0;
    std::optional<PointIndex> p;
    std::optional<PointIndex> q;
    Dist value = 0;  // offending diameter / distance
    std::string detail;
};

struct CoverReport {
    std::optional<Violation> violation;
    bool ok() const { return !violation.has_value(); }
};

/// Checks every SCover invariant. Throws label-mismatch when the cover names a
/// different space. Order of checks: structure, then family by family (empty
/// sets, point range, diameters, disjointness), then coverage.
CoverReport check_s_cover(const FiniteMetricSpace& space, const SCover& cover);

/// Same predicates, but coverage is demanded only for `region` (points outside
/// it must not appear). Used for partial covers expressed in ambient indices.
CoverReport check_cover_of(const FiniteMetricSpace& space, const SCover& cover,
                           const PointSet& region);

Dist set_diameter(const FiniteMetricSpace& space, const PointSet& set);
Dist set_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b);

/// Sorts points within sets and sets within families (by smallest point).
SCover canonicalized(SCover cover);

// ---- constructions and transformations -----------------------------------

struct BrickCover {
    FiniteMetricSpace space;
    SCover cover;
    Dist c_n = 0;  // D = c_n * r
};

/// Shifted-cube cover of [-box, box]^n cap Z^n: n+1 families, each r-disjoint,
/// with D = n^2 * r.
BrickCover brick_cover(std::size_t n, Dist r, Dist box, std::size_t point_cap = kDefaultPointCap);

struct TransportResult {
    SCover cover;                  // on the target
    std::vector<bool> degenerate;  // family i declared 0-disjoint
};

/// Pushes a cover forward along a coarse equivalence: every set becomes the
/// N-hull of its image. Family i is declared max(p1(s_i) - 2N, 0)-disjoint and
/// the bound becomes p2(E) + 2N.
TransportResult transport_cover(const SCover& cover, const CoarseMap& map, Dist E);

/// Trace of a cover on a subset, as a cover of subspace(space, subset).
SCover trace_cover(const SCover& cover, const FiniteMetricSpace& space, const PointSet& subset);

/// Trace expressed in the ambient indices (label unchanged). Empty sets are
/// dropped, family order is preserved.
SCover trace_indices(const SCover& cover, const PointSet& subset);

/// Re-express a cover of subspace(space, subset) in ambient indices.
SCover lift_cover(const SCover& local, const FiniteMetricSpace& space, const PointSet& subset);

/// Re-express an ambient-index cover of `subset` as a cover of subspace(space, subset).
SCover localize_cover(const SCover& ambient, const FiniteMetricSpace& space, const PointSet& subset);

enum class GlueMode { chain, finite_sums };

struct GlueResult {
    std::optional<SCover> cover;          // ambient indices, covers the union
    std::vector<std::size_t> selection;   // chosen candidate per subset
    std::size_t nodes = 0;
};

/// Selects one candidate cover per subset so that traces agree on overlaps,
/// by complete backtracking over the candidate lists. Candidates are
/// ambient-index covers of their subset. In chain mode the subsets must be
/// ascending and the glued cover is the selection on the largest one; in
/// finite-sums mode sets sharing a point within a family are merged and the
/// merged cover must validate.
GlueResult glue_covers(const FiniteMetricSpace& space, const std::vector<PointSet>& subsets,
                       const std::vector<std::vector<SCover>>& candidates, GlueMode mode);

/// One base family's fibers: fibers[b] covers the preimage of base set b.
struct FiberFamily {
    Dist R = 0;  // declared preimage separation; requires p2(R) < S_j
    std::vector<SCover> fibers;  // ambient (source) indices
};

/// Weak fibering at cover level: preimages of an S_j-disjoint base family are
/// R_j-disjoint, so fiber covers of those preimages merge family-by-family.
SCover fiber_compose(const CoarseMap& f, const SCover& base, const std::vector<FiberFamily>& fibers);

struct SumPart {
    PointSet points;  // ambient indices
    SCover cover;     // ambient indices
};

/// Family-wise union of covers of well separated parts.
SCover finite_sum_cover(const FiniteMetricSpace& ambient, const std::vector<SumPart>& parts,
                        Dist separation);

}  // namespace coarsedim
