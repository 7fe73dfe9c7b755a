#pragma once

// Finite metric spaces with exact integer distances, the coarse maps between
// them, and the constructions used throughout the workbench (lattice boxes,
// asymptotic sums, unions of scaled lattices, greedy nets).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace coarsedim {

using Dist = std::int64_t;
using PointIndex = std::size_t;
using PointSet = std::vector<PointIndex>;  // sorted, duplicate free

inline constexpr std::size_t kDefaultPointCap = 100'000;
// Explicit distance matrices are stored densely.
inline constexpr std::size_t kMatrixPointCap = 4'096;

enum class MetricKind { matrix, taxicab, chebyshev };

std::string_view metric_name(MetricKind k);
std::optional<MetricKind> parse_metric(std::string_view name);

/// An immutable finite metric space. Points are addressed by index; every
/// point also carries an opaque string id used in serialized form. Copies
/// share the underlying storage.
///
/// Two storage kinds exist: an explicit symmetric distance matrix, or integer
/// coordinates with the taxicab (default) or max metric. Spaces built from coordinates without
/// explicit ids derive the id from the coordinates ("-2", "1,-1", ...).
class FiniteMetricSpace {
public:
    FiniteMetricSpace();

    static FiniteMetricSpace from_matrix(std::string label, std::vector<std::string> ids,
                                         std::vector<Dist> rows,
                                         std::vector<std::vector<Dist>> coords = {});
    static FiniteMetricSpace from_coords(std::string label,
                                         std::vector<std::vector<Dist>> coords,
                                         std::vector<std::string> ids = {},
                                         MetricKind metric = MetricKind::taxicab);

    const std::string& label() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    MetricKind kind() const;

    Dist dist(PointIndex a, PointIndex b) const;

    std::string id(PointIndex i) const;
    std::optional<PointIndex> find(const std::string& id) const;
    PointIndex index_of(const std::string& id) const;  // throws not-found

    bool has_coords() const;
    std::size_t dimension() const;
    std::span<const Dist> coords(PointIndex i) const;
    bool has_explicit_ids() const;

    FiniteMetricSpace relabeled(std::string label) const;

    /// Same points (ids, order) and same distances; labels are ignored.
    bool same_metric(const FiniteMetricSpace& other) const;

private:
    struct Data;
    explicit FiniteMetricSpace(std::shared_ptr<const Data> data);
    std::shared_ptr<const Data> data_;
};

struct MetricReport {
    bool ok = true;
    std::string violation;  // "identity", "symmetry", "triangle", "negative"
    std::vector<PointIndex> witness;
};

/// Exhaustive check of the metric axioms (O(n^3) triples).
MetricReport validate_metric(const FiniteMetricSpace& space);

/// Nondecreasing integer function given by a breakpoint table followed by a
/// strictly increasing linear tail:
///   f(t) = value of the last breakpoint with position <= t  (0 if none), t < tail_start
///   f(t) = tail_offset + tail_slope * (t - tail_start),                    t >= tail_start
class StepFunction {
public:
    StepFunction();  // identity
    StepFunction(std::vector<std::pair<Dist, Dist>> table, Dist tail_start, Dist tail_offset,
                 Dist tail_slope);

    static StepFunction identity() { return {}; }
    /// t -> slope * t + offset
    static StepFunction affine(Dist slope, Dist offset);
    /// t -> max(slope * t - shift, 0)
    static StepFunction shifted(Dist slope, Dist shift);

    Dist operator()(Dist t) const;

    const std::vector<std::pair<Dist, Dist>>& table() const { return table_; }
    Dist tail_start() const { return tail_start_; }
    Dist tail_offset() const { return tail_offset_; }
    Dist tail_slope() const { return tail_slope_; }

    bool operator==(const StepFunction&) const = default;

private:
    std::vector<std::pair<Dist, Dist>> table_;
    Dist tail_start_ = 0;
    Dist tail_offset_ = 0;
    Dist tail_slope_ = 1;
};

struct ControlPair {
    StepFunction p1;
    StepFunction p2;
    Dist N = 0;  // co-density radius

    /// p1 <= p2 on [0, max_t]. Monotonicity and unbounded tails are enforced
    /// by StepFunction itself.
    bool ordered_up_to(Dist max_t) const;
};

struct CoarseMap {
    FiniteMetricSpace source;
    FiniteMetricSpace target;
    std::vector<PointIndex> image;  // image[i] = target index of source point i
    ControlPair controls;
};

struct EmbeddingReport {
    bool ok = true;
    std::optional<std::pair<PointIndex, PointIndex>> violating_pair;
    std::string failed_bound;  // "lower" | "upper" | "order" | "totality"
};

EmbeddingReport check_coarse_embedding(const CoarseMap& map);

/// Only the upper control p2 (a uniformly expansive map).
EmbeddingReport check_uniformly_expansive(const CoarseMap& map);

/// Target points farther than N from the image, in index order.
std::vector<PointIndex> hull_gaps(const CoarseMap& map);

// ---- constructions -------------------------------------------------------

/// [-s, s]^n cap kZ^n. The label records the metric when it is not taxicab.
FiniteMetricSpace build_grid_space(std::size_t n, Dist k, Dist s,
                                   std::size_t point_cap = kDefaultPointCap,
                                   MetricKind metric = MetricKind::taxicab);

FiniteMetricSpace build_asymptotic_sum(const std::vector<FiniteMetricSpace>& parts,
                                       const std::vector<PointIndex>& basepoints,
                                       const std::vector<Dist>& gaps);

FiniteMetricSpace build_cup_c_space(const std::vector<Dist>& c, std::size_t n, Dist box,
                                    std::size_t point_cap = kDefaultPointCap);

struct NetResult {
    FiniteMetricSpace net;
    CoarseMap witness;  // space -> net, each point to its representative
};

NetResult greedy_r_net(const FiniteMetricSpace& space, Dist r);

FiniteMetricSpace subspace(const FiniteMetricSpace& space, const PointSet& subset);
FiniteMetricSpace subspace(const FiniteMetricSpace& space, const PointSet& subset,
                           std::string label);

/// Canonical scan order: lexicographic on coordinates when present, index
/// order otherwise.
std::vector<PointIndex> canonical_order(const FiniteMetricSpace& space);

}  // namespace coarsedim
