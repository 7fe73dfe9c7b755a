#include "coarsedim/metric_space.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "coarsedim/error.hpp"

namespace coarsedim {

std::string_view metric_name(MetricKind k) {
    switch (k) {
    case MetricKind::matrix: return "matrix";
    case MetricKind::taxicab: return "taxicab";
    case MetricKind::chebyshev: return "chebyshev";
    }
    return "matrix";
}

std::optional<MetricKind> parse_metric(std::string_view name) {
    for (auto k : {MetricKind::matrix, MetricKind::taxicab, MetricKind::chebyshev})
        if (metric_name(k) == name) return k;
    return std::nullopt;
}

struct FiniteMetricSpace::Data {
    std::string label;
    std::size_t n = 0;
    MetricKind kind = MetricKind::matrix;
    std::vector<std::string> ids;  // empty => derived from coords
    std::vector<Dist> coords;      // flat, n * dim
    std::size_t dim = 0;
    std::vector<Dist> matrix;      // flat, n * n
    std::unordered_map<std::string, PointIndex> index;
    bool lex_sorted = false;
};

namespace {

std::string format_coords(std::span<const Dist> c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out;
}

std::optional<std::vector<Dist>> parse_coords(const std::string& id, std::size_t dim) {
    std::vector<Dist> out;
    const char* p = id.data();
    const char* end = id.data() + id.size();
    while (p < end) {
        Dist v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) return std::nullopt;
        out.push_back(v);
        p = next;
        if (p < end) {
            if (*p != ',') return std::nullopt;
            ++p;
        }
    }
    if (out.size() != dim) return std::nullopt;
    return out;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace() : data_(std::make_shared<Data>()) {}

FiniteMetricSpace::FiniteMetricSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::string label, std::vector<std::string> ids,
                                                 std::vector<Dist> rows,
                                                 std::vector<std::vector<Dist>> coords) {
    const std::size_t n = ids.size();
    if (n > kMatrixPointCap)
        throw Error(Errc::resource, "matrix metric limited to " + std::to_string(kMatrixPointCap) +
                                        " points, got " + std::to_string(n));
    if (rows.size() != n * n)
        throw Error(Errc::invalid_input, "distance matrix must be " + std::to_string(n) + "x" +
                                             std::to_string(n));
    auto d = std::make_shared<Data>();
    d->label = std::move(label);
    d->n = n;
    d->kind = MetricKind::matrix;
    d->ids = std::move(ids);
    d->matrix = std::move(rows);
    if (!coords.empty()) {
        if (coords.size() != n) throw Error(Errc::invalid_input, "one coordinate vector per point");
        d->dim = coords.front().size();
        for (const auto& c : coords) {
            if (c.size() != d->dim) throw Error(Errc::invalid_input, "ragged coordinates");
            d->coords.insert(d->coords.end(), c.begin(), c.end());
        }
    }
    for (PointIndex i = 0; i < n; ++i) {
        if (!d->index.emplace(d->ids[i], i).second)
            throw Error(Errc::invalid_input, "duplicate point id '" + d->ids[i] + "'");
    }
    return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace FiniteMetricSpace::from_coords(std::string label,
                                                 std::vector<std::vector<Dist>> coords,
                                                 std::vector<std::string> ids, MetricKind metric) {
    if (metric == MetricKind::matrix)
        throw Error(Errc::invalid_input, "coordinate spaces use the taxicab or chebyshev metric");
    const std::size_t n = coords.size();
    auto d = std::make_shared<Data>();
    d->label = std::move(label);
    d->n = n;
    d->kind = metric;
    d->dim = n ? coords.front().size() : 0;
    d->coords.reserve(n * d->dim);
    for (const auto& c : coords) {
        if (c.size() != d->dim) throw Error(Errc::invalid_input, "ragged coordinates");
        d->coords.insert(d->coords.end(), c.begin(), c.end());
    }
    d->lex_sorted = true;
    for (std::size_t i = 1; i < n && d->lex_sorted; ++i) {
        d->lex_sorted = std::lexicographical_compare(coords[i - 1].begin(), coords[i - 1].end(),
                                                     coords[i].begin(), coords[i].end());
    }
    if (!ids.empty()) {
        if (ids.size() != n) throw Error(Errc::invalid_input, "one id per point");
        d->ids = std::move(ids);
        for (PointIndex i = 0; i < n; ++i) {
            if (!d->index.emplace(d->ids[i], i).second)
                throw Error(Errc::invalid_input, "duplicate point id '" + d->ids[i] + "'");
        }
    } else if (!d->lex_sorted) {
        // Derived ids must be unique; unsorted coordinate lists get a lookup table.
        for (PointIndex i = 0; i < n; ++i) {
            auto key = format_coords(std::span<const Dist>(d->coords).subspan(i * d->dim, d->dim));
            if (!d->index.emplace(std::move(key), i).second)
                throw Error(Errc::invalid_input, "duplicate coordinates");
        }
    }
    return FiniteMetricSpace(std::move(d));
}

const std::string& FiniteMetricSpace::label() const { return data_->label; }
std::size_t FiniteMetricSpace::size() const { return data_->n; }
MetricKind FiniteMetricSpace::kind() const { return data_->kind; }
bool FiniteMetricSpace::has_coords() const { return data_->dim > 0; }
std::size_t FiniteMetricSpace::dimension() const { return data_->dim; }
bool FiniteMetricSpace::has_explicit_ids() const { return !data_->ids.empty() || data_->n == 0; }

std::span<const Dist> FiniteMetricSpace::coords(PointIndex i) const {
    return std::span<const Dist>(data_->coords).subspan(i * data_->dim, data_->dim);
}

Dist FiniteMetricSpace::dist(PointIndex a, PointIndex b) const {
    const Data& d = *data_;
    if (d.kind == MetricKind::matrix) return d.matrix[a * d.n + b];
    const Dist* x = d.coords.data() + a * d.dim;
    const Dist* y = d.coords.data() + b * d.dim;
    Dist total = 0;
    if (d.kind == MetricKind::chebyshev) {
        for (std::size_t j = 0; j < d.dim; ++j) total = std::max(total, x[j] > y[j] ? x[j] - y[j] : y[j] - x[j]);
        return total;
    }
    for (std::size_t j = 0; j < d.dim; ++j) total += x[j] > y[j] ? x[j] - y[j] : y[j] - x[j];
    return total;
}

std::string FiniteMetricSpace::id(PointIndex i) const {
    if (!data_->ids.empty()) return data_->ids[i];
    return format_coords(coords(i));
}

std::optional<PointIndex> FiniteMetricSpace::find(const std::string& id) const {
    const Data& d = *data_;
    if (!d.index.empty() || !d.ids.empty()) {
        auto it = d.index.find(id);
        if (it == d.index.end()) return std::nullopt;
        return it->second;
    }
    if (d.n == 0) return std::nullopt;
    auto c = parse_coords(id, d.dim);
    if (!c) return std::nullopt;
    // derived ids on lexicographically sorted coordinates: binary search
    std::size_t lo = 0, hi = d.n;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto m = coords(mid);
        if (std::lexicographical_compare(m.begin(), m.end(), c->begin(), c->end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < d.n && std::equal(c->begin(), c->end(), coords(lo).begin())) return lo;
    return std::nullopt;
}

PointIndex FiniteMetricSpace::index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw Error(Errc::not_found, "point '" + id + "' not in space '" + label() + "'");
    return *i;
}

FiniteMetricSpace FiniteMetricSpace::relabeled(std::string label) const {
    auto d = std::make_shared<Data>(*data_);
    d->label = std::move(label);
    return FiniteMetricSpace(std::move(d));
}

bool FiniteMetricSpace::same_metric(const FiniteMetricSpace& other) const {
    if (size() != other.size()) return false;
    for (PointIndex i = 0; i < size(); ++i)
        if (id(i) != other.id(i)) return false;
    for (PointIndex i = 0; i < size(); ++i)
        for (PointIndex j = i + 1; j < size(); ++j)
            if (dist(i, j) != other.dist(i, j)) return false;
    return true;
}

MetricReport validate_metric(const FiniteMetricSpace& space) {
    const std::size_t n = space.size();
    for (PointIndex i = 0; i < n; ++i) {
        if (space.dist(i, i) != 0) return {false, "identity", {i}};
        for (PointIndex j = 0; j < n; ++j) {
            Dist d = space.dist(i, j);
            if (d < 0) return {false, "negative", {i, j}};
            if (d != space.dist(j, i)) return {false, "symmetry", {i, j}};
            if (i != j && d == 0) return {false, "identity", {i, j}};
        }
    }
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j)
            for (PointIndex k = 0; k < n; ++k)
                if (space.dist(i, k) > space.dist(i, j) + space.dist(j, k))
                    return {false, "triangle", {i, j, k}};
    return {};
}

// ---- StepFunction --------------------------------------------------------

StepFunction::StepFunction() = default;

StepFunction::StepFunction(std::vector<std::pair<Dist, Dist>> table, Dist tail_start,
                           Dist tail_offset, Dist tail_slope)
    : table_(std::move(table)),
      tail_start_(tail_start),
      tail_offset_(tail_offset),
      tail_slope_(tail_slope) {
    if (tail_slope_ < 1) throw Error(Errc::invalid_input, "tail slope must be >= 1");
    if (tail_start_ < 0) throw Error(Errc::invalid_input, "tail start must be >= 0");
    Dist prev_t = -1, prev_v = 0;
    for (auto [t, v] : table_) {
        if (t <= prev_t) throw Error(Errc::invalid_input, "breakpoints must be strictly increasing");
        if (t >= tail_start_) throw Error(Errc::invalid_input, "breakpoint inside the tail");
        if (v < prev_v) throw Error(Errc::invalid_input, "step function must be nondecreasing");
        prev_t = t;
        prev_v = v;
    }
    if (tail_offset_ < prev_v) throw Error(Errc::invalid_input, "tail must not drop below the table");
}

StepFunction StepFunction::affine(Dist slope, Dist offset) {
    if (offset < 0) throw Error(Errc::invalid_input, "offset must be >= 0");
    return StepFunction({}, 0, offset, slope);
}

StepFunction StepFunction::shifted(Dist slope, Dist shift) {
    if (shift < 0) throw Error(Errc::invalid_input, "shift must be >= 0");
    // max(slope*t - shift, 0): zero until the first t with slope*t >= shift
    Dist start = (shift + slope - 1) / slope;
    return StepFunction({}, start, slope * start - shift, slope);
}

Dist StepFunction::operator()(Dist t) const {
    if (t >= tail_start_) return tail_offset_ + tail_slope_ * (t - tail_start_);
    Dist v = 0;
    for (auto [bt, bv] : table_) {
        if (bt > t) break;
        v = bv;
    }
    return v;
}

bool ControlPair::ordered_up_to(Dist max_t) const {
    for (Dist t = 0; t <= max_t; ++t)
        if (p1(t) > p2(t)) return false;
    return true;
}

// ---- coarse maps ---------------------------------------------------------

namespace {

EmbeddingReport check_map(const CoarseMap& map, bool lower) {
    const auto& src = map.source;
    const auto& dst = map.target;
    if (map.image.size() != src.size()) return {false, std::nullopt, "totality"};
    for (PointIndex i = 0; i < src.size(); ++i)
        if (map.image[i] >= dst.size()) return {false, std::pair{i, i}, "totality"};
    for (PointIndex i = 0; i < src.size(); ++i) {
        for (PointIndex j = i + 1; j < src.size(); ++j) {
            Dist dx = src.dist(i, j);
            Dist dy = dst.dist(map.image[i], map.image[j]);
            if (lower && map.controls.p1(dx) > dy) return {false, std::pair{i, j}, "lower"};
            if (dy > map.controls.p2(dx)) return {false, std::pair{i, j}, "upper"};
        }
    }
    return {};
}

}  // namespace

EmbeddingReport check_coarse_embedding(const CoarseMap& map) { return check_map(map, true); }

EmbeddingReport check_uniformly_expansive(const CoarseMap& map) { return check_map(map, false); }

std::vector<PointIndex> hull_gaps(const CoarseMap& map) {
    std::vector<char> in_image(map.target.size(), 0);
    for (PointIndex y : map.image) in_image[y] = 1;
    std::vector<PointIndex> gaps;
    for (PointIndex y = 0; y < map.target.size(); ++y) {
        if (in_image[y]) continue;
        bool near = false;
        for (PointIndex z = 0; z < map.target.size() && !near; ++z)
            near = in_image[z] && map.target.dist(y, z) <= map.controls.N;
        if (!near) gaps.push_back(y);
    }
    return gaps;
}

// ---- constructions -------------------------------------------------------

FiniteMetricSpace build_grid_space(std::size_t n, Dist k, Dist s, std::size_t point_cap,
                                   MetricKind metric) {
    if (n < 1) throw Error(Errc::invalid_input, "grid dimension must be >= 1");
    if (k < 1) throw Error(Errc::invalid_input, "lattice step must be >= 1");
    if (s < 0) throw Error(Errc::invalid_input, "box radius must be >= 0");
    const Dist per_axis = 2 * (s / k) + 1;
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(per_axis);
    if (total > static_cast<double>(point_cap))
        throw Error(Errc::resource, "grid would have " + std::to_string(static_cast<long long>(total)) +
                                        " points, cap is " + std::to_string(point_cap));
    const Dist lo = -(s / k) * k;
    std::vector<std::vector<Dist>> coords;
    coords.reserve(static_cast<std::size_t>(total));
    std::vector<Dist> cur(n, lo);
    bool more = true;
    while (more) {
        coords.push_back(cur);
        // odometer over the last axis first, which yields lexicographic order
        more = false;
        for (std::size_t axis = n; axis-- > 0;) {
            if (cur[axis] + k <= -lo) {
                cur[axis] += k;
                more = true;
                break;
            }
            cur[axis] = lo;
        }
    }
    std::ostringstream label;
    label << "grid(n=" << n << ",k=" << k << ",s=" << s;
    if (metric != MetricKind::taxicab) label << ",metric=" << metric_name(metric);
    label << ")";
    return FiniteMetricSpace::from_coords(label.str(), std::move(coords), {}, metric);
}

FiniteMetricSpace build_asymptotic_sum(const std::vector<FiniteMetricSpace>& parts,
                                       const std::vector<PointIndex>& basepoints,
                                       const std::vector<Dist>& gaps) {
    if (basepoints.size() != parts.size())
        throw Error(Errc::invalid_input, "one basepoint per part required");
    if (gaps.size() < parts.size()) throw Error(Errc::invalid_input, "need at least one gap per part");
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] < 1) throw Error(Errc::invalid_input, "gaps must be positive");
        if (i && gaps[i] <= gaps[i - 1])
            throw Error(Errc::invalid_input, "gaps must be strictly increasing");
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (basepoints[i] >= parts[i].size())
            throw Error(Errc::invalid_input, "basepoint outside its part");
    if (parts.size() == 1) return parts.front();

    std::vector<std::size_t> offset(parts.size() + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i].size();
    const std::size_t n = offset.back();
    if (n > kMatrixPointCap)
        throw Error(Errc::resource, "asymptotic sum exceeds the matrix point cap");
    std::vector<Dist> prefix(gaps.size() + 1, 0);
    for (std::size_t i = 0; i < gaps.size(); ++i) prefix[i + 1] = prefix[i] + gaps[i];

    std::vector<std::string> ids;
    ids.reserve(n);
    std::vector<std::size_t> part_of(n);
    std::vector<PointIndex> local(n);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (PointIndex p = 0; p < parts[i].size(); ++p) {
            ids.push_back(std::to_string(i + 1) + ":" + parts[i].id(p));
            part_of[offset[i] + p] = i;
            local[offset[i] + p] = p;
        }
    }
    std::vector<Dist> rows(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t i = part_of[a], j = part_of[b];
            Dist d;
            if (i == j) {
                d = parts[i].dist(local[a], local[b]);
            } else {
                std::size_t lo = std::min(i, j), hi = std::max(i, j);
                // x_lo + ... + x_hi, 1-based in the usual notation
                Dist between = prefix[hi + 1] - prefix[lo];
                d = parts[i].dist(local[a], basepoints[i]) + between +
                    parts[j].dist(basepoints[j], local[b]);
            }
            rows[a * n + b] = d;
        }
    }
    std::string label = "as-sum(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) label += ",";
        label += parts[i].label();
    }
    label += ")";
    return FiniteMetricSpace::from_matrix(std::move(label), std::move(ids), std::move(rows));
}

FiniteMetricSpace build_cup_c_space(const std::vector<Dist>& c, std::size_t n, Dist box,
                                    std::size_t point_cap) {
    if (n < 1) throw Error(Errc::invalid_input, "depth must be >= 1");
    if (c.size() < n) throw Error(Errc::invalid_input, "need at least n entries of c");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 1) throw Error(Errc::invalid_input, "c entries must be positive");
        if (i && c[i] <= c[i - 1]) throw Error(Errc::invalid_input, "c must be strictly increasing");
    }
    if (box < 0) throw Error(Errc::invalid_input, "box radius must be >= 0");
    double bound = 1;
    for (std::size_t i = 0; i < n; ++i) bound *= static_cast<double>(2 * (box / c[i]) + 1);
    if (bound > static_cast<double>(point_cap))
        throw Error(Errc::resource, "union of lattices exceeds point cap " + std::to_string(point_cap));

    std::set<std::vector<Dist>> points;
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<Dist> cur(n, 0);
        for (std::size_t i = 0; i < m; ++i) cur[i] = -(box / c[i]) * c[i];
        bool more = true;
        while (more) {
            points.insert(cur);
            more = false;
            for (std::size_t axis = m; axis-- > 0;) {
                if (cur[axis] + c[axis] <= box) {
                    cur[axis] += c[axis];
                    more = true;
                    break;
                }
                cur[axis] = -(box / c[axis]) * c[axis];
            }
        }
    }
    std::ostringstream label;
    label << "cupc(c=";
    for (std::size_t i = 0; i < n; ++i) label << (i ? "," : "") << c[i];
    label << ";box=" << box << ")";
    return FiniteMetricSpace::from_coords(label.str(),
                                          std::vector<std::vector<Dist>>(points.begin(), points.end()));
}

std::vector<PointIndex> canonical_order(const FiniteMetricSpace& space) {
    std::vector<PointIndex> order(space.size());
    std::iota(order.begin(), order.end(), PointIndex{0});
    if (space.has_coords() && space.size() > 0) {
        std::stable_sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) {
            auto x = space.coords(a);
            auto y = space.coords(b);
            return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
        });
    }
    return order;
}

NetResult greedy_r_net(const FiniteMetricSpace& space, Dist r) {
    if (r < 1) throw Error(Errc::invalid_input, "net radius must be >= 1");
    std::vector<PointIndex> net;
    for (PointIndex p : canonical_order(space)) {
        bool separated = true;
        for (PointIndex q : net) {
            if (space.dist(p, q) < r) {
                separated = false;
                break;
            }
        }
        if (separated) net.push_back(p);
    }
    // keep the net in the space's index order so coordinate spaces stay sorted
    PointSet sorted_net(net.begin(), net.end());
    std::sort(sorted_net.begin(), sorted_net.end());
    FiniteMetricSpace net_space =
        sorted_net.size() == space.size()
            ? space
            : subspace(space, sorted_net, space.label() + "/net" + std::to_string(r));

    std::vector<PointIndex> image(space.size());
    for (PointIndex p = 0; p < space.size(); ++p) {
        PointIndex best = 0;
        Dist best_d = std::numeric_limits<Dist>::max();
        for (PointIndex j = 0; j < sorted_net.size(); ++j) {
            Dist d = space.dist(p, sorted_net[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        image[p] = best;
    }
    ControlPair controls{StepFunction::shifted(1, 2 * r), StepFunction::affine(1, 2 * r), 0};
    return {net_space, CoarseMap{space, net_space, std::move(image), controls}};
}

FiniteMetricSpace subspace(const FiniteMetricSpace& space, const PointSet& subset) {
    if (subset.size() == space.size()) return subspace(space, subset, space.label());
    return subspace(space, subset, space.label() + "/sub");
}

FiniteMetricSpace subspace(const FiniteMetricSpace& space, const PointSet& subset,
                           std::string label) {
    if (subset.empty()) throw Error(Errc::invalid_input, "subspace of an empty subset");
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] >= space.size()) throw Error(Errc::invalid_input, "subset point out of range");
        if (i && subset[i] <= subset[i - 1])
            throw Error(Errc::invalid_input, "subset must be sorted and duplicate free");
    }
    if (subset.size() == space.size() && label == space.label()) return space;

    if (space.kind() != MetricKind::matrix) {
        std::vector<std::vector<Dist>> coords;
        coords.reserve(subset.size());
        for (PointIndex p : subset) {
            auto c = space.coords(p);
            coords.emplace_back(c.begin(), c.end());
        }
        std::vector<std::string> ids;
        if (space.has_explicit_ids())
            for (PointIndex p : subset) ids.push_back(space.id(p));
        return FiniteMetricSpace::from_coords(std::move(label), std::move(coords), std::move(ids),
                                              space.kind());
    }
    const std::size_t m = subset.size();
    std::vector<std::string> ids;
    std::vector<Dist> rows(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        ids.push_back(space.id(subset[a]));
        for (std::size_t b = 0; b < m; ++b) rows[a * m + b] = space.dist(subset[a], subset[b]);
    }
    std::vector<std::vector<Dist>> coords;
    if (space.has_coords())
        for (PointIndex p : subset) {
            auto c = space.coords(p);
            coords.emplace_back(c.begin(), c.end());
        }
    return FiniteMetricSpace::from_matrix(std::move(label), std::move(ids), std::move(rows),
                                          std::move(coords));
}

}  // namespace coarsedim
