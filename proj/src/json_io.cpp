#include "coarsedim/json_io.hpp"

#include "coarsedim/error.hpp"

namespace coarsedim {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::invalid_input, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

template <class T>
T get_as(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        bad(std::string("field '") + what + "' has the wrong type");
    }
}

Dist get_int(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<Dist>();
}

template <class T>
std::optional<T> opt_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return get_as<T>(*it, key);
}

Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(); }

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

// ---- spaces --------------------------------------------------------------

Json space_to_json(const FiniteMetricSpace& space) {
    Json j;
    j["label"] = space.label();
    Json points = Json::array();
    for (PointIndex i = 0; i < space.size(); ++i) points.push_back(space.id(i));
    j["points"] = std::move(points);
    if (space.has_coords()) {
        Json coords = Json::object();
        for (PointIndex i = 0; i < space.size(); ++i) {
            auto c = space.coords(i);
            coords[space.id(i)] = std::vector<Dist>(c.begin(), c.end());
        }
        j["coords"] = std::move(coords);
    }
    if (space.kind() == MetricKind::matrix) {
        Json rows = Json::array();
        for (PointIndex i = 0; i < space.size(); ++i) {
            std::vector<Dist> row(space.size());
            for (PointIndex k = 0; k < space.size(); ++k) row[k] = space.dist(i, k);
            rows.push_back(std::move(row));
        }
        j["metric"] = {{"kind", "matrix"}, {"rows", std::move(rows)}};
    } else {
        j["metric"] = {{"kind", std::string(metric_name(space.kind()))}};
    }
    return j;
}

FiniteMetricSpace space_from_json(const Json& j) {
    auto label = get_as<std::string>(field(j, "label"), "label");
    auto ids = get_as<std::vector<std::string>>(field(j, "points"), "points");
    const Json& metric = field(j, "metric");
    auto kind_name = get_as<std::string>(field(metric, "kind"), "metric.kind");
    auto kind = parse_metric(kind_name);
    if (!kind) bad("unknown metric kind '" + kind_name + "'");

    std::vector<std::vector<Dist>> coords;
    if (auto it = j.find("coords"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) bad("'coords' must map point ids to integer vectors");
        for (const auto& id : ids) {
            auto c = it->find(id);
            if (c == it->end()) bad("no coordinates for point '" + id + "'");
            coords.push_back(get_as<std::vector<Dist>>(*c, "coords"));
        }
        if (it->size() != ids.size()) bad("coordinates given for unknown points");
    }

    if (*kind != MetricKind::matrix) {
        if (coords.size() != ids.size()) bad("coordinate metrics need coordinates for every point");
        return FiniteMetricSpace::from_coords(label, std::move(coords), std::move(ids), *kind);
    }
    auto rows = get_as<std::vector<std::vector<Dist>>>(field(metric, "rows"), "metric.rows");
    const std::size_t n = ids.size();
    if (rows.size() != n) bad("distance matrix must have one row per point");
    std::vector<Dist> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) bad("distance matrix must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    auto space = FiniteMetricSpace::from_matrix(label, std::move(ids), std::move(flat), std::move(coords));
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = 0; b < n; ++b) {
            Dist d = space.dist(a, b);
            if (d < 0 || d != space.dist(b, a) || (a == b) != (d == 0))
                bad("not a metric: identity or symmetry fails at ('" + space.id(a) + "', '" + space.id(b) + "')");
        }
    if (n <= kTriangleCheckLimit) {
        if (auto rep = validate_metric(space); !rep.ok) bad("not a metric: " + rep.violation + " inequality fails");
    }
    return space;
}

// ---- covers --------------------------------------------------------------

Json cover_to_json(const SCover& cover, const FiniteMetricSpace& space) {
    Json families = Json::array();
    for (const auto& family : cover.families) {
        Json sets = Json::array();
        for (const auto& set : family) {
            Json ids = Json::array();
            for (PointIndex p : set) ids.push_back(space.id(p));
            sets.push_back(std::move(ids));
        }
        families.push_back(std::move(sets));
    }
    return {{"space", cover.space}, {"s", cover.s}, {"D", cover.D}, {"families", std::move(families)}};
}

SCover cover_from_json(const Json& j, const FiniteMetricSpace& space) {
    SCover cover;
    cover.space = get_as<std::string>(field(j, "space"), "space");
    if (cover.space != space.label())
        throw Error(Errc::label_mismatch,
                    "cover references '" + cover.space + "' but space is '" + space.label() + "'");
    cover.s = get_as<std::vector<Dist>>(field(j, "s"), "s");
    cover.D = get_int(j, "D");
    const Json& families = field(j, "families");
    if (!families.is_array()) bad("'families' must be an array");
    for (const auto& fam : families) {
        if (!fam.is_array()) bad("each family must be an array of sets");
        SetFamily family;
        for (const auto& set : fam) {
            PointSet pts;
            for (const auto& id : get_as<std::vector<std::string>>(set, "families")) {
                auto p = space.find(id);
                if (!p) throw Error(Errc::not_found, "unknown point '" + id + "'");
                pts.push_back(*p);
            }
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            family.push_back(std::move(pts));
        }
        cover.families.push_back(std::move(family));
    }
    return cover;
}

// ---- maps ----------------------------------------------------------------

Json step_to_json(const StepFunction& f) {
    Json table = Json::array();
    for (const auto& [t, v] : f.table()) table.push_back({t, v});
    return {{"table", std::move(table)},
            {"tail_start", f.tail_start()},
            {"tail_offset", f.tail_offset()},
            {"tail_slope", f.tail_slope()}};
}

StepFunction step_from_json(const Json& j) {
    std::vector<std::pair<Dist, Dist>> table;
    if (auto it = j.find("table"); it != j.end())
        for (const auto& row : get_as<std::vector<std::vector<Dist>>>(*it, "table")) {
            if (row.size() != 2) bad("step table rows are [position, value] pairs");
            table.emplace_back(row[0], row[1]);
        }
    return StepFunction(std::move(table), get_int(j, "tail_start"), get_int(j, "tail_offset"),
                        get_int(j, "tail_slope"));
}

CoarseMap coarse_map_from_json(const Json& j, const FiniteMetricSpace& source, const FiniteMetricSpace& target) {
    CoarseMap map{source, target, std::vector<PointIndex>(source.size(), 0), {}};
    const Json& pairs = field(j, "map");
    if (!pairs.is_object()) bad("'map' must be an object from source ids to target ids");
    std::vector<char> seen(source.size(), 0);
    for (const auto& [from, to] : pairs.items()) {
        auto a = source.find(from);
        if (!a) throw Error(Errc::not_found, "unknown source point '" + from + "'");
        auto b = target.find(get_as<std::string>(to, "map"));
        if (!b) throw Error(Errc::not_found, "unknown target point '" + to.get<std::string>() + "'");
        map.image[*a] = *b;
        seen[*a] = 1;
    }
    for (PointIndex p = 0; p < source.size(); ++p)
        if (!seen[p]) bad("map is not total: '" + source.id(p) + "' has no image");
    const Json& controls = field(j, "controls");
    map.controls.p1 = step_from_json(field(controls, "p1"));
    map.controls.p2 = step_from_json(field(controls, "p2"));
    map.controls.N = get_int(controls, "N");
    if (map.controls.N < 0) bad("N must be >= 0");
    return map;
}

Json coarse_map_to_json(const CoarseMap& map) {
    Json pairs = Json::object();
    for (PointIndex p = 0; p < map.source.size(); ++p) pairs[map.source.id(p)] = map.target.id(map.image[p]);
    return {{"map", std::move(pairs)},
            {"controls",
             {{"p1", step_to_json(map.controls.p1)}, {"p2", step_to_json(map.controls.p2)}, {"N", map.controls.N}}}};
}

// ---- trees ---------------------------------------------------------------

Json tree_to_json(const FinTree& tree) {
    return {{"nodes", std::vector<Sequence>(tree.nodes().begin(), tree.nodes().end())}};
}

Json empirical_report_to_json(const EmpiricalTree& tree, const FiniteMetricSpace& space) {
    Json out = rank_to_json(rank_recursive(tree.tree));
    out["tree"] = tree_to_json(tree);
    out["space"] = space.label();
    out["solves"] = tree.solves;
    return out;
}

Json tree_to_json(const EmpiricalTree& tree) {
    Json j = tree_to_json(tree.tree);
    const auto& c = tree.config;
    j["config"] = {{"rmax", c.rmax},
                   {"lmax", c.lmax},
                   {"bound", c.D},
                   {"variant", std::string(variant_name(c.variant))},
                   {"mode", std::string(mode_name(c.mode))}};
    return j;
}

FinTree tree_from_json(const Json& j) {
    auto nodes = get_as<std::vector<Sequence>>(field(j, "nodes"), "nodes");
    return FinTree(std::set<Sequence>(nodes.begin(), nodes.end()));
}

Json rank_to_json(const RankResult& rank) {
    Json nodes = Json::array();
    for (const auto& [s, r] : rank.node_rank) nodes.push_back({{"node", s}, {"rank", r}});
    return {{"rank", rank.rank ? Json(*rank.rank) : Json(nullptr)}, {"node_ranks", std::move(nodes)}};
}

// ---- games ---------------------------------------------------------------

Json game_config_to_json(const GameConfig& cfg) {
    return {{"space", cfg.space},
            {"bound", cfg.bound},
            {"kcap", cfg.kcap},
            {"rmax", cfg.rmax},
            {"mode", std::string(mode_name(cfg.mode))},
            {"node_budget", cfg.node_budget},
            {"track_stabilization", cfg.track_stabilization}};
}

GameConfig game_config_from_json(const Json& j) {
    GameConfig cfg;
    cfg.space = get_as<std::string>(field(j, "space"), "space");
    cfg.bound = get_int(j, "bound");
    Dist kcap = get_int(j, "kcap");
    if (kcap < 0) bad("kcap must be >= 0");
    cfg.kcap = static_cast<std::size_t>(kcap);
    cfg.rmax = get_int(j, "rmax");
    if (auto mode = opt_field<std::string>(j, "mode")) {
        if (*mode == "exact") cfg.mode = SolveMode::exact;
        else if (*mode == "heuristic") cfg.mode = SolveMode::heuristic;
        else bad("mode must be 'exact' or 'heuristic'");
    }
    if (auto budget = opt_field<std::uint64_t>(j, "node_budget")) cfg.node_budget = *budget;
    if (auto track = opt_field<bool>(j, "track_stabilization")) cfg.track_stabilization = *track;
    return cfg;
}

Json transcript_to_json(const GameTranscript& g, const FiniteMetricSpace& space) {
    Json rounds = Json::array();
    for (const auto& round : g.rounds) {
        rounds.push_back({{"r", round.r},
                          {"k", optional_json(round.k)},
                          {"cover", round.cover ? cover_to_json(*round.cover, space) : Json(nullptr)}});
    }
    return {{"config", game_config_to_json(g.config)},
            {"rounds", std::move(rounds)},
            {"status", std::string(game_status_name(g.status))},
            {"stabilization_round", optional_json(g.stabilization_round)}};
}

GameTranscript transcript_from_json(const Json& j, const FiniteMetricSpace& space) {
    GameTranscript g;
    g.config = game_config_from_json(field(j, "config"));
    auto status = parse_game_status(get_as<std::string>(field(j, "status"), "status"));
    if (!status) bad("unknown game status");
    g.status = *status;
    if (auto st = opt_field<std::size_t>(j, "stabilization_round")) g.stabilization_round = st;
    const Json& rounds = field(j, "rounds");
    if (!rounds.is_array()) bad("'rounds' must be an array");
    for (const auto& r : rounds) {
        Round round;
        round.r = get_int(r, "r");
        round.k = opt_field<std::size_t>(r, "k");
        if (auto it = r.find("cover"); it != r.end() && !it->is_null()) round.cover = cover_from_json(*it, space);
        g.rounds.push_back(std::move(round));
    }
    return g;
}

// ---- reports -------------------------------------------------------------

Json solve_result_to_json(const SolveResult& r, const FiniteMetricSpace& space) {
    return {{"status", std::string(status_name(r.status))},
            {"exact", r.exact},
            {"budget_exhausted", r.budget_exhausted},
            {"seed", r.seed},
            {"stats", {{"nodes", r.stats.nodes}, {"backtracks", r.stats.backtracks}, {"restarts", r.stats.restarts}}},
            {"witness", r.witness ? cover_to_json(*r.witness, space) : Json(nullptr)}};
}

Json suite_report_to_json(const SuiteReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"digest", f.digest}, {"expected", f.expected}, {"got", f.got}, {"repro", Json::parse(f.repro)}});
    return {{"suite", r.suite}, {"trials", r.trials}, {"seed", r.seed}, {"passed", r.passed()},
            {"failures", std::move(failures)}};
}

Json cupc_report_to_json(const CupcReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"D", c.D}, {"r1", c.r1}, {"r2", c.r2}, {"k", optional_json(c.k)}, {"exact", c.exact},
                         {"source", c.source}});
    Json stability = Json::array();
    for (const auto& s : r.stability)
        stability.push_back({{"D", s.D}, {"r1", s.r1}, {"constant_over_r2", s.constant_over_r2}});
    return {{"space", r.space},
            {"points", r.points},
            {"c", r.config.c},
            {"box", r.config.box},
            {"bounds", r.config.bounds},
            {"rmax", r.config.rmax},
            {"kcap", r.config.kcap},
            {"cells", std::move(cells)},
            {"stability", std::move(stability)},
            {"nonincreasing_in_D", r.nonincreasing_in_D},
            {"nondecreasing_in_r1", r.nondecreasing_in_r1}};
}

}  // namespace coarsedim
