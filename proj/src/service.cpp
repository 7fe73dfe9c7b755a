#include "coarsedim/service.hpp"

#include <charconv>

#include <httplib.h>

#include "coarsedim/json_io.hpp"

namespace coarsedim {

namespace {

SessionService::Response json_response(int status, const Json& body) { return {status, canonical_dump(body)}; }

SessionService::Response error_response(int status, std::string_view code, const std::string& detail) {
    return json_response(status, {{"error", std::string(code)}, {"detail", detail}});
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : path) {
        if (ch == '/') {
            if (!cur.empty()) parts.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

const std::string& query_value(const std::map<std::string, std::string>& q, const std::string& key) {
    auto it = q.find(key);
    if (it == q.end()) throw Error(Errc::invalid_input, "missing query parameter '" + key + "'");
    return it->second;
}

std::int64_t query_int(const std::map<std::string, std::string>& q, const std::string& key) {
    const std::string& text = query_value(q, key);
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size())
        throw Error(Errc::invalid_input, "query parameter '" + key + "' must be an integer");
    return v;
}

}  // namespace

int http_status(Errc code) {
    switch (code) {
    case Errc::not_found:
    case Errc::unknown_suite: return 404;
    case Errc::conflict:
    case Errc::label_mismatch: return 409;
    case Errc::resource: return 413;
    case Errc::budget_exhausted: return 422;
    default: return 400;
    }
}

SessionService::SessionService(ServiceLimits limits) : limits_(limits) {}

void SessionService::add_space(const FiniteMetricSpace& space) {
    std::unique_lock lock(registry_mutex_);
    auto it = registry_.find(space.label());
    if (it != registry_.end()) {
        if (!it->second->same_metric(space))
            throw Error(Errc::conflict, "a different space is registered as '" + space.label() + "'");
        return;
    }
    registry_.emplace(space.label(), std::make_shared<const FiniteMetricSpace>(space));
}

std::shared_ptr<const FiniteMetricSpace> SessionService::find_space(const std::string& label) const {
    std::shared_lock lock(registry_mutex_);
    auto it = registry_.find(label);
    if (it == registry_.end()) throw Error(Errc::not_found, "unknown space '" + label + "'");
    return it->second;
}

std::shared_ptr<SessionService::Session> SessionService::find_session(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(Errc::not_found, "unknown game '" + id + "'");
    return it->second;
}

SessionService::Response SessionService::handle(const std::string& method, const std::string& path,
                                                const std::map<std::string, std::string>& query,
                                                const std::string& body) {
    try {
        auto parts = split_path(path);
        auto allow = [&](const char* m) {
            if (method != m) throw std::invalid_argument(method);
        };
        try {
            if (parts.size() == 1 && parts[0] == "games") {
                allow("POST");
                return create_game(body);
            }
            if (parts.size() == 2 && parts[0] == "games") {
                allow("GET");
                return get_game(parts[1], false);
            }
            if (parts.size() == 3 && parts[0] == "games" && parts[2] == "move") {
                allow("POST");
                return move(parts[1], body);
            }
            if (parts.size() == 3 && parts[0] == "games" && parts[2] == "export") {
                allow("GET");
                return get_game(parts[1], true);
            }
            if (parts.size() == 1 && parts[0] == "spaces") {
                if (method == "POST") return upload_space(body);
                allow("GET");
                return list_spaces(query);
            }
            if (parts.size() == 2 && parts[0] == "trees" && parts[1] == "empirical") {
                allow("GET");
                return empirical_tree(query);
            }
        } catch (const std::invalid_argument&) {
            return error_response(405, "method-not-allowed", method + " is not supported on " + path);
        }
        return error_response(404, "not-found", "no route for " + path);
    } catch (const Error& e) {
        return error_response(http_status(e.code()), e.code_name(), e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

SessionService::Response SessionService::create_game(const std::string& body) {
    GameConfig cfg = game_config_from_json(parse_json(body));
    auto space = find_space(cfg.space);
    auto session = std::make_shared<Session>();
    session->space = space;
    session->transcript = new_game(*space, cfg);
    const std::string id = std::to_string(next_id_.fetch_add(1));
    {
        std::lock_guard lock(sessions_mutex_);
        sessions_.emplace(id, session);
    }
    return json_response(201, {{"id", id}, {"state", transcript_to_json(session->transcript, *space)}});
}

SessionService::Response SessionService::move(const std::string& id, const std::string& body) {
    auto session = find_session(id);
    Json req = parse_json(body);
    if (!req.is_object() || !req.contains("r") || !req["r"].is_number_integer())
        throw Error(Errc::invalid_input, "body must be {\"r\": integer}");
    const Dist r = req["r"].get<Dist>();

    std::lock_guard lock(session->mutex);
    GameTranscript next = a_respond(b_move(session->transcript, r), *session->space);
    if (auto rep = validate_transcript(next, session->space.get()); !rep.ok)
        throw std::logic_error("engine transcript failed validation: " + rep.detail);
    session->transcript = std::move(next);
    const auto& g = session->transcript;
    const Round& last = g.rounds.back();
    return json_response(200, {{"id", id},
                               {"round", g.rounds.size()},
                               {"r", last.r},
                               {"k", last.k ? Json(*last.k) : Json(nullptr)},
                               {"cover", last.cover ? cover_to_json(*last.cover, *session->space) : Json(nullptr)},
                               {"status", std::string(game_status_name(g.status))},
                               {"state", transcript_to_json(g, *session->space)}});
}

SessionService::Response SessionService::get_game(const std::string& id, bool export_form) {
    auto session = find_session(id);
    std::lock_guard lock(session->mutex);
    Json transcript = transcript_to_json(session->transcript, *session->space);
    if (!export_form) return json_response(200, transcript);
    return json_response(200, {{"space", space_to_json(*session->space)}, {"transcript", std::move(transcript)}});
}

SessionService::Response SessionService::list_spaces(const std::map<std::string, std::string>& query) const {
    if (auto it = query.find("label"); it != query.end()) return json_response(200, space_to_json(*find_space(it->second)));
    Json list = Json::array();
    std::shared_lock lock(registry_mutex_);
    for (const auto& [label, space] : registry_)
        list.push_back({{"label", label},
                        {"size", space->size()},
                        {"metric", std::string(metric_name(space->kind()))},
                        {"has_coords", space->has_coords()}});
    return json_response(200, {{"spaces", std::move(list)}});
}

SessionService::Response SessionService::upload_space(const std::string& body) {
    auto space = space_from_json(parse_json(body));
    bool existed = false;
    {
        std::shared_lock lock(registry_mutex_);
        existed = registry_.count(space.label()) > 0;
    }
    add_space(space);
    return json_response(existed ? 200 : 201, {{"label", space.label()}, {"size", space.size()}});
}

SessionService::Response SessionService::empirical_tree(const std::map<std::string, std::string>& query) const {
    auto space = find_space(query_value(query, "space"));
    EmpiricalTreeConfig cfg;
    cfg.rmax = query_int(query, "rmax");
    const std::int64_t lmax = query_int(query, "lmax");
    cfg.D = query_int(query, "bound");
    if (auto it = query.find("variant"); it != query.end()) {
        auto v = parse_variant(it->second);
        if (!v) throw Error(Errc::invalid_input, "unknown variant '" + it->second + "'");
        cfg.variant = *v;
    }
    if (cfg.rmax < 1 || cfg.rmax > limits_.tree_rmax || lmax < 1 ||
        static_cast<std::size_t>(lmax) > limits_.tree_lmax)
        throw Error(Errc::invalid_config, "service limits: 1 <= rmax <= " + std::to_string(limits_.tree_rmax) +
                                              ", 1 <= lmax <= " + std::to_string(limits_.tree_lmax));
    if (space->size() > limits_.tree_points)
        throw Error(Errc::resource, "space too large for tree exploration");
    cfg.lmax = static_cast<std::size_t>(lmax);
    return json_response(200, empirical_report_to_json(empirical_dim_tree(*space, cfg), *space));
}

std::vector<FiniteMetricSpace> default_spaces() {
    return {build_grid_space(1, 1, 0), build_grid_space(1, 1, 2), build_grid_space(1, 1, 8),
            build_grid_space(2, 1, 2), build_grid_space(2, 1, 4)};
}

bool serve(SessionService& service, const std::string& host, int port,
           const std::function<void(int, std::function<void()>)>& on_ready) {
    httplib::Server server;
    auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [k, v] : req.params) query.emplace(k, v);
        auto out = service.handle(req.method, req.path, query, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    server.Get(".*", dispatch);
    server.Post(".*", dispatch);
    server.Put(".*", dispatch);
    server.Delete(".*", dispatch);
    int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) return false;
    if (on_ready) on_ready(bound, [&server] { server.stop(); });
    return server.listen_after_bind();
}

}  // namespace coarsedim
