#pragma once

// In-memory game sessions behind a small JSON-over-HTTP API.
//
//   POST /games                 {"space","bound","kcap","rmax"[,"mode","node_budget"]} -> 201
//   POST /games/{id}/move       {"r"}  B's move followed by A's answer
//   GET  /games/{id}            transcript
//   GET  /games/{id}/export     {"space", "transcript"}
//   GET  /spaces[?label=...]    registry summary, or one space in full
//   POST /spaces                space JSON
//   GET  /trees/empirical?space=&rmax=&lmax=&bound=[&variant=]
//
// Errors are {"error": code, "detail": text}.

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "coarsedim/error.hpp"
#include "coarsedim/game.hpp"

namespace coarsedim {

struct ServiceLimits {
    std::int64_t tree_rmax = 10;
    std::size_t tree_lmax = 5;
    std::size_t tree_points = 2'000;
};

class SessionService {
public:
    struct Response {
        int status = 200;
        std::string body;  // canonical JSON
    };

    explicit SessionService(ServiceLimits limits = {});

    /// Adds a space; an identical space under the same label is accepted
    /// again, a different one is a conflict.
    void add_space(const FiniteMetricSpace& space);
    std::shared_ptr<const FiniteMetricSpace> find_space(const std::string& label) const;

    Response handle(const std::string& method, const std::string& path,
                    const std::map<std::string, std::string>& query, const std::string& body);

private:
    struct Session {
        std::mutex mutex;
        std::shared_ptr<const FiniteMetricSpace> space;
        GameTranscript transcript;
    };

    std::shared_ptr<Session> find_session(const std::string& id) const;

    Response create_game(const std::string& body);
    Response move(const std::string& id, const std::string& body);
    Response get_game(const std::string& id, bool export_form);
    Response list_spaces(const std::map<std::string, std::string>& query) const;
    Response upload_space(const std::string& body);
    Response empirical_tree(const std::map<std::string, std::string>& query) const;

    ServiceLimits limits_;
    mutable std::shared_mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<const FiniteMetricSpace>> registry_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::atomic<std::uint64_t> next_id_{1};
};

/// Spaces preloaded by `serve`: one point, [-2,2], [-8,8], [-2,2]^2, [-4,4]^2.
std::vector<FiniteMetricSpace> default_spaces();

/// HTTP status for an error code.
int http_status(Errc code);

/// Binds and serves until stopped. Returns false if binding fails.
/// `on_ready` receives the bound port (useful with port 0) and a stop callback.
bool serve(SessionService& service, const std::string& host, int port,
           const std::function<void(int, std::function<void()>)>& on_ready = {});

}  // namespace coarsedim
