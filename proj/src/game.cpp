#include "coarsedim/game.hpp"

#include "coarsedim/error.hpp"

namespace coarsedim {

std::string_view game_status_name(GameStatus s) {
    switch (s) {
    case GameStatus::ongoing: return "ongoing";
    case GameStatus::a_wins: return "A-wins";
    case GameStatus::b_wins: return "B-wins";
    case GameStatus::aborted: return "aborted";
    }
    return "ongoing";
}

std::optional<GameStatus> parse_game_status(std::string_view name) {
    for (auto s : {GameStatus::ongoing, GameStatus::a_wins, GameStatus::b_wins, GameStatus::aborted})
        if (game_status_name(s) == name) return s;
    return std::nullopt;
}

namespace {

std::vector<Dist> radii_of(const GameTranscript& g, std::size_t count) {
    std::vector<Dist> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(g.rounds[i].r);
    return out;
}

// the value compared across B's choices; "no answer up to kcap" is kcap + 1
std::optional<std::size_t> response_value(const FiniteMetricSpace& space, const GameConfig& cfg,
                                          const std::vector<Dist>& radii) {
    auto least = least_response(space, cfg, radii);
    if (least.unknown) return std::nullopt;
    return least.k.value_or(cfg.kcap + 1);
}

bool round_is_stable(const FiniteMetricSpace& space, const GameConfig& cfg,
                     std::vector<Dist> earlier) {
    const Dist lo = earlier.empty() ? 1 : earlier.back();
    std::optional<std::size_t> common;
    earlier.push_back(0);
    for (Dist r = lo; r <= cfg.rmax; ++r) {
        earlier.back() = r;
        auto v = response_value(space, cfg, earlier);
        if (!v) return false;
        if (common && *common != *v) return false;
        common = v;
    }
    return true;
}

}  // namespace

GameTranscript new_game(const FiniteMetricSpace& space, const GameConfig& cfg) {
    if (cfg.space != space.label())
        throw Error(Errc::not_found, "unknown space '" + cfg.space + "'");
    if (cfg.bound < 0) throw Error(Errc::invalid_config, "bound must be >= 0");
    if (cfg.kcap < 1 || cfg.rmax < 1) throw Error(Errc::invalid_config, "kcap and rmax must be >= 1");
    GameTranscript g;
    g.config = cfg;
    return g;
}

GameTranscript b_move(const GameTranscript& g, Dist r) {
    if (g.status != GameStatus::ongoing)
        throw Error(Errc::conflict, std::string("game already ended (") +
                                        std::string(game_status_name(g.status)) + ")");
    if (g.pending()) throw Error(Errc::conflict, "round is awaiting player A");
    if (r < 1 || r > g.config.rmax)
        throw Error(Errc::invalid_input, "r must lie in [1, " + std::to_string(g.config.rmax) + "]");
    if (!g.rounds.empty() && r < g.rounds.back().r)
        throw Error(Errc::invalid_input, "r must be >= previous choice " +
                                             std::to_string(g.rounds.back().r));
    GameTranscript next = g;
    next.rounds.push_back(Round{r, std::nullopt, std::nullopt});
    return next;
}

std::vector<Dist> round_demands(const std::vector<Dist>& radii, std::size_t k) {
    std::vector<Dist> s = radii;
    s.resize(k, radii.back());
    return s;
}

LeastK least_response(const FiniteMetricSpace& space, const GameConfig& cfg,
                      const std::vector<Dist>& radii) {
    SolveOptions opts;
    opts.mode = cfg.mode;
    opts.node_budget = cfg.node_budget;
    LeastK out;
    for (std::size_t k = radii.size(); k <= cfg.kcap; ++k) {
        auto res = solve_s_cover(space, round_demands(radii, k), cfg.bound, opts);
        if (res.status == SolveStatus::sat) {
            out.k = k;
            out.witness = std::move(res.witness);
            return out;
        }
        if (res.status == SolveStatus::unknown) {
            out.unknown = true;
            return out;
        }
    }
    return out;
}

GameTranscript a_respond(const GameTranscript& g, const FiniteMetricSpace& space) {
    if (g.status != GameStatus::ongoing)
        throw Error(Errc::conflict, "game already ended");
    if (!g.pending()) throw Error(Errc::conflict, "no round is awaiting player A");
    if (g.config.space != space.label())
        throw Error(Errc::label_mismatch, "transcript belongs to '" + g.config.space + "'");

    GameTranscript next = g;
    const std::size_t n = next.rounds.size();
    auto least = least_response(space, next.config, radii_of(next, n));
    Round& round = next.rounds.back();
    if (least.unknown) {
        next.status = GameStatus::aborted;
        return next;
    }
    if (!least.k) {
        next.status = GameStatus::b_wins;
    } else {
        round.k = least.k;
        round.cover = std::move(least.witness);
        if (*least.k == n) next.status = GameStatus::a_wins;
    }
    if (next.config.track_stabilization && !next.stabilization_round && round.k &&
        round_is_stable(space, next.config, radii_of(next, n - 1)))
        next.stabilization_round = n;
    return next;
}

std::optional<std::size_t> is_stabilized(const GameTranscript& g, const FiniteMetricSpace& space) {
    if (g.status == GameStatus::aborted) return std::nullopt;
    for (std::size_t n = 1; n <= g.rounds.size(); ++n) {
        if (!g.rounds[n - 1].k) break;
        if (round_is_stable(space, g.config, radii_of(g, n - 1))) return n;
    }
    return std::nullopt;
}

TranscriptReport validate_transcript(const GameTranscript& g, const FiniteMetricSpace* space) {
    auto fail = [](std::optional<std::size_t> round, std::string detail) {
        return TranscriptReport{false, round, std::move(detail)};
    };
    const auto& cfg = g.config;
    std::vector<Dist> radii;
    for (std::size_t i = 0; i < g.rounds.size(); ++i) {
        const std::size_t n = i + 1;
        const Round& round = g.rounds[i];
        const bool last = n == g.rounds.size();
        if (round.r < 1 || round.r > cfg.rmax) return fail(n, "r outside [1, rmax]");
        if (!radii.empty() && round.r < radii.back()) return fail(n, "r decreased");
        radii.push_back(round.r);
        if (round.k.has_value() != round.cover.has_value())
            return fail(n, "k and cover must be recorded together");
        if (!round.k) {
            if (!last) return fail(n, "only the final round may lack an answer");
            continue;
        }
        const std::size_t k = *round.k;
        if (k < n) return fail(n, "k_n below n");
        if (k > cfg.kcap) return fail(n, "k_n above kcap");
        if (round.cover->families.size() != k) return fail(n, "k_n does not match the cover's families");
        if (round.cover->s != round_demands(radii, k)) return fail(n, "cover demands do not match r");
        if (round.cover->D != cfg.bound) return fail(n, "cover bound differs from the game bound");
        if (!last && k == n) return fail(n, "game continued after A won");
        if (space) {
            auto rep = check_s_cover(*space, *round.cover);
            if (!rep.ok()) return fail(n, "cover invalid: " + rep.violation->detail);
        }
    }
    const Round* last = g.rounds.empty() ? nullptr : &g.rounds.back();
    const bool a_won_last = last && last->k && *last->k == g.rounds.size();
    switch (g.status) {
    case GameStatus::a_wins:
        if (!a_won_last) return fail(g.rounds.size(), "A-wins without k_n = n");
        break;
    case GameStatus::b_wins:
    case GameStatus::aborted:
        if (!last || last->k) return fail(g.rounds.size(), "ended game must end on an unanswered round");
        break;
    case GameStatus::ongoing:
        if (a_won_last) return fail(g.rounds.size(), "k_n = n but game not marked A-wins");
        break;
    }
    if (g.stabilization_round && *g.stabilization_round > g.rounds.size())
        return fail(std::nullopt, "stabilization round beyond the transcript");
    return {};
}

GameTranscript play_script(const FiniteMetricSpace& space, const GameConfig& cfg,
                           const std::vector<Dist>& script) {
    GameTranscript g = new_game(space, cfg);
    for (Dist r : script) {
        if (g.status != GameStatus::ongoing) break;
        g = a_respond(b_move(g, r), space);
    }
    return g;
}

}  // namespace coarsedim
