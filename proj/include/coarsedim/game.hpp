#pragma once

// The dimension game. Player B names nondecreasing radii r_1 <= r_2 <= ...;
// in round n player A answers with a D-bounded cover by k_n >= n families,
// family i being r_i-disjoint for i <= n and r_n-disjoint beyond. A wins in
// the round where k_n = n. Here A always plays the least feasible k.

#include <optional>
#include <string>
#include <vector>

#include "coarsedim/cover.hpp"
#include "coarsedim/solver.hpp"

namespace coarsedim {

struct GameConfig {
    std::string space;
    Dist bound = 1;
    std::size_t kcap = 1;
    Dist rmax = 1;
    SolveMode mode = SolveMode::exact;
    std::uint64_t node_budget = 20'000'000;
    bool track_stabilization = true;
};

enum class GameStatus { ongoing, a_wins, b_wins, aborted };

std::string_view game_status_name(GameStatus s);
std::optional<GameStatus> parse_game_status(std::string_view name);

struct Round {
    Dist r = 0;
    std::optional<SCover> cover;  // absent while pending, or when A could not answer
    std::optional<std::size_t> k;
};

struct GameTranscript {
    GameConfig config;
    std::vector<Round> rounds;
    GameStatus status = GameStatus::ongoing;
    std::optional<std::size_t> stabilization_round;  // 1-based

    bool pending() const { return !rounds.empty() && !rounds.back().k && status == GameStatus::ongoing; }
};

GameTranscript new_game(const FiniteMetricSpace& space, const GameConfig& cfg);
GameTranscript b_move(const GameTranscript& g, Dist r);
GameTranscript a_respond(const GameTranscript& g, const FiniteMetricSpace& space);

/// Demands for A's answer of length k in the round whose radii so far are `radii`.
std::vector<Dist> round_demands(const std::vector<Dist>& radii, std::size_t k);

struct LeastK {
    std::optional<std::size_t> k;  // nullopt: nothing up to kcap
    std::optional<SCover> witness;
    bool unknown = false;
};

/// A's least answer k in [n, kcap] for the radii r_1..r_n.
LeastK least_response(const FiniteMetricSpace& space, const GameConfig& cfg,
                      const std::vector<Dist>& radii);

/// First completed round n at which A's least k is the same for every legal
/// choice of B in that round, r in [r_{n-1}, rmax] (r in [1, rmax] for n = 1).
std::optional<std::size_t> is_stabilized(const GameTranscript& g, const FiniteMetricSpace& space);

struct TranscriptReport {
    bool ok = true;
    std::optional<std::size_t> round;  // 1-based
    std::string detail;
};

/// Checks the transcript invariants; covers are validated when a space is given.
TranscriptReport validate_transcript(const GameTranscript& g, const FiniteMetricSpace* space = nullptr);

/// Plays B's script to the end (or until the game stops).
GameTranscript play_script(const FiniteMetricSpace& space, const GameConfig& cfg,
                           const std::vector<Dist>& script);

}  // namespace coarsedim
