#pragma once

// Canonical JSON forms. Objects serialize with sorted keys and integer values
// only, so equal values always produce identical text.

#include <json.hpp>

#include "coarsedim/experiment.hpp"
#include "coarsedim/game.hpp"
#include "coarsedim/oracle.hpp"
#include "coarsedim/tree.hpp"

namespace coarsedim {

using Json = nlohmann::json;

/// Compact canonical text.
std::string canonical_dump(const Json& j);

/// Parses text; malformed input raises invalid-input.
Json parse_json(const std::string& text);

Json space_to_json(const FiniteMetricSpace& space);
/// Matrix inputs are checked for identity and symmetry, and for the triangle
/// inequality up to kTriangleCheckLimit points.
FiniteMetricSpace space_from_json(const Json& j);
inline constexpr std::size_t kTriangleCheckLimit = 400;

Json cover_to_json(const SCover& cover, const FiniteMetricSpace& space);
/// Point ids are resolved against `space`; the cover's "space" must match its label.
SCover cover_from_json(const Json& j, const FiniteMetricSpace& space);

Json step_to_json(const StepFunction& f);
StepFunction step_from_json(const Json& j);

/// {"map": {source id: target id}, "controls": {"p1", "p2", "N"}}
CoarseMap coarse_map_from_json(const Json& j, const FiniteMetricSpace& source,
                               const FiniteMetricSpace& target);
Json coarse_map_to_json(const CoarseMap& map);

Json tree_to_json(const FinTree& tree);
Json tree_to_json(const EmpiricalTree& tree);
FinTree tree_from_json(const Json& j);
Json rank_to_json(const RankResult& rank);
/// {"space", "tree", "rank", "node_ranks", "solves"}: shared by the CLI and the service.
Json empirical_report_to_json(const EmpiricalTree& tree, const FiniteMetricSpace& space);

Json game_config_to_json(const GameConfig& cfg);
GameConfig game_config_from_json(const Json& j);
Json transcript_to_json(const GameTranscript& g, const FiniteMetricSpace& space);
GameTranscript transcript_from_json(const Json& j, const FiniteMetricSpace& space);

Json solve_result_to_json(const SolveResult& r, const FiniteMetricSpace& space);
Json suite_report_to_json(const SuiteReport& r);
Json cupc_report_to_json(const CupcReport& r);

}  // namespace coarsedim
