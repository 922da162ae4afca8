#pragma once

#include "bansync/cycles.hpp"
#include "bansync/dynamics.hpp"
#include "bansync/impact.hpp"
#include "bansync/search.hpp"
#include "bansync/sequential.hpp"
#include "bansync/structure.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace bansync {

using Json = nlohmann::ordered_json;

/// Structure, monotony and the instability table.
Json analysis_json(const Network& net);
Json graph_json(const TransitionGraph& graph);
Json cycle_json(const CriticalCycle& cycle);
Json verdict_json(const SequentialisationVerdict& verdict);
Json impact_json(const ImpactReport& report);
Json sensitivity_json(const SensitivityReport& report);
Json ledger_json(const VerificationLedger& ledger);

std::string analysis_text(const Network& net);
std::string graph_text(const TransitionGraph& graph);
std::string cycles_text(const std::vector<CriticalCycle>& cycles);
std::string verdicts_text(const std::vector<SequentialisationVerdict>& verdicts);
std::string impact_text(const ImpactReport& report);
std::string sensitivity_text(const SensitivityReport& report);
std::string ledger_text(const VerificationLedger& ledger);

/// Configurations as nodes; asynchronous edges solid, other elementary edges
/// dashed, the added transition bold; attractors in clusters.
std::string graph_dot(const TransitionGraph& graph);
/// Signed structure; with `at`, unstable automata are filled and arcs
/// frustrated there drawn bold red.
std::string structure_dot(const Network& net, std::optional<State> at = std::nullopt);

}  // namespace bansync
