#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "evistream/stream.hpp"

namespace evistream {

/// Shortest-round-trip is what the JSON library emits; CSV cells go through
/// this instead so columns stay locale-free and carry 17 significant digits.
std::string format_double(double value);

// --- BoE documents: {"frame": [labels...], "focal": [{"set": [...], "mass": m}, ...]} ---

MassFunction json_to_boe(const nlohmann::json& doc,
                         const std::optional<FrameOfDiscernment>& expected_frame = {});
nlohmann::json boe_to_json(const MassFunction& boe);
MassFunction load_boe_file(const std::string& path,
                           const std::optional<FrameOfDiscernment>& expected_frame = {});
void save_boe_file(const std::string& path, const MassFunction& boe);

/// Lenient pass for the `validate` subcommand: shape problems still throw
/// ParseError, but content problems are collected instead of thrown.
struct BoeCheck {
    std::optional<MassFunction> boe; // set only when the document is clean
    ValidationReport report;
};
BoeCheck check_boe_json(const nlohmann::json& doc);

// --- Strategy grammar ---

AlphaStrategy parse_alpha(const std::string& text);
BetaStrategy parse_beta(const std::string& text, const FrameOfDiscernment& frame);
DegenerateEventPolicy parse_policy(const std::string& text);
UpdateRule parse_rule(const std::string& text);

/// "vacuous" | "uniform" | "dirichlet:<gamma>" | path to a BoE document.
MassFunction parse_prior(const std::string& text, const FrameOfDiscernment& frame);

/// Explicit event-weight file: [{"set": [labels...], "weight": w}, ...]
BetaWeights load_explicit_weights(const std::string& path, const FrameOfDiscernment& frame);

// --- Comparison configs: {"configs": [{"name", "rule", "alpha", "beta", "policy"}, ...]} ---

std::vector<RuleConfig> load_rule_configs(const std::string& path,
                                          const FrameOfDiscernment& frame);

// --- Trajectory CSV ---

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log);
void save_trajectory_csv(const std::string& path, const TrajectoryLog& log);

// --- Resumable pipeline state (compact on purpose: sets as bit patterns) ---

nlohmann::json state_to_json(const StreamState& state);
StreamState json_to_state(const nlohmann::json& doc);
void save_state_file(const std::string& path, const StreamState& state);
StreamState load_state_file(const std::string& path);

// --- Comparison report ---

nlohmann::json report_to_json(const ExperimentReport& report);

} // namespace evistream
