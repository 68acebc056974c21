#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evistream/updating.hpp"

namespace evistream {

/// One evidence record of a stream: the step index, the incoming BoE, and
/// optional per-step strategy overrides.
struct StreamRecord {
    long long k = 0;
    MassFunction incoming;
    std::optional<AlphaStrategy> alpha_override;
    std::optional<BetaStrategy> beta_override;
};

/// Snapshot of the pipeline state after one update (or of the prior, at
/// k = initial). The sparse masses are stored only while the core stays at or
/// below kSnapshotCoreCap; larger cores keep the summary columns only.
struct TrajectorySample {
    static constexpr int kSnapshotCoreCap = 64;

    long long k = 0;
    bool has_masses = false;
    std::map<std::uint32_t, double> masses;
    std::vector<double> pignistic_values;
    double ignorance = 0.0; // m(Theta)
    int core_size = 0;
    std::vector<double> bl_singletons;
    std::vector<double> pl_singletons;
    int skipped_events = 0;
};

struct RuleConfig {
    UpdateRule rule = UpdateRule::Gcu;
    AlphaStrategy alpha = AlphaStrategy::zero_inertia();
    BetaStrategy beta = BetaStrategy::receptive();
    DegenerateEventPolicy policy = DegenerateEventPolicy::SkipAndRenormalize;
    std::string name;
};

struct TrajectoryLog {
    FrameOfDiscernment frame;
    std::vector<TrajectorySample> samples; // initial state first
    MassFunction final_state;
    long long final_k = -1;
};

/// Resumable pipeline state: the BoE after the last consumed record.
struct StreamState {
    long long k = -1;
    MassFunction boe;
};

struct StepDivergence {
    long long k = 0;
    double pignistic = 0.0; // max abs pignistic difference across configs
    double mass = 0.0;      // max abs mass difference across configs
};

struct ExperimentReport {
    FrameOfDiscernment frame;
    std::vector<std::string> config_names;
    std::vector<TrajectoryLog> trajectories;
    std::vector<StepDivergence> divergences; // one entry per record
    double max_pignistic_divergence = 0.0;
    double max_mass_divergence = 0.0;
};

/// Per-proposition trend over a fully-snapshotted trajectory.
struct PropositionTrend {
    Proposition proposition;
    std::vector<double> mass_series;            // one entry per sample
    std::vector<bool> contained_in_any_event;   // one entry per record
    bool nonincreasing = false;
};

/// Parses a JSON-Lines evidence stream. Errors carry 1-based line numbers;
/// frames must agree across records and with `expected_frame` when given;
/// step indices must be non-negative and strictly increasing.
std::vector<StreamRecord> load_stream(std::istream& in,
                                      const std::optional<FrameOfDiscernment>& expected_frame = {});
std::vector<StreamRecord> load_stream_file(const std::string& path,
                                           const std::optional<FrameOfDiscernment>& expected_frame = {});

TrajectorySample snapshot_state(const MassFunction& state, long long k, int skipped_events);

/// Applies the configured rule to every record in order. The log starts with
/// the initial state at `initial_k` and appends one sample per record.
TrajectoryLog run_stream(const MassFunction& initial, const std::vector<StreamRecord>& records,
                         const RuleConfig& config, long long initial_k = -1);
TrajectoryLog run_stream(const PriorSpec& prior, const FrameOfDiscernment& frame,
                         const std::vector<StreamRecord>& records, const RuleConfig& config);

/// Runs every config over the same records and reports per-step divergence.
ExperimentReport compare_rules(const MassFunction& initial,
                               const std::vector<StreamRecord>& records,
                               const std::vector<RuleConfig>& configs);

/// Trend table for every proposition that was ever focal: its mass series and
/// whether each step's incoming evidence offered an event containing it.
/// Reports only; asserts nothing about asymptotic behavior.
std::vector<PropositionTrend> unsupported_proposition_report(
    const TrajectoryLog& log, const std::vector<StreamRecord>& records);

} // namespace evistream
