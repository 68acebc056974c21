#include "evistream/stream.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evistream/conditioning.hpp"
#include "evistream/errors.hpp"

namespace evistream {

TrajectorySample snapshot_state(const MassFunction& state, long long k, int skipped_events) {
    const auto& frame = state.frame();
    TrajectorySample s;
    s.k = k;
    s.core_size = state.core_size();
    s.skipped_events = skipped_events;
    s.ignorance = state.mass_of(frame.full_proposition());
    s.pignistic_values = pignistic(state);
    s.bl_singletons.reserve(frame.size());
    s.pl_singletons.reserve(frame.size());
    for (int i = 0; i < frame.size(); ++i) {
        const Proposition single = frame.singleton(i);
        s.bl_singletons.push_back(belief_of(state, single));
        s.pl_singletons.push_back(plausibility_of(state, single));
    }
    if (s.core_size <= TrajectorySample::kSnapshotCoreCap) {
        s.has_masses = true;
        s.masses = state.masses();
    }
    return s;
}

namespace {

void require_records_valid(const FrameOfDiscernment& frame,
                           const std::vector<StreamRecord>& records, long long initial_k) {
    long long last = initial_k;
    for (const StreamRecord& r : records) {
        if (r.k < 0)
            throw NonMonotoneIndex("step index must be non-negative, got " + std::to_string(r.k));
        if (r.k <= last)
            throw NonMonotoneIndex("step index " + std::to_string(r.k) +
                                   " does not increase past " + std::to_string(last));
        if (!(r.incoming.frame() == frame))
            throw FrameMismatch("record at step " + std::to_string(r.k) +
                                " uses a different frame");
        last = r.k;
    }
}

UpdateOutcome apply_record(const MassFunction& current, const StreamRecord& record,
                           const RuleConfig& config) {
    if (config.rule == UpdateRule::BayesBaseline)
        return bayes_baseline_update(current, record.incoming, config.policy);

    const AlphaStrategy& alpha_strategy =
        record.alpha_override ? *record.alpha_override : config.alpha;
    const BetaStrategy& beta_strategy = record.beta_override ? *record.beta_override : config.beta;
    const double alpha = resolve_alpha(alpha_strategy, record.k);
    const BetaWeights beta = resolve_beta(beta_strategy, alpha, current, record.incoming);
    if (config.rule == UpdateRule::Gcu)
        return gcu_update_detailed(current, record.incoming, alpha, beta, config.policy);
    UpdateOutcome out;
    out.result = cue_update(current, record.incoming, alpha, beta);
    return out;
}

} // namespace

TrajectoryLog run_stream(const MassFunction& initial, const std::vector<StreamRecord>& records,
                         const RuleConfig& config, long long initial_k) {
    const FrameOfDiscernment frame = initial.frame();
    require_records_valid(frame, records, initial_k);

    TrajectoryLog log;
    log.frame = frame;
    log.samples.reserve(records.size() + 1);
    log.samples.push_back(snapshot_state(initial, initial_k, 0));

    MassFunction state = initial;
    for (const StreamRecord& record : records) {
        UpdateOutcome out = apply_record(state, record, config);
        state = out.result;
        log.samples.push_back(snapshot_state(state, record.k, out.skipped_events));
    }
    log.final_state = state;
    log.final_k = records.empty() ? initial_k : records.back().k;
    return log;
}

TrajectoryLog run_stream(const PriorSpec& prior, const FrameOfDiscernment& frame,
                         const std::vector<StreamRecord>& records, const RuleConfig& config) {
    return run_stream(init_prior(prior, frame), records, config);
}

ExperimentReport compare_rules(const MassFunction& initial,
                               const std::vector<StreamRecord>& records,
                               const std::vector<RuleConfig>& configs) {
    if (configs.size() < 2)
        throw ConstraintViolation("comparison needs at least two configurations");
    const FrameOfDiscernment frame = initial.frame();
    require_records_valid(frame, records, -1);

    ExperimentReport report;
    report.frame = frame;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        report.config_names.push_back(
            configs[i].name.empty() ? "config" + std::to_string(i) : configs[i].name);
        TrajectoryLog log;
        log.frame = frame;
        log.samples.push_back(snapshot_state(initial, -1, 0));
        report.trajectories.push_back(std::move(log));
    }

    std::vector<MassFunction> states(configs.size(), initial);
    for (const StreamRecord& record : records) {
        StepDivergence div;
        div.k = record.k;
        for (std::size_t i = 0; i < configs.size(); ++i) {
            UpdateOutcome out = apply_record(states[i], record, configs[i]);
            states[i] = out.result;
            report.trajectories[i].samples.push_back(
                snapshot_state(states[i], record.k, out.skipped_events));
        }
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const auto& pi = report.trajectories[i].samples.back().pignistic_values;
            for (std::size_t j = i + 1; j < configs.size(); ++j) {
                const auto& pj = report.trajectories[j].samples.back().pignistic_values;
                for (std::size_t t = 0; t < pi.size(); ++t)
                    div.pignistic = std::max(div.pignistic, std::abs(pi[t] - pj[t]));
                std::set<std::uint32_t> support;
                for (const auto& [bits, v] : states[i].masses())
                    support.insert(bits);
                for (const auto& [bits, v] : states[j].masses())
                    support.insert(bits);
                for (std::uint32_t bits : support) {
                    const Proposition p(bits, frame.size());
                    div.mass = std::max(div.mass,
                                        std::abs(states[i].mass_of(p) - states[j].mass_of(p)));
                }
            }
        }
        report.divergences.push_back(div);
        report.max_pignistic_divergence = std::max(report.max_pignistic_divergence, div.pignistic);
        report.max_mass_divergence = std::max(report.max_mass_divergence, div.mass);
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        report.trajectories[i].final_state = states[i];
        report.trajectories[i].final_k = records.empty() ? -1 : records.back().k;
    }
    return report;
}

std::vector<PropositionTrend> unsupported_proposition_report(
    const TrajectoryLog& log, const std::vector<StreamRecord>& records) {
    if (log.samples.empty())
        throw ConstraintViolation("trajectory log is empty");
    if (log.samples.size() != records.size() + 1)
        throw ConstraintViolation("trajectory log does not match the record list");
    for (const TrajectorySample& s : log.samples)
        if (!s.has_masses)
            throw ConstraintViolation("trend report needs full mass snapshots at every step");

    std::set<std::uint32_t> ever_focal;
    for (const TrajectorySample& s : log.samples)
        for (const auto& [bits, v] : s.masses)
            ever_focal.insert(bits);

    std::vector<PropositionTrend> trends;
    trends.reserve(ever_focal.size());
    for (std::uint32_t bits : ever_focal) {
        PropositionTrend t;
        t.proposition = Proposition(bits, log.frame.size());
        t.mass_series.reserve(log.samples.size());
        for (const TrajectorySample& s : log.samples) {
            auto it = s.masses.find(bits);
            t.mass_series.push_back(it == s.masses.end() ? 0.0 : it->second);
        }
        t.contained_in_any_event.reserve(records.size());
        for (const StreamRecord& r : records) {
            bool contained = false;
            for (const Proposition& event : r.incoming.core())
                if (t.proposition.is_subset_of(event)) {
                    contained = true;
                    break;
                }
            t.contained_in_any_event.push_back(contained);
        }
        t.nonincreasing = true;
        for (std::size_t i = 1; i < t.mass_series.size(); ++i)
            if (t.mass_series[i] > t.mass_series[i - 1] + tol::kFloatZero) {
                t.nonincreasing = false;
                break;
            }
        trends.push_back(std::move(t));
    }
    return trends;
}

} // namespace evistream
