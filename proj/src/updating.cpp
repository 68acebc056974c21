#include "evistream/updating.hpp"

#include <cmath>
#include <string>

namespace evistream {

AlphaStrategy AlphaStrategy::fixed(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConstraintViolation("fixed alpha must lie in [0, 1]");
    }
    return {Kind::Fixed, alpha};
}

double resolve_alpha(const AlphaStrategy& strategy, long long step)
{
    if (step < 0) {
        throw ConstraintViolation("step index must be non-negative");
    }
    switch (strategy.kind) {
    case AlphaStrategy::Kind::Fixed:
        return strategy.fixed_value;
    case AlphaStrategy::Kind::InfiniteInertia:
        return 1.0;
    case AlphaStrategy::Kind::ZeroInertia:
        return 0.0;
    case AlphaStrategy::Kind::ProportionalInertia:
        return static_cast<double>(step) / (static_cast<double>(step) + 1.0);
    }
    throw ConstraintViolation("unknown alpha strategy");
}

namespace {

void require_frames_match(const MassFunction& current, const MassFunction& incoming)
{
    if (current.frame() != incoming.frame()) {
        throw FrameMismatch("current and incoming BoEs live on different frames");
    }
}

void require_weights_valid(const BetaWeights& beta, double alpha, const MassFunction& incoming)
{
    double sum = alpha;
    for (const auto& [bits, weight] : beta) {
        if (!(weight >= 0.0) || !std::isfinite(weight)) {
            throw ConstraintViolation("beta weights must be non-negative");
        }
        if (incoming.masses().find(bits) == incoming.masses().end()) {
            throw ConstraintViolation("beta weight on an event the incoming BoE does not offer");
        }
        sum += weight;
    }
    if (std::abs(sum - 1.0) > tol::kMassSum) {
        throw ConstraintViolation("alpha + sum(beta) = " + std::to_string(sum) +
                                  ", expected 1 within 1e-9");
    }
}

void accumulate(std::map<std::uint32_t, double>& into, const MassFunction& m, double weight)
{
    if (weight == 0.0) {
        return;
    }
    for (const auto& [bits, mass] : m.masses()) {
        into[bits] += weight * mass;
    }
}

MassFunction from_accumulated(const FrameOfDiscernment& frame,
                              std::map<std::uint32_t, double>&& masses)
{
    // weights are non-negative, so nothing cancels; drop exact zeros only
    for (auto it = masses.begin(); it != masses.end();) {
        if (it->second <= 0.0) {
            it = masses.erase(it);
        } else {
            ++it;
        }
    }
    return MassFunction::create(frame, std::move(masses));
}

} // namespace

BetaWeights resolve_beta(const BetaStrategy& strategy, double alpha, const MassFunction& current,
                         const MassFunction& incoming)
{
    require_frames_match(current, incoming);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConstraintViolation("alpha must lie in [0, 1]");
    }
    BetaWeights beta;
    switch (strategy.kind) {
    case BetaStrategy::Kind::Receptive: {
        // beta(A) = K m*(A) over F*; the incoming masses already sum to 1
        for (const auto& [bits, mass] : incoming.masses()) {
            const double w = (1.0 - alpha) * mass;
            if (w > 0.0) {
                beta.emplace(bits, w);
            }
        }
        break;
    }
    case BetaStrategy::Kind::Cautious: {
        double shared = 0.0;
        for (const auto& [bits, mass] : current.masses()) {
            if (incoming.masses().count(bits)) {
                shared += mass;
            }
        }
        if (shared <= 0.0) {
            if (alpha < 1.0) {
                throw EmptyEventSet("cautious strategy found no shared focal events and alpha < 1");
            }
            break; // empty weights, valid no-op
        }
        const double scale = (1.0 - alpha) / shared;
        for (const auto& [bits, mass] : current.masses()) {
            if (incoming.masses().count(bits)) {
                const double w = scale * mass;
                if (w > 0.0) {
                    beta.emplace(bits, w);
                }
            }
        }
        break;
    }
    case BetaStrategy::Kind::Explicit:
        beta = strategy.explicit_weights;
        break;
    }
    require_weights_valid(beta, alpha, incoming);
    return beta;
}

UpdateOutcome gcu_update_detailed(const MassFunction& current, const MassFunction& incoming,
                                  double alpha, const BetaWeights& beta,
                                  DegenerateEventPolicy policy)
{
    require_frames_match(current, incoming);
    require_weights_valid(beta, alpha, incoming);

    const int width = current.frame().size();
    std::vector<std::pair<Proposition, double>> usable;
    int skipped = 0;
    for (const auto& [bits, weight] : beta) {
        if (weight <= 0.0) {
            continue;
        }
        const Proposition event(bits, width);
        if (belief_of(current, event) > 0.0) {
            usable.emplace_back(event, weight);
        } else if (policy == DegenerateEventPolicy::Error) {
            throw ZeroBeliefEvent("conditioning event with zero current belief under the error policy");
        } else {
            ++skipped;
        }
    }

    double denom = alpha;
    for (const auto& [event, weight] : usable) {
        (void)event;
        denom += weight;
    }
    if (denom <= 0.0) {
        // every event skipped and no inertia left: keep the current BoE
        return UpdateOutcome{current, skipped, true};
    }
    // rescaling by a common factor preserves the caller's trust ratios
    const double scale = 1.0 / denom;

    std::map<std::uint32_t, double> combined;
    accumulate(combined, current, alpha * scale);
    for (const auto& [event, weight] : usable) {
        accumulate(combined, fh_conditional_mass(current, event), weight * scale);
    }
    return UpdateOutcome{from_accumulated(current.frame(), std::move(combined)), skipped, false};
}

MassFunction gcu_update(const MassFunction& current, const MassFunction& incoming, double alpha,
                        const BetaWeights& beta, DegenerateEventPolicy policy)
{
    return gcu_update_detailed(current, incoming, alpha, beta, policy).result;
}

MassFunction cue_update(const MassFunction& current, const MassFunction& incoming, double alpha,
                        const BetaWeights& beta)
{
    require_frames_match(current, incoming);
    require_weights_valid(beta, alpha, incoming);

    const int width = current.frame().size();
    std::map<std::uint32_t, double> combined;
    accumulate(combined, current, alpha);
    for (const auto& [bits, weight] : beta) {
        if (weight <= 0.0) {
            continue;
        }
        // Bl*(A) >= m*(A) > 0, so the event is never degenerate here
        accumulate(combined, fh_conditional_mass(incoming, Proposition(bits, width)), weight);
    }
    return from_accumulated(current.frame(), std::move(combined));
}

UpdateOutcome bayes_baseline_update(const MassFunction& current, const MassFunction& incoming,
                                    DegenerateEventPolicy policy)
{
    require_frames_match(current, incoming);
    if (!is_bayesian(current)) {
        throw ConstraintViolation("the Bayes baseline needs a Bayesian knowledge base");
    }
    if (incoming.masses().size() != 1 ||
        std::abs(incoming.masses().begin()->second - 1.0) > tol::kMassSum) {
        throw ConstraintViolation("the Bayes baseline needs exactly one certain conditioning event");
    }
    const Proposition event(incoming.masses().begin()->first, current.frame().size());
    const double p_event = belief_of(current, event);
    if (p_event <= 0.0) {
        if (policy == DegenerateEventPolicy::Error) {
            throw ZeroBeliefEvent("certain event has zero probability in the knowledge base");
        }
        return UpdateOutcome{current, 1, true};
    }
    std::map<std::uint32_t, double> masses;
    for (const auto& [bits, mass] : current.masses()) {
        if ((bits & ~event.bits()) == 0) {
            masses.emplace(bits, mass / p_event);
        }
    }
    return UpdateOutcome{MassFunction::create(current.frame(), std::move(masses)), 0, false};
}

MassFunction init_prior(const PriorSpec& spec, const FrameOfDiscernment& frame)
{
    switch (spec.kind) {
    case PriorSpec::Kind::Vacuous:
        return make_vacuous(frame);
    case PriorSpec::Kind::Uniform: {
        std::map<std::uint32_t, double> masses;
        const double share = 1.0 / frame.size();
        for (int i = 0; i < frame.size(); ++i) {
            masses.emplace(std::uint32_t{1} << i, share);
        }
        return MassFunction::create(frame, std::move(masses));
    }
    case PriorSpec::Kind::Dirichlet: {
        if (!(spec.gamma > 0.0 && spec.gamma < 1.0)) {
            throw InvalidGamma("Dirichlet gamma must lie strictly between 0 and 1");
        }
        std::map<std::uint32_t, double> masses;
        const double share = (1.0 - spec.gamma) / frame.size();
        for (int i = 0; i < frame.size(); ++i) {
            masses.emplace(std::uint32_t{1} << i, share);
        }
        masses[frame.subset_count() - 1] += spec.gamma; // n = 1: Theta is the singleton
        return MassFunction::create(frame, std::move(masses));
    }
    case PriorSpec::Kind::Explicit: {
        if (!spec.explicit_mass) {
            throw ConstraintViolation("explicit prior carries no mass function");
        }
        if (spec.explicit_mass->frame() != frame) {
            throw FrameMismatch("explicit prior lives on a different frame");
        }
        return *spec.explicit_mass;
    }
    }
    throw ConstraintViolation("unknown prior kind");
}

} // namespace evistream
