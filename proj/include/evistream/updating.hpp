#pragma once

#include <map>
#include <optional>

#include "evistream/conditioning.hpp"
#include "evistream/mass.hpp"

namespace evistream {

enum class UpdateRule {
    Gcu,           // conditions the existing evidence on incoming events
    Cue,           // conditions the incoming evidence within itself
    BayesBaseline, // plain Bayes conditioning; Bayesian KB + single certain event only
};

/// Inertia weight on the existing knowledge base.
struct AlphaStrategy {
    enum class Kind { Fixed, InfiniteInertia, ZeroInertia, ProportionalInertia };

    Kind kind = Kind::Fixed;
    double fixed_value = 0.0;

    static AlphaStrategy fixed(double alpha);
    static AlphaStrategy infinite_inertia() { return {Kind::InfiniteInertia, 1.0}; }
    static AlphaStrategy zero_inertia() { return {Kind::ZeroInertia, 0.0}; }
    static AlphaStrategy proportional_inertia() { return {Kind::ProportionalInertia, 0.0}; }
};

/// Resolved per-event conditioning weights, keyed by proposition bit pattern.
using BetaWeights = std::map<std::uint32_t, double>;

/// How the per-event weights are derived at each step.
///   Receptive: proportional to the incoming masses m*(A) over F*.
///   Cautious:  proportional to the current masses m(A) over F intersect F*.
///   Explicit:  taken verbatim and validated.
struct BetaStrategy {
    enum class Kind { Receptive, Cautious, Explicit };

    Kind kind = Kind::Receptive;
    BetaWeights explicit_weights;

    static BetaStrategy receptive() { return {Kind::Receptive, {}}; }
    static BetaStrategy cautious() { return {Kind::Cautious, {}}; }
    static BetaStrategy explicit_weights_of(BetaWeights weights)
    {
        return {Kind::Explicit, std::move(weights)};
    }
};

/// Initial mass assignment for an update pipeline.
struct PriorSpec {
    enum class Kind { Vacuous, Uniform, Dirichlet, Explicit };

    Kind kind = Kind::Vacuous;
    double gamma = 0.0;
    std::optional<MassFunction> explicit_mass;

    static PriorSpec vacuous() { return {Kind::Vacuous, 0.0, std::nullopt}; }
    static PriorSpec uniform() { return {Kind::Uniform, 0.0, std::nullopt}; }
    static PriorSpec dirichlet(double gamma) { return {Kind::Dirichlet, gamma, std::nullopt}; }
    static PriorSpec explicit_mass_of(MassFunction m)
    {
        return {Kind::Explicit, 0.0, std::move(m)};
    }
};

/// What to do with a conditioning event whose current belief is zero. Only
/// GCU can meet one: for CUE, Bl*(A) >= m*(A) > 0 over the incoming core.
enum class DegenerateEventPolicy {
    SkipAndRenormalize, // drop the event, rescale alpha and surviving weights
    Error,              // abort with ZeroBeliefEvent
};

/// Update outcome plus the bookkeeping the stream layer records.
struct UpdateOutcome {
    MassFunction result;
    int skipped_events = 0;
    bool degenerate_noop = false; // all events skipped with alpha == 0
};

double resolve_alpha(const AlphaStrategy& strategy, long long step);

/// Resolves the weights for one step so that alpha + sum(beta) = 1. Receptive
/// scales the incoming masses by (1 - alpha); Cautious scales the current
/// masses over the shared focal sets; Explicit is validated as given.
BetaWeights resolve_beta(const BetaStrategy& strategy, double alpha, const MassFunction& current,
                         const MassFunction& incoming);

/// m_{k+1} = alpha * m_k + sum_A beta(A) * m_k(.|A): the mass-domain form of
/// the belief-domain combination (equal by linearity of the transform).
UpdateOutcome gcu_update_detailed(const MassFunction& current, const MassFunction& incoming,
                                  double alpha, const BetaWeights& beta,
                                  DegenerateEventPolicy policy);

MassFunction gcu_update(const MassFunction& current, const MassFunction& incoming, double alpha,
                        const BetaWeights& beta, DegenerateEventPolicy policy);

/// m_{k+1} = alpha * m_k + sum_A beta(A) * m*_k(.|A), conditioning the
/// incoming BoE within itself.
MassFunction cue_update(const MassFunction& current, const MassFunction& incoming, double alpha,
                        const BetaWeights& beta);

/// Plain Bayes conditioning of a Bayesian KB with one certain event.
UpdateOutcome bayes_baseline_update(const MassFunction& current, const MassFunction& incoming,
                                    DegenerateEventPolicy policy);

MassFunction init_prior(const PriorSpec& spec, const FrameOfDiscernment& frame);

} // namespace evistream
