#pragma once

#include <vector>

#include "evistream/mass.hpp"

namespace evistream {

/// A conditioning event together with its (positive) belief in the BoE being
/// conditioned. Construction is the Bl(A) > 0 gate: events outside the set of
/// positive-belief propositions are rejected with ZeroBeliefEvent.
struct ConditioningEvent {
    Proposition event;
    double belief_in_event;

    static ConditioningEvent resolve(const BeliefTable& t, const Proposition& a);
    static ConditioningEvent resolve(const MassFunction& m, const Proposition& a);
};

/// The conditional-core building blocks for an event A:
///   in_set:     focal elements contained in A                 -- in(A)
///   out_set:    A-intersections of focal elements straddling
///               A and its complement                          -- out(A)
///   in_unions:  non-empty unions of in_set members            -- IN(A)
///   out_unions: non-empty unions of out_set members           -- OUT(A)
/// All four are sorted by bit pattern. in_unions is diagnostic only; the core
/// characterization uses in_set and out_unions.
struct CctDecomposition {
    std::vector<Proposition> in_set;
    std::vector<Proposition> out_set;
    std::vector<Proposition> in_unions;
    std::vector<Proposition> out_unions;
};

/// Conditional belief Bl(B|A) = Bl(A&B) / (Bl(A&B) + Pl(A&~B)).
double fh_conditional_belief(const BeliefTable& t, const Proposition& a, const Proposition& b);

/// Conditional plausibility Pl(B|A) = Pl(A&B) / (Pl(A&B) + Bl(A&~B)).
double fh_conditional_plausibility(const BeliefTable& t, const Proposition& a, const Proposition& b);

/// Conditional mass m(.|A): the dense conditional belief table pushed through
/// the Moebius inversion. Every focal element of the result is a subset of A.
MassFunction fh_conditional_mass(const MassFunction& m, const Proposition& a);

/// Splits the core around a non-empty event A. No belief requirement; the
/// decomposition is purely set-algebraic.
CctDecomposition cct_decompose(const MassFunction& m, const Proposition& a);

/// The conditional core {X u Y : X in in(A), Y in OUT(A) u {empty}}, computed
/// without any transform. Independent of the fh_conditional_mass route.
std::vector<Proposition> conditional_core_cct(const MassFunction& m, const Proposition& a);

} // namespace evistream
