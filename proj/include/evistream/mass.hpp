#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evistream/frame.hpp"

namespace evistream {

/// Numeric tolerances shared across the library.
namespace tol {
/// Mass sums must match 1 within this on input.
inline constexpr double kMassSum = 1e-9;
/// Recovered masses below -kMobiusClamp fail inversion; values in
/// [-kMobiusClamp, 0) are clamped to zero.
inline constexpr double kMobiusClamp = 1e-9;
/// Magnitudes at or below this are treated as floating-point zeros when a
/// sparse core is rebuilt from a dense table.
inline constexpr double kFloatZero = 1e-12;
} // namespace tol

class BeliefTable;

/// Outcome of validate_bpa. Report-style: lists every violation instead of
/// throwing on the first.
struct ValidationReport {
    bool valid = true;
    double mass_sum = 0.0;
    std::vector<std::string> violations;
};

/// Sparse basic probability assignment over a frame: strictly positive masses
/// on non-empty propositions, summing to one. The key set is exactly the core.
/// Immutable after construction.
class MassFunction {
public:
    /// Placeholder over the empty frame so aggregates can hold a value before
    /// assignment; not a valid assignment.
    MassFunction() = default;

    /// Validating factory. Throws InvalidBpa (or FrameMismatch for foreign
    /// bit patterns) instead of repairing anything.
    static MassFunction create(FrameOfDiscernment frame, std::map<std::uint32_t, double> masses);

    /// Stores the assignment as given, skipping all checks. Exists so that
    /// loaders can materialize a questionable assignment and hand it to
    /// validate_bpa for a full report.
    static MassFunction unchecked(FrameOfDiscernment frame, std::map<std::uint32_t, double> masses);

    const FrameOfDiscernment& frame() const { return frame_; }
    const std::map<std::uint32_t, double>& masses() const { return masses_; }

    double mass_of(const Proposition& p) const;
    std::vector<Proposition> core() const;
    int core_size() const { return static_cast<int>(masses_.size()); }

    bool operator==(const MassFunction& other) const
    {
        return frame_ == other.frame_ && masses_ == other.masses_;
    }

private:
    MassFunction(FrameOfDiscernment frame, std::map<std::uint32_t, double> masses)
        : frame_(std::move(frame)), masses_(std::move(masses)) {}

    FrameOfDiscernment frame_;
    std::map<std::uint32_t, double> masses_;
};

/// Dense table of Bl over every subset of the frame, indexed by bit pattern.
/// Plausibility is derived as Pl(B) = 1 - Bl(~B).
class BeliefTable {
public:
    static BeliefTable from_values(FrameOfDiscernment frame, std::vector<double> values);

    const FrameOfDiscernment& frame() const { return frame_; }
    const std::vector<double>& values() const { return values_; }

    double bl(const Proposition& p) const;
    double pl(const Proposition& p) const;
    double bl_bits(std::uint32_t bits) const { return values_[bits]; }
    double pl_bits(std::uint32_t bits) const;

private:
    BeliefTable(FrameOfDiscernment frame, std::vector<double> values)
        : frame_(std::move(frame)), values_(std::move(values)) {}

    FrameOfDiscernment frame_;
    std::vector<double> values_;
};

ValidationReport validate_bpa(const MassFunction& m);

/// Bl(B) = sum of masses of subsets of B, straight off the sparse core.
double belief_of(const MassFunction& m, const Proposition& b);

/// Pl(B) = 1 - Bl(~B).
double plausibility_of(const MassFunction& m, const Proposition& b);

/// Bulk Bl over all 2^n subsets via the n*2^n subset-sum transform.
BeliefTable zeta_transform(const MassFunction& m);

/// Recovers the sparse assignment from a belief table:
/// m(B) = sum_{C subseteq B} (-1)^{|B\C|} Bl(C). Masses below -1e-9 are a
/// NotABeliefFunction error; the clamp band [-1e-9, 0) and floating-point
/// zeros are dropped and the survivors renormalized.
MassFunction mobius_inversion(const BeliefTable& t);

/// BetP(singleton) = sum over focal sets containing it of mass/|set|.
std::vector<double> pignistic(const MassFunction& m);

/// True iff Bl(B) <= Pr(B) <= Pl(B) for every subset B, extending the
/// singleton distribution additively. `slack` absorbs float rounding.
bool is_compatible(const std::vector<double>& singleton_probabilities, const MassFunction& m,
                   double slack = tol::kFloatZero);

MassFunction make_vacuous(const FrameOfDiscernment& frame);
bool is_vacuous(const MassFunction& m);
bool is_bayesian(const MassFunction& m);

/// Seeded generator for property tests and fixtures: picks 1..max_focal
/// distinct non-empty focal sets uniformly without replacement and masses
/// from a flat simplex. Deterministic for a fixed seed.
MassFunction random_boe(const FrameOfDiscernment& frame, int max_focal, std::uint64_t seed);

} // namespace evistream
