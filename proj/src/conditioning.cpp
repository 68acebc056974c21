#include "evistream/conditioning.hpp"

#include <cassert>
#include <set>
#include <string>

namespace evistream {

namespace {

std::string describe(const FrameOfDiscernment& frame, const Proposition& p)
{
    std::string out = "{";
    bool first = true;
    for (const auto& label : p.member_labels(frame)) {
        if (!first) {
            out += ",";
        }
        out += label;
        first = false;
    }
    return out + "}";
}

} // namespace

ConditioningEvent ConditioningEvent::resolve(const BeliefTable& t, const Proposition& a)
{
    const double bl = t.bl(a);
    if (!(bl > 0.0)) {
        throw ZeroBeliefEvent("conditioning event " + describe(t.frame(), a) +
                              " has zero belief");
    }
    return ConditioningEvent{a, bl};
}

ConditioningEvent ConditioningEvent::resolve(const MassFunction& m, const Proposition& a)
{
    const double bl = belief_of(m, a);
    if (!(bl > 0.0)) {
        throw ZeroBeliefEvent("conditioning event " + describe(m.frame(), a) +
                              " has zero belief");
    }
    return ConditioningEvent{a, bl};
}

double fh_conditional_belief(const BeliefTable& t, const Proposition& a, const Proposition& b)
{
    ConditioningEvent::resolve(t, a);
    const Proposition ab = a.set_intersection(b);
    const Proposition a_not_b = a.set_difference(b);
    const double numerator = t.bl(ab);
    const double denominator = numerator + t.pl(a_not_b);
    assert(denominator > 0.0);
    return numerator / denominator;
}

double fh_conditional_plausibility(const BeliefTable& t, const Proposition& a, const Proposition& b)
{
    ConditioningEvent::resolve(t, a);
    const Proposition ab = a.set_intersection(b);
    const Proposition a_not_b = a.set_difference(b);
    const double numerator = t.pl(ab);
    const double denominator = numerator + t.bl(a_not_b);
    if (denominator == 0.0) {
        // Pl(A&B) = Bl(A&~B) = 0 with Bl(A) > 0 cannot happen; keep the
        // division defined anyway.
        return 0.0;
    }
    return numerator / denominator;
}

MassFunction fh_conditional_mass(const MassFunction& m, const Proposition& a)
{
    ConditioningEvent::resolve(m, a);
    const BeliefTable t = zeta_transform(m);
    const std::uint32_t size = m.frame().subset_count();
    const std::uint32_t mask = size - 1;
    const std::uint32_t a_bits = a.bits();
    std::vector<double> conditional(size, 0.0);
    for (std::uint32_t b = 0; b < size; ++b) {
        const std::uint32_t ab = a_bits & b;
        const std::uint32_t a_not_b = a_bits & ~b & mask;
        const double numerator = t.bl_bits(ab);
        conditional[b] = numerator / (numerator + t.pl_bits(a_not_b));
    }
    return mobius_inversion(BeliefTable::from_values(m.frame(), std::move(conditional)));
}

namespace {

// All non-empty unions of the generators: worklist closure, result sorted.
std::vector<Proposition> union_closure(const std::vector<Proposition>& generators, int width)
{
    std::set<std::uint32_t> closed;
    for (const auto& g : generators) {
        closed.insert(g.bits());
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> snapshot(closed.begin(), closed.end());
        for (std::uint32_t u : snapshot) {
            for (const auto& g : generators) {
                if (closed.insert(u | g.bits()).second) {
                    grew = true;
                }
            }
        }
    }
    std::vector<Proposition> out;
    out.reserve(closed.size());
    for (std::uint32_t bits : closed) {
        out.emplace_back(bits, width);
    }
    return out;
}

} // namespace

CctDecomposition cct_decompose(const MassFunction& m, const Proposition& a)
{
    if (a.is_empty()) {
        throw ConstraintViolation("conditioning event must be non-empty");
    }
    if (a.width() != m.frame().size()) {
        throw FrameMismatch("conditioning event does not fit the frame");
    }
    const Proposition a_complement = a.complement();
    CctDecomposition d;
    std::set<std::uint32_t> out_bits;
    for (const auto& focal : m.core()) {
        if (focal.is_subset_of(a)) {
            d.in_set.push_back(focal);
        } else if (focal.intersects(a) && focal.intersects(a_complement)) {
            out_bits.insert(focal.set_intersection(a).bits());
        }
    }
    for (std::uint32_t bits : out_bits) {
        d.out_set.emplace_back(bits, a.width());
    }
    d.in_unions = union_closure(d.in_set, a.width());
    d.out_unions = union_closure(d.out_set, a.width());
    return d;
}

std::vector<Proposition> conditional_core_cct(const MassFunction& m, const Proposition& a)
{
    ConditioningEvent::resolve(m, a);
    const CctDecomposition d = cct_decompose(m, a);
    std::set<std::uint32_t> core;
    for (const auto& x : d.in_set) {
        core.insert(x.bits());
        for (const auto& y : d.out_unions) {
            core.insert(x.bits() | y.bits());
        }
    }
    std::vector<Proposition> out;
    out.reserve(core.size());
    for (std::uint32_t bits : core) {
        out.emplace_back(bits, a.width());
    }
    return out;
}

} // namespace evistream
