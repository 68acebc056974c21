#include "evistream/mass.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace evistream {

namespace {

void require_in_frame(const FrameOfDiscernment& frame, const Proposition& p)
{
    if (p.width() != frame.size()) {
        throw FrameMismatch("proposition width does not match the frame");
    }
}

} // namespace

MassFunction MassFunction::create(FrameOfDiscernment frame, std::map<std::uint32_t, double> masses)
{
    const std::uint32_t mask = frame.subset_count() - 1;
    double sum = 0.0;
    for (const auto& [bits, mass] : masses) {
        if (bits == 0) {
            throw InvalidBpa("mass assigned to the empty set");
        }
        if (bits > mask) {
            throw FrameMismatch("focal bit pattern reaches beyond the frame");
        }
        if (!std::isfinite(mass) || mass <= 0.0) {
            throw InvalidBpa("focal masses must be strictly positive and finite");
        }
        sum += mass;
    }
    if (masses.empty() || std::abs(sum - 1.0) > tol::kMassSum) {
        throw InvalidBpa("masses sum to " + std::to_string(sum) + ", expected 1");
    }
    return MassFunction(std::move(frame), std::move(masses));
}

MassFunction MassFunction::unchecked(FrameOfDiscernment frame, std::map<std::uint32_t, double> masses)
{
    return MassFunction(std::move(frame), std::move(masses));
}

double MassFunction::mass_of(const Proposition& p) const
{
    require_in_frame(frame_, p);
    auto it = masses_.find(p.bits());
    return it == masses_.end() ? 0.0 : it->second;
}

std::vector<Proposition> MassFunction::core() const
{
    std::vector<Proposition> out;
    out.reserve(masses_.size());
    for (const auto& [bits, mass] : masses_) {
        (void)mass;
        out.emplace_back(bits, frame_.size());
    }
    return out;
}

BeliefTable BeliefTable::from_values(FrameOfDiscernment frame, std::vector<double> values)
{
    if (values.size() != frame.subset_count()) {
        throw FrameMismatch("belief table needs exactly 2^n entries");
    }
    return BeliefTable(std::move(frame), std::move(values));
}

double BeliefTable::bl(const Proposition& p) const
{
    require_in_frame(frame_, p);
    return values_[p.bits()];
}

double BeliefTable::pl(const Proposition& p) const
{
    require_in_frame(frame_, p);
    return pl_bits(p.bits());
}

double BeliefTable::pl_bits(std::uint32_t bits) const
{
    const std::uint32_t mask = frame_.subset_count() - 1;
    return 1.0 - values_[~bits & mask];
}

ValidationReport validate_bpa(const MassFunction& m)
{
    ValidationReport report;
    const std::uint32_t mask = m.frame().subset_count() - 1;
    for (const auto& [bits, mass] : m.masses()) {
        if (bits == 0) {
            report.violations.push_back("mass " + std::to_string(mass) + " assigned to the empty set");
        }
        if (bits > mask) {
            report.violations.push_back("focal bit pattern " + std::to_string(bits) +
                                        " reaches beyond the frame");
        }
        if (!std::isfinite(mass) || mass <= 0.0) {
            report.violations.push_back("non-positive mass " + std::to_string(mass));
        }
        report.mass_sum += mass;
    }
    if (std::abs(report.mass_sum - 1.0) > tol::kMassSum) {
        report.violations.push_back("masses sum to " + std::to_string(report.mass_sum) +
                                    ", expected 1 within 1e-9");
    }
    report.valid = report.violations.empty();
    return report;
}

double belief_of(const MassFunction& m, const Proposition& b)
{
    require_in_frame(m.frame(), b);
    double sum = 0.0;
    for (const auto& [bits, mass] : m.masses()) {
        if ((bits & ~b.bits()) == 0) {
            sum += mass;
        }
    }
    return sum;
}

double plausibility_of(const MassFunction& m, const Proposition& b)
{
    return 1.0 - belief_of(m, b.complement());
}

BeliefTable zeta_transform(const MassFunction& m)
{
    const int n = m.frame().size();
    if (n > FrameOfDiscernment::kMaxSize) {
        throw FrameTooLarge("dense transform capped at 2^20 entries");
    }
    std::vector<double> table(m.frame().subset_count(), 0.0);
    for (const auto& [bits, mass] : m.masses()) {
        table[bits] += mass;
    }
    // subset-sum (zeta) transform, one bit layer at a time
    for (int i = 0; i < n; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        for (std::uint32_t s = 0; s < table.size(); ++s) {
            if (s & bit) {
                table[s] += table[s ^ bit];
            }
        }
    }
    return BeliefTable::from_values(m.frame(), std::move(table));
}

MassFunction mobius_inversion(const BeliefTable& t)
{
    const int n = t.frame().size();
    std::vector<double> work = t.values();
    for (int i = 0; i < n; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        for (std::uint32_t s = 0; s < work.size(); ++s) {
            if (s & bit) {
                work[s] -= work[s ^ bit];
            }
        }
    }
    if (std::abs(work[0]) > tol::kMobiusClamp) {
        throw NotABeliefFunction("table assigns mass " + std::to_string(work[0]) +
                                 " to the empty set");
    }
    std::map<std::uint32_t, double> masses;
    double kept = 0.0;
    for (std::uint32_t s = 1; s < work.size(); ++s) {
        const double v = work[s];
        if (v < -tol::kMobiusClamp) {
            throw NotABeliefFunction("recovered mass " + std::to_string(v) +
                                     " below the -1e-9 clamp");
        }
        if (v > tol::kFloatZero) {
            masses.emplace(s, v);
            kept += v;
        }
    }
    if (masses.empty() || std::abs(kept - 1.0) > tol::kMobiusClamp) {
        throw NotABeliefFunction("recovered masses sum to " + std::to_string(kept) +
                                 ", expected 1");
    }
    for (auto& [bits, mass] : masses) {
        (void)bits;
        mass /= kept;
    }
    return MassFunction::create(t.frame(), std::move(masses));
}

std::vector<double> pignistic(const MassFunction& m)
{
    const int n = m.frame().size();
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (const auto& [bits, mass] : m.masses()) {
        const double share = mass / std::popcount(bits);
        for (int i = 0; i < n; ++i) {
            if ((bits >> i) & 1u) {
                p[static_cast<std::size_t>(i)] += share;
            }
        }
    }
    return p;
}

bool is_compatible(const std::vector<double>& singleton_probabilities, const MassFunction& m,
                   double slack)
{
    const int n = m.frame().size();
    if (singleton_probabilities.size() != static_cast<std::size_t>(n)) {
        throw FrameMismatch("distribution has " + std::to_string(singleton_probabilities.size()) +
                            " entries for a frame of " + std::to_string(n));
    }
    double total = 0.0;
    for (double p : singleton_probabilities) {
        total += p;
    }
    if (std::abs(total - 1.0) > tol::kMassSum) {
        throw ConstraintViolation("distribution sums to " + std::to_string(total));
    }
    const BeliefTable table = zeta_transform(m);
    // additive extension of the distribution over all subsets, same transform
    std::vector<double> pr(m.frame().subset_count(), 0.0);
    for (int i = 0; i < n; ++i) {
        pr[std::uint32_t{1} << i] = singleton_probabilities[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        for (std::uint32_t s = 0; s < pr.size(); ++s) {
            if (s & bit) {
                pr[s] += pr[s ^ bit];
            }
        }
    }
    for (std::uint32_t s = 0; s < pr.size(); ++s) {
        if (table.bl_bits(s) > pr[s] + slack || pr[s] > table.pl_bits(s) + slack) {
            return false;
        }
    }
    return true;
}

MassFunction make_vacuous(const FrameOfDiscernment& frame)
{
    std::map<std::uint32_t, double> masses;
    masses.emplace(frame.subset_count() - 1, 1.0);
    return MassFunction::create(frame, std::move(masses));
}

bool is_vacuous(const MassFunction& m)
{
    return m.masses().size() == 1 && m.masses().begin()->first == m.frame().subset_count() - 1;
}

bool is_bayesian(const MassFunction& m)
{
    for (const auto& [bits, mass] : m.masses()) {
        (void)mass;
        if (std::popcount(bits) != 1) {
            return false;
        }
    }
    return true;
}

namespace {

// Unbiased bounded draw; avoids the implementation-defined std distributions
// so seeds reproduce across platforms.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = rng();
    while (x < threshold) {
        x = rng();
    }
    return x % bound;
}

double draw_positive_exponential(std::mt19937_64& rng)
{
    double e = 0.0;
    do {
        const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        e = -std::log(u);
    } while (e <= 0.0);
    return e;
}

} // namespace

MassFunction random_boe(const FrameOfDiscernment& frame, int max_focal, std::uint64_t seed)
{
    const std::uint64_t subsets = frame.subset_count() - 1; // non-empty ones
    if (max_focal < 1 || static_cast<std::uint64_t>(max_focal) > subsets) {
        throw ConstraintViolation("max_focal must lie in [1, 2^n - 1]");
    }
    std::mt19937_64 rng(seed);
    const std::uint64_t count = 1 + draw_below(rng, static_cast<std::uint64_t>(max_focal));

    // Floyd's sampling: uniform `count`-subset of {1, ..., subsets}
    std::map<std::uint32_t, double> masses;
    for (std::uint64_t j = subsets - count + 1; j <= subsets; ++j) {
        const std::uint32_t t = static_cast<std::uint32_t>(1 + draw_below(rng, j));
        if (!masses.emplace(t, 0.0).second) {
            masses.emplace(static_cast<std::uint32_t>(j), 0.0);
        }
    }

    double total = 0.0;
    for (auto& [bits, mass] : masses) {
        (void)bits;
        mass = draw_positive_exponential(rng);
        total += mass;
    }
    for (auto& [bits, mass] : masses) {
        (void)bits;
        mass /= total;
    }
    return MassFunction::create(frame, std::move(masses));
}

} // namespace evistream
