#include <algorithm>

#include "test_support.hpp"

#include "evistream/conditioning.hpp"

using namespace evistream;

namespace {

MassFunction example4() {
    const auto frame = ts::letters(9);
    return ts::boe(frame, {{"a", 0.1},
                           {"b", 0.1},
                           {"h", 0.1},
                           {"df", 0.2},
                           {"beg", 0.2},
                           {"abcdefghi", 0.3}});
}

std::vector<std::uint32_t> labels_to_bits(const FrameOfDiscernment& frame,
                                          std::initializer_list<const char*> sets) {
    std::vector<std::uint32_t> out;
    for (const char* s : sets)
        out.push_back(ts::prop(frame, s).bits());
    return out;
}

} // namespace

TEST_CASE("conditioning event gate: positive belief required") {
    const auto frame = ts::letters(5);
    const auto vac = make_vacuous(frame);
    CHECK_THROWS_AS(ConditioningEvent::resolve(vac, ts::prop(frame, "abc")), ZeroBeliefEvent);
    const auto ev = ConditioningEvent::resolve(vac, frame.full_proposition());
    CHECK(ev.belief_in_event == doctest::Approx(1.0));
}

TEST_CASE("conditional belief: certain-event case matches plain conditioning") {
    const auto uniform = load_boe_file(ts::fixture("uniform5.json"));
    const auto frame = uniform.frame();
    const auto t = zeta_transform(uniform);
    const auto a = frame.proposition({"c3", "c4", "c5"});
    CHECK(fh_conditional_belief(t, a, frame.proposition({"c3"})) ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(fh_conditional_plausibility(t, a, frame.proposition({"c3"})) ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));

    // conditioning on the full frame changes nothing
    const auto m = example4();
    const auto t4 = zeta_transform(m);
    const auto theta = m.frame().full_proposition();
    for (std::uint32_t b = 0; b < 512u; b += 37) {
        const Proposition p(b, 9);
        CHECK(fh_conditional_belief(t4, theta, p) == doctest::Approx(t4.bl(p)).epsilon(1e-12));
        CHECK(fh_conditional_plausibility(t4, theta, p) ==
              doctest::Approx(t4.pl(p)).epsilon(1e-12));
    }

    const auto vac = zeta_transform(make_vacuous(ts::letters(5)));
    CHECK_THROWS_AS(fh_conditional_belief(vac, ts::prop(ts::letters(5), "abc"),
                                          ts::prop(ts::letters(5), "a")),
                    ZeroBeliefEvent);
}

TEST_CASE("conditional belief and plausibility: duality and sandwich") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto frame = ts::letters(2 + static_cast<int>(seed % 7));
        const auto m = ts::rand_boe(frame, 6, seed + 500);
        const auto t = zeta_transform(m);
        for (std::uint32_t a_bits = 1; a_bits < frame.subset_count(); ++a_bits) {
            const Proposition a(a_bits, frame.size());
            if (!(t.bl(a) > 0.0))
                continue;
            for (std::uint32_t b_bits = 0; b_bits < frame.subset_count(); ++b_bits) {
                const Proposition b(b_bits, frame.size());
                const double bl = fh_conditional_belief(t, a, b);
                const double pl = fh_conditional_plausibility(t, a, b);
                CHECK(bl <= pl + 1e-12);
                CHECK(pl == doctest::Approx(
                                1.0 - fh_conditional_belief(t, a, b.complement()))
                                .epsilon(1e-12));
                if (!b.intersects(a))
                    CHECK(bl == 0.0);
                if (a.is_subset_of(b)) {
                    CHECK(bl == doctest::Approx(1.0).epsilon(1e-12));
                    CHECK(pl == doctest::Approx(1.0).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("conditional mass: small hand cases") {
    // Bayesian: masses renormalize over the event
    const auto frame = ts::letters(3);
    const auto bayes = ts::boe(frame, {{"a", 0.2}, {"b", 0.3}, {"c", 0.5}});
    const auto cond = fh_conditional_mass(bayes, ts::prop(frame, "ab"));
    ts::check_masses_close(cond.masses(), {{1u, 0.4}, {2u, 0.6}}, 1e-12);

    // one focal inside, ignorance outside
    const auto frame2 = ts::letters(2);
    const auto m2 = ts::boe(frame2, {{"ab", 0.4}, {"a", 0.6}});
    const auto cond2 = fh_conditional_mass(m2, ts::prop(frame2, "a"));
    ts::check_masses_close(cond2.masses(), {{1u, 1.0}}, 1e-12);

    CHECK_THROWS_AS(fh_conditional_mass(make_vacuous(frame), ts::prop(frame, "a")),
                    ZeroBeliefEvent);
}

TEST_CASE("conditional mass: agrees with the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);
        const auto frame = ts::letters(n);
        const auto m = ts::rand_boe(frame, 6, seed + 900);
        for (std::uint32_t a_bits = 1; a_bits < frame.subset_count(); a_bits += 3) {
            const Proposition a(a_bits, n);
            if (!(belief_of(m, a) > 0.0))
                continue;
            const auto got = fh_conditional_mass(m, a);
            const auto want = oracle::conditional_mass(m.masses(), a_bits, n);
            ts::check_masses_close(got.masses(), want, 1e-12);
            for (const auto& [bits, mass] : got.masses())
                CHECK((bits & ~a_bits) == 0); // containment
        }
    }
}

TEST_CASE("core split around an event: the standing example") {
    const auto m = example4();
    const auto frame = m.frame();
    const auto a = ts::prop(frame, "abcde");
    const auto d = cct_decompose(m, a);
    CHECK(ts::bits_of(d.in_set) == labels_to_bits(frame, {"a", "b"}));
    CHECK(ts::bits_of(d.out_set) == labels_to_bits(frame, {"d", "be", "abcde"}));
    CHECK(ts::bits_of(d.in_unions) == labels_to_bits(frame, {"a", "b", "ab"}));
    CHECK(ts::bits_of(d.out_unions) == labels_to_bits(frame, {"d", "be", "bde", "abcde"}));
}

TEST_CASE("core split: degenerate shapes") {
    const auto m = example4();
    const auto frame = m.frame();

    const auto whole = cct_decompose(m, frame.full_proposition());
    CHECK(whole.in_set.size() == m.core().size());
    CHECK(whole.out_set.empty());
    CHECK(whole.out_unions.empty());

    const auto vac = make_vacuous(ts::letters(4));
    const auto a = ts::prop(ts::letters(4), "bc");
    const auto split = cct_decompose(vac, a);
    CHECK(split.in_set.empty());
    CHECK(ts::bits_of(split.out_set) == std::vector<std::uint32_t>{a.bits()});
    CHECK(ts::bits_of(split.out_unions) == std::vector<std::uint32_t>{a.bits()});

    CHECK_THROWS_AS(cct_decompose(m, frame.empty_proposition()), ConstraintViolation);
    CHECK_THROWS_AS(cct_decompose(m, Proposition(1, 4)), FrameMismatch);
}

TEST_CASE("conditional core: characterization matches the transform route") {
    const auto m = example4();
    const auto frame = m.frame();
    const auto a = ts::prop(frame, "abcde");
    const auto core = conditional_core_cct(m, a);
    CHECK(ts::bits_of(core) ==
          labels_to_bits(frame,
                         {"a", "b", "ad", "bd", "be", "abe", "bde", "abde", "abcde"}));
    CHECK(ts::bits_of(core) == ts::bits_of(fh_conditional_mass(m, a).core()));

    // Bayesian: only the focal singletons inside the event survive
    const auto frame3 = ts::letters(3);
    const auto bayes = ts::boe(frame3, {{"a", 0.2}, {"b", 0.3}, {"c", 0.5}});
    CHECK(ts::bits_of(conditional_core_cct(bayes, ts::prop(frame3, "ab"))) ==
          labels_to_bits(frame3, {"a", "b"}));

    CHECK_THROWS_AS(conditional_core_cct(make_vacuous(frame3), ts::prop(frame3, "a")),
                    ZeroBeliefEvent);
}

TEST_CASE("conditional core: random differential against the transform route") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);
        const auto frame = ts::letters(n);
        const auto m = ts::rand_boe(frame, 7, seed + 1300);
        for (std::uint32_t a_bits = 1; a_bits < frame.subset_count(); ++a_bits) {
            const Proposition a(a_bits, n);
            if (!(belief_of(m, a) > 0.0))
                continue;
            CHECK(ts::bits_of(conditional_core_cct(m, a)) ==
                  ts::bits_of(fh_conditional_mass(m, a).core()));
        }
    }
}

TEST_CASE("bayesian reduction and total probability") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 6);
        const auto frame = ts::letters(n);
        // random Bayesian assignment from a random BoE's pignistic
        const auto p = pignistic(random_boe(frame, 6, seed + 1700));
        std::map<std::uint32_t, double> masses;
        for (int i = 0; i < n; ++i)
            if (p[i] > 0.0)
                masses[1u << i] = p[i];
        const auto bayes = MassFunction::create(frame, masses);
        const auto t = zeta_transform(bayes);

        for (std::uint32_t a_bits = 1; a_bits < frame.subset_count(); a_bits += 5) {
            if (!(t.bl_bits(a_bits) > 0.0))
                continue;
            const Proposition a(a_bits, n);
            for (std::uint32_t b_bits = 0; b_bits < frame.subset_count(); b_bits += 3) {
                const Proposition b(b_bits, n);
                const double expect = t.bl_bits(a_bits & b_bits) / t.bl_bits(a_bits);
                CHECK(fh_conditional_belief(t, a, b) ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
        }

        // two-block partition: total probability reassembles the prior
        const std::uint32_t a1 = 1u; // {first singleton}
        const std::uint32_t a2 = (frame.subset_count() - 1) & ~a1;
        if (t.bl_bits(a1) > 0.0 && t.bl_bits(a2) > 0.0) {
            const Proposition pa1(a1, n), pa2(a2, n);
            for (std::uint32_t b_bits = 0; b_bits < frame.subset_count(); b_bits += 7) {
                const Proposition b(b_bits, n);
                const double total = fh_conditional_belief(t, pa1, b) * t.bl_bits(a1) +
                                     fh_conditional_belief(t, pa2, b) * t.bl_bits(a2);
                CHECK(total == doctest::Approx(t.bl_bits(b_bits)).epsilon(1e-12));
            }
        }
    }
}
