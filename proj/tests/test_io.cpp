#include <cmath>
#include <fstream>

#include "test_support.hpp"

using namespace evistream;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

} // namespace

TEST_CASE("BoE documents round-trip through JSON") {
    const auto original = load_boe_file(ts::fixture("example4.json"));
    CHECK(json_to_boe(boe_to_json(original)) == original);

    // through actual serialized text, not just the DOM
    const std::string text = boe_to_json(original).dump();
    CHECK(json_to_boe(nlohmann::json::parse(text)) == original);

    ts::TempFile file("boe");
    save_boe_file(file.path(), original);
    CHECK(load_boe_file(file.path()) == original);
    CHECK(load_boe_file(file.path(), original.frame()) == original);
}

TEST_CASE("BoE documents: parse failures by kind") {
    const auto parse = [](const std::string& text) {
        return json_to_boe(nlohmann::json::parse(text));
    };

    CHECK_THROWS_AS(parse(R"({"focal": []})"), ParseError);                // no frame
    CHECK_THROWS_AS(parse(R"({"frame": ["a"]})"), ParseError);             // no focal
    CHECK_THROWS_AS(parse(R"({"frame": ["a"], "focal": [[1, 1.0]]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"frame": ["a"], "focal": [{"set": ["a"]}]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"frame": ["a"], "focal": [{"set": "a", "mass": 1.0}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"frame": ["a", "a"], "focal": [{"set": ["a"], "mass": 1.0}]})"),
                    DuplicateLabel);
    CHECK_THROWS_AS(
        parse(R"({"frame": ["a", "b"], "focal": [{"set": ["z"], "mass": 1.0}]})"),
        UnknownLabel);
    CHECK_THROWS_AS(
        parse(
            R"({"frame": ["a", "b"], "focal": [{"set": ["a"], "mass": 0.5}, {"set": ["a"], "mass": 0.5}]})"),
        InvalidBpa);

    const auto uniform = load_boe_file(ts::fixture("uniform5.json"));
    CHECK_THROWS_AS(json_to_boe(boe_to_json(uniform), ts::letters(3)), FrameMismatch);
    CHECK_THROWS_AS(load_boe_file("/nonexistent/evistream.json"), IoError);
}

TEST_CASE("lenient validation collects content problems") {
    std::ifstream bad_file(ts::fixture("bad_sum.json"));
    REQUIRE(bad_file.good());
    const auto bad = check_boe_json(nlohmann::json::parse(bad_file));
    CHECK_FALSE(bad.report.valid);
    CHECK_FALSE(bad.boe.has_value());
    CHECK(bad.report.mass_sum == doctest::Approx(0.6));
    REQUIRE_FALSE(bad.report.violations.empty());
    bool mentions_sum = false;
    for (const auto& v : bad.report.violations)
        mentions_sum = mentions_sum || v.find("within 1e-9") != std::string::npos;
    CHECK(mentions_sum);

    std::ifstream good_file(ts::fixture("uniform5.json"));
    const auto good = check_boe_json(nlohmann::json::parse(good_file));
    CHECK(good.report.valid);
    CHECK(good.report.violations.empty());
    REQUIRE(good.boe.has_value());
    CHECK(good.boe->core_size() == 5);

    // several problems in one document: all reported
    const auto messy = check_boe_json(nlohmann::json::parse(
        R"({"frame": ["a", "b"], "focal": [{"set": [], "mass": -0.5}, {"set": ["a"], "mass": 0.4}]})"));
    CHECK_FALSE(messy.report.valid);
    CHECK(messy.report.violations.size() >= 2);

    // shape problems still throw
    CHECK_THROWS_AS(check_boe_json(nlohmann::json::parse(R"(["not", "an", "object"])")),
                    ParseError);
}

TEST_CASE("floating-point cells parse back to the same value") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.0) == "0");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto m = random_boe(ts::letters(8), 10, seed + 4000);
        for (const auto& [bits, mass] : m.masses())
            CHECK(std::stod(format_double(mass)) == mass);
    }
}

TEST_CASE("strategy grammar") {
    CHECK(parse_alpha("zero").kind == AlphaStrategy::Kind::ZeroInertia);
    CHECK(parse_alpha("infinite").kind == AlphaStrategy::Kind::InfiniteInertia);
    CHECK(parse_alpha("proportional").kind == AlphaStrategy::Kind::ProportionalInertia);
    const auto fixed = parse_alpha("fixed:0.25");
    CHECK(fixed.kind == AlphaStrategy::Kind::Fixed);
    CHECK(resolve_alpha(fixed, 0) == 0.25);
    CHECK_THROWS_AS(parse_alpha("fixed:oops"), ParseError);
    CHECK_THROWS_AS(parse_alpha("fixed:0.5xyz"), ParseError);
    CHECK_THROWS_AS(parse_alpha("fixed:"), ParseError);
    CHECK_THROWS_AS(parse_alpha("sometimes"), ParseError);
    CHECK_THROWS_AS(parse_alpha("fixed:1.5"), ConstraintViolation); // parsed, then range-checked

    const auto frame = ts::letters(3);
    CHECK(parse_beta("receptive", frame).kind == BetaStrategy::Kind::Receptive);
    CHECK(parse_beta("cautious", frame).kind == BetaStrategy::Kind::Cautious);
    CHECK_THROWS_AS(parse_beta("verbatim", frame), ParseError);

    const auto explicit_beta =
        parse_beta("explicit:" + ts::fixture("explicit_beta.json"), frame);
    CHECK(explicit_beta.kind == BetaStrategy::Kind::Explicit);
    ts::check_masses_close(explicit_beta.explicit_weights,
                           {{ts::prop(frame, "ab").bits(), 0.5},
                            {ts::prop(frame, "c").bits(), 0.5}},
                           0.0);

    CHECK(parse_policy("skip") == DegenerateEventPolicy::SkipAndRenormalize);
    CHECK(parse_policy("error") == DegenerateEventPolicy::Error);
    CHECK_THROWS_AS(parse_policy("ignore"), ParseError);

    CHECK(parse_rule("gcu") == UpdateRule::Gcu);
    CHECK(parse_rule("cue") == UpdateRule::Cue);
    CHECK(parse_rule("bayes") == UpdateRule::BayesBaseline);
    CHECK_THROWS_AS(parse_rule("dempster"), ParseError);
}

TEST_CASE("prior grammar") {
    const auto frame = ts::letters(4);
    CHECK(is_vacuous(parse_prior("vacuous", frame)));
    ts::check_masses_close(parse_prior("uniform", frame).masses(),
                           {{1u, 0.25}, {2u, 0.25}, {4u, 0.25}, {8u, 0.25}}, 1e-15);
    ts::check_masses_close(
        parse_prior("dirichlet:0.2", frame).masses(),
        {{1u, 0.2}, {2u, 0.2}, {4u, 0.2}, {8u, 0.2}, {15u, 0.2}}, 1e-12);
    CHECK_THROWS_AS(parse_prior("dirichlet:nope", frame), ParseError);
    CHECK_THROWS_AS(parse_prior("dirichlet:1.0", frame), InvalidGamma);

    // anything else is a path to a BoE document
    ts::TempFile file("prior");
    const auto given = ts::boe(frame, {{"ab", 0.5}, {"cd", 0.5}});
    save_boe_file(file.path(), given);
    CHECK(parse_prior(file.path(), frame) == given);
    CHECK_THROWS_AS(parse_prior("no-such-prior", frame), IoError);
    CHECK_THROWS_AS(parse_prior(file.path(), ts::letters(3)), FrameMismatch);
}

TEST_CASE("explicit weight files") {
    const auto frame = ts::letters(3);
    const auto weights = load_explicit_weights(ts::fixture("explicit_beta.json"), frame);
    ts::check_masses_close(
        weights, {{ts::prop(frame, "ab").bits(), 0.5}, {ts::prop(frame, "c").bits(), 0.5}},
        0.0);

    ts::TempFile file("weights");
    write_text(file.path(), R"([{"set": ["a"], "weight": "half"}])");
    CHECK_THROWS_AS(load_explicit_weights(file.path(), frame), ParseError);
    write_text(file.path(), R"({"set": ["a"], "weight": 1.0})");
    CHECK_THROWS_AS(load_explicit_weights(file.path(), frame), ParseError); // not an array
    write_text(file.path(), R"([{"set": ["q"], "weight": 1.0}])");
    CHECK_THROWS_AS(load_explicit_weights(file.path(), frame), UnknownLabel);
}

TEST_CASE("comparison config files") {
    const auto frame = FrameOfDiscernment::create({"a", "b", "c"});
    const auto configs = load_rule_configs(ts::fixture("compare_configs.json"), frame);
    REQUIRE(configs.size() == 2);
    CHECK(configs[0].name == "existing-conditioned");
    CHECK(configs[0].rule == UpdateRule::Gcu);
    CHECK(configs[1].name == "incoming-conditioned");
    CHECK(configs[1].rule == UpdateRule::Cue);
    CHECK(configs[0].alpha.kind == AlphaStrategy::Kind::ZeroInertia);
    CHECK(configs[0].beta.kind == BetaStrategy::Kind::Receptive);

    ts::TempFile file("configs");
    write_text(file.path(), R"({"configs": []})");
    CHECK(load_rule_configs(file.path(), frame).empty()); // the comparison itself rejects < 2
    write_text(file.path(), R"({"configs": [{"rule": "gcu"}]})");
    const auto defaults = load_rule_configs(file.path(), frame);
    REQUIRE(defaults.size() == 1);
    CHECK(defaults[0].policy == DegenerateEventPolicy::SkipAndRenormalize);
}

TEST_CASE("pipeline state documents") {
    const auto boe = load_boe_file(ts::fixture("example4.json"));
    const StreamState state{41, boe};

    const auto doc = state_to_json(state);
    CHECK(doc["version"] == 1);
    CHECK(doc["k"] == 41);
    CHECK(doc["frame"].size() == 9);
    CHECK(doc["focal"].size() == 6);

    const auto back = json_to_state(doc);
    CHECK(back.k == 41);
    CHECK(back.boe == boe);

    // the document stays compact even for a wide core
    const auto frame = ts::letters(10);
    std::map<std::uint32_t, double> masses;
    for (std::uint32_t bits = 1; bits <= 500; ++bits)
        masses[bits] = 1.0 / 500;
    const StreamState wide{999, MassFunction::create(frame, std::move(masses))};
    CHECK(state_to_json(wide).dump().size() <= 64 * 1024);

    auto broken = doc;
    broken["version"] = 2;
    CHECK_THROWS_AS(json_to_state(broken), ParseError);
    broken = doc;
    broken["focal"].push_back(nlohmann::json::array({1u << 9, 0.0}));
    CHECK_THROWS_AS(json_to_state(broken), FrameMismatch); // bits outside the frame
    broken = doc;
    broken["focal"].push_back(broken["focal"][0]);
    CHECK_THROWS_AS(json_to_state(broken), InvalidBpa); // duplicate focal set
    broken = doc;
    broken.erase("k");
    CHECK_THROWS_AS(json_to_state(broken), ParseError);
}

TEST_CASE("comparison reports serialize every step") {
    const auto prior = load_boe_file(ts::fixture("gcu_vs_cue/prior.json"));
    const auto records = load_stream_file(ts::fixture("gcu_vs_cue/stream.jsonl"));
    RuleConfig existing;
    existing.name = "existing-conditioned";
    RuleConfig incoming = existing;
    incoming.rule = UpdateRule::Cue;
    incoming.name = "incoming-conditioned";

    const auto doc = report_to_json(compare_rules(prior, records, {existing, incoming}));
    CHECK(doc["frame"] == nlohmann::json({"a", "b", "c"}));
    CHECK(doc["configs"] ==
          nlohmann::json({"existing-conditioned", "incoming-conditioned"}));
    REQUIRE(doc["steps"].size() == 1);
    CHECK(doc["steps"][0]["k"] == 0);
    CHECK(doc["steps"][0]["mass_divergence"].get<double>() > 1e-6);
    CHECK(doc["max_mass_divergence"].get<double>() > 1e-6);
    CHECK(doc["max_pignistic_divergence"].get<double>() <= 1e-12);
    REQUIRE(doc["final"].size() == 2);
    CHECK(json_to_boe(doc["final"][0]) ==
          load_boe_file(ts::fixture("gcu_vs_cue/expected_gcu.json")));
}
