#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evistream/conditioning.hpp"
#include "evistream/io.hpp"

using namespace evistream;

namespace {

std::vector<std::string> split_labels(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        out.push_back(item);
    return out;
}

/// Shortest round-trip rendering; reads better than fixed 17 digits in
/// narrated output.
std::string pretty(double v) { return nlohmann::json(v).dump(); }

/// Members concatenated, frame order: {b, e} -> "be".
std::string compact(const Proposition& p, const FrameOfDiscernment& frame) {
    std::string out;
    for (const std::string& l : p.member_labels(frame))
        out += l;
    return out.empty() ? "-" : out;
}

std::string compact_list(const std::vector<Proposition>& sets, const FrameOfDiscernment& frame) {
    std::string out = "{";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += compact(sets[i], frame);
    }
    return out + "}";
}

nlohmann::json labels_json(const Proposition& p, const FrameOfDiscernment& frame) {
    return nlohmann::json(p.member_labels(frame));
}

nlohmann::json labels_json(const std::vector<Proposition>& sets,
                           const FrameOfDiscernment& frame) {
    nlohmann::json out = nlohmann::json::array();
    for (const Proposition& p : sets)
        out.push_back(labels_json(p, frame));
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw IoError("cannot write " + out_path);
    out << text;
}

struct StreamSetup {
    FrameOfDiscernment frame;
    MassFunction initial;
    long long initial_k = -1;
    std::vector<StreamRecord> records;
};

bool prior_is_path(const std::string& text) {
    return text != "vacuous" && text != "uniform" && text.rfind("dirichlet:", 0) != 0;
}

StreamSetup prepare_stream(const std::string& stream_path, const std::string& prior_text,
                           const std::string& frame_csv, const std::string& resume_path) {
    StreamSetup setup;
    if (!resume_path.empty()) {
        StreamState state = load_state_file(resume_path);
        setup.frame = state.boe.frame();
        setup.initial = state.boe;
        setup.initial_k = state.k;
        setup.records = load_stream_file(stream_path, setup.frame);
        return setup;
    }
    std::optional<FrameOfDiscernment> frame;
    if (!frame_csv.empty())
        frame = FrameOfDiscernment::create(split_labels(frame_csv));
    else if (prior_is_path(prior_text))
        frame = load_boe_file(prior_text).frame();
    setup.records = load_stream_file(stream_path, frame);
    if (!frame) {
        if (setup.records.empty())
            throw ParseError("cannot determine the frame: stream is empty and neither "
                             "--frame nor a prior file was given");
        frame = setup.records.front().incoming.frame();
    }
    setup.frame = *frame;
    setup.initial = parse_prior(prior_text, setup.frame);
    return setup;
}

int run_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false, true);
    if (doc.is_discarded())
        throw ParseError(path + ": not valid JSON");
    BoeCheck check = check_boe_json(doc);
    std::cout << "mass sum: " << format_double(check.report.mass_sum) << '\n';
    for (const std::string& v : check.report.violations)
        std::cout << "violation: " << v << '\n';
    std::cout << (check.report.valid ? "valid" : "invalid") << '\n';
    return check.report.valid ? 0 : 1;
}

void run_condition(const std::string& path, const std::string& event_csv,
                   const std::string& show, const std::string& out_path) {
    const MassFunction boe = load_boe_file(path);
    const FrameOfDiscernment& frame = boe.frame();
    const Proposition a = frame.proposition(split_labels(event_csv));
    const bool all = show == "all";

    nlohmann::json doc;
    doc["event"] = labels_json(a, frame);
    if (all || show == "in" || show == "out" || show == "IN" || show == "OUT") {
        const CctDecomposition d = cct_decompose(boe, a);
        if (all || show == "in")
            doc["in"] = labels_json(d.in_set, frame);
        if (all || show == "out")
            doc["out"] = labels_json(d.out_set, frame);
        if (all || show == "IN")
            doc["IN"] = labels_json(d.in_unions, frame);
        if (all || show == "OUT")
            doc["OUT"] = labels_json(d.out_unions, frame);
    }
    if (all || show == "core" || show == "mass") {
        ConditioningEvent::resolve(boe, a); // Bl(A) > 0 gate
        if (all || show == "core")
            doc["core"] = labels_json(conditional_core_cct(boe, a), frame);
        if (all || show == "mass")
            doc["mass"] = boe_to_json(fh_conditional_mass(boe, a));
    }
    emit(doc.dump(2) + "\n", out_path);
}

void run_update(const std::string& current_path, const std::string& incoming_path,
                const std::string& rule_text, const std::string& alpha_text,
                const std::string& beta_text, const std::string& policy_text, long long k,
                const std::string& out_path) {
    const MassFunction current = load_boe_file(current_path);
    const MassFunction incoming = load_boe_file(incoming_path, current.frame());
    const UpdateRule rule = parse_rule(rule_text);
    const DegenerateEventPolicy policy = parse_policy(policy_text);

    UpdateOutcome outcome;
    if (rule == UpdateRule::BayesBaseline) {
        outcome = bayes_baseline_update(current, incoming, policy);
    } else {
        const double alpha = resolve_alpha(parse_alpha(alpha_text), k);
        const BetaWeights beta =
            resolve_beta(parse_beta(beta_text, current.frame()), alpha, current, incoming);
        if (rule == UpdateRule::Gcu)
            outcome = gcu_update_detailed(current, incoming, alpha, beta, policy);
        else
            outcome.result = cue_update(current, incoming, alpha, beta);
    }
    if (outcome.skipped_events > 0)
        std::cerr << "note: skipped " << outcome.skipped_events
                  << " zero-belief conditioning event(s)\n";
    if (outcome.degenerate_noop)
        std::cerr << "note: every conditioning event was degenerate; state unchanged\n";
    emit(boe_to_json(outcome.result).dump(2) + "\n", out_path);
}

void run_stream_cmd(const std::string& stream_path, const std::string& prior_text,
                    const std::string& frame_csv, const std::string& rule_text,
                    const std::string& alpha_text, const std::string& beta_text,
                    const std::string& policy_text, const std::string& out_path,
                    const std::string& save_state_path, const std::string& resume_path) {
    StreamSetup setup = prepare_stream(stream_path, prior_text, frame_csv, resume_path);
    RuleConfig config;
    config.rule = parse_rule(rule_text);
    config.alpha = parse_alpha(alpha_text);
    config.beta = parse_beta(beta_text, setup.frame);
    config.policy = parse_policy(policy_text);

    TrajectoryLog log = run_stream(setup.initial, setup.records, config, setup.initial_k);
    std::ostringstream csv;
    write_trajectory_csv(csv, log);
    emit(csv.str(), out_path);
    if (!save_state_path.empty()) {
        StreamState state;
        state.k = log.final_k;
        state.boe = log.final_state;
        save_state_file(save_state_path, state);
    }
}

void run_compare(const std::string& stream_path, const std::string& configs_path,
                 const std::string& prior_text, const std::string& frame_csv,
                 const std::string& out_path) {
    StreamSetup setup = prepare_stream(stream_path, prior_text, frame_csv, "");
    const std::vector<RuleConfig> configs = load_rule_configs(configs_path, setup.frame);
    const ExperimentReport report = compare_rules(setup.initial, setup.records, configs);
    emit(report_to_json(report).dump(2) + "\n", out_path);
}

void run_random_boe(const std::string& labels_csv, int max_focal, std::uint64_t seed,
                    const std::string& out_path) {
    const FrameOfDiscernment frame = FrameOfDiscernment::create(split_labels(labels_csv));
    const std::uint32_t nonempty = frame.subset_count() - 1;
    if (max_focal <= 0)
        max_focal = static_cast<int>(std::min<std::uint32_t>(8, nonempty));
    const MassFunction boe = random_boe(frame, max_focal, seed);
    emit(boe_to_json(boe).dump(2) + "\n", out_path);
}

// --- Demos ---

MassFunction mvp_uniform_prior(const FrameOfDiscernment& frame) {
    std::map<std::uint32_t, double> masses;
    for (int i = 0; i < frame.size(); ++i)
        masses[frame.singleton(i).bits()] = 1.0 / frame.size();
    return MassFunction::create(frame, masses);
}

void print_boe(const MassFunction& boe, const std::string& name) {
    const FrameOfDiscernment& frame = boe.frame();
    std::cout << name << ":";
    for (const auto& [bits, mass] : boe.masses())
        std::cout << " m(" << compact(Proposition(bits, frame.size()), frame)
                  << ")=" << pretty(mass);
    std::cout << '\n';
}

void print_pignistic(const MassFunction& boe) {
    const FrameOfDiscernment& frame = boe.frame();
    const std::vector<double> p = pignistic(boe);
    std::cout << "pignistic:";
    for (int i = 0; i < frame.size(); ++i)
        std::cout << " " << frame.label(i) << "=" << pretty(p[i]);
    std::cout << '\n';
}

void demo_mvp1() {
    const auto frame = FrameOfDiscernment::create({"c1", "c2", "c3", "c4", "c5"});
    const MassFunction prior = mvp_uniform_prior(frame);
    std::cout << "MVP poll, certain elimination.\n"
              << "Five candidates; the poll starts uniform. Candidates c1 and c2 are\n"
              << "injured and out with certainty, so the poll is conditioned on\n"
              << "A = {c3, c4, c5} via P(B|A) = P(A and B) / P(A).\n";
    print_boe(prior, "prior");
    std::map<std::uint32_t, double> event{{frame.proposition({"c3", "c4", "c5"}).bits(), 1.0}};
    const MassFunction incoming = MassFunction::create(frame, event);
    const UpdateOutcome out =
        bayes_baseline_update(prior, incoming, DegenerateEventPolicy::Error);
    print_boe(out.result, "updated");
    print_pignistic(out.result);
}

void demo_mvp2() {
    const auto frame = FrameOfDiscernment::create({"c1", "c2", "c3", "c4", "c5"});
    const MassFunction prior = mvp_uniform_prior(frame);
    std::cout << "MVP poll, 75% confident elimination.\n"
              << "The analyst is only 75% confident that c1 and c2 are out. The update\n"
              << "blends the current state with its conditioning on A = {c3, c4, c5}:\n"
              << "m' = alpha * m + beta(A) * m(.|A), alpha = 0.25, beta(A) = 0.75.\n";
    print_boe(prior, "prior");
    std::map<std::uint32_t, double> event{{frame.proposition({"c3", "c4", "c5"}).bits(), 1.0}};
    const MassFunction incoming = MassFunction::create(frame, event);
    const double alpha = 0.25;
    const BetaWeights beta = resolve_beta(BetaStrategy::receptive(), alpha, prior, incoming);
    for (const auto& [bits, w] : beta)
        std::cout << "beta(" << compact(Proposition(bits, frame.size()), frame)
                  << ") = " << pretty(w) << '\n';
    const MassFunction updated =
        gcu_update(prior, incoming, alpha, beta, DegenerateEventPolicy::Error);
    print_boe(updated, "updated");
    print_pignistic(updated);
}

void demo_mvp3() {
    const auto frame = FrameOfDiscernment::create({"c1", "c2", "c3", "c4", "c5"});
    const MassFunction prior = mvp_uniform_prior(frame);
    std::cout << "MVP poll, two rival readings.\n"
              << "The analyst now weighs two disjoint events: A1 = {c3, c4, c5} (c1 and\n"
              << "c2 are out, 90%) against A2 = {c1, c2} (only they can win, 10%), and\n"
              << "keeps alpha = 0.25 inertia on the current poll. Weights follow the\n"
              << "incoming masses: beta(A) = (1 - alpha) * m*(A).\n";
    print_boe(prior, "prior");
    std::map<std::uint32_t, double> events{
        {frame.proposition({"c3", "c4", "c5"}).bits(), 0.9},
        {frame.proposition({"c1", "c2"}).bits(), 0.1},
    };
    const MassFunction incoming = MassFunction::create(frame, events);
    print_boe(incoming, "incoming");
    const double alpha = 0.25;
    const BetaWeights beta = resolve_beta(BetaStrategy::receptive(), alpha, prior, incoming);
    for (const auto& [bits, w] : beta)
        std::cout << "beta(" << compact(Proposition(bits, frame.size()), frame)
                  << ") = " << pretty(w) << '\n';
    const MassFunction updated =
        gcu_update(prior, incoming, alpha, beta, DegenerateEventPolicy::Error);
    print_boe(updated, "updated");
    print_pignistic(updated);
}

void demo_cct() {
    const auto frame =
        FrameOfDiscernment::create({"a", "b", "c", "d", "e", "f", "g", "h", "i"});
    std::map<std::uint32_t, double> masses{
        {frame.proposition({"a"}).bits(), 0.1},
        {frame.proposition({"b"}).bits(), 0.1},
        {frame.proposition({"h"}).bits(), 0.1},
        {frame.proposition({"d", "f"}).bits(), 0.2},
        {frame.proposition({"b", "e", "g"}).bits(), 0.2},
        {frame.full_proposition().bits(), 0.3},
    };
    const MassFunction boe = MassFunction::create(frame, masses);
    const Proposition a = frame.proposition({"a", "b", "c", "d", "e"});
    std::cout << "Conditional-core walkthrough.\n";
    print_boe(boe, "m");
    std::cout << "conditioning event A = (" << compact(a, frame) << ")\n";

    const CctDecomposition d = cct_decompose(boe, a);
    std::cout << "in(A)=" << compact_list(d.in_set, frame) << '\n'
              << "out(A)=" << compact_list(d.out_set, frame) << '\n'
              << "IN(A)=" << compact_list(d.in_unions, frame) << '\n'
              << "OUT(A)=" << compact_list(d.out_unions, frame) << '\n';

    const std::vector<Proposition> core = conditional_core_cct(boe, a);
    std::cout << "conditional core (" << core.size()
              << " propositions): " << compact_list(core, frame) << '\n';
    print_boe(fh_conditional_mass(boe, a), "m(.|A)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evidential-reasoning toolkit: belief validation, conditioning, "
                 "and streaming belief revision"};
    app.require_subcommand(1);
    int exit_code = 0;

    // validate
    std::string v_path;
    auto* v = app.add_subcommand("validate", "Check a BoE file and print a report");
    v->add_option("boe", v_path, "BoE JSON file")->required();
    v->callback([&] { exit_code = run_validate(v_path); });

    // condition
    std::string c_path, c_event, c_show = "all", c_out;
    auto* c = app.add_subcommand("condition", "Condition a BoE on an event");
    c->add_option("boe", c_path, "BoE JSON file")->required();
    c->add_option("--event", c_event, "conditioning event as comma-separated labels")
        ->required();
    c->add_option("--show", c_show, "which view to print")
        ->check(CLI::IsMember({"in", "out", "IN", "OUT", "core", "mass", "all"}));
    c->add_option("--out", c_out, "write to file instead of stdout");
    c->callback([&] { run_condition(c_path, c_event, c_show, c_out); });

    // update
    std::string u_current, u_incoming, u_rule = "gcu", u_alpha = "zero", u_beta = "receptive",
                u_policy = "skip", u_out;
    long long u_k = 0;
    auto* u = app.add_subcommand("update", "Apply one update step");
    u->add_option("current", u_current, "current BoE JSON file")->required();
    u->add_option("incoming", u_incoming, "incoming BoE JSON file")->required();
    u->add_option("--rule", u_rule, "gcu | cue | bayes");
    u->add_option("--alpha", u_alpha, "inertia strategy");
    u->add_option("--beta", u_beta, "event-weight strategy");
    u->add_option("--policy", u_policy, "skip | error");
    u->add_option("--k", u_k, "step index (used by proportional inertia)");
    u->add_option("--out", u_out, "write to file instead of stdout");
    u->callback([&] {
        run_update(u_current, u_incoming, u_rule, u_alpha, u_beta, u_policy, u_k, u_out);
    });

    // stream
    std::string s_path, s_prior = "vacuous", s_frame, s_rule = "gcu", s_alpha = "zero",
                s_beta = "receptive", s_policy = "skip", s_out, s_save, s_resume;
    auto* s = app.add_subcommand("stream", "Run an evidence stream and log the trajectory");
    s->add_option("stream", s_path, "JSONL evidence stream")->required();
    auto* s_prior_opt =
        s->add_option("--prior", s_prior, "vacuous | uniform | dirichlet:<g> | BoE file");
    auto* s_frame_opt = s->add_option("--frame", s_frame, "frame labels, comma-separated");
    s->add_option("--rule", s_rule, "gcu | cue | bayes");
    s->add_option("--alpha", s_alpha, "inertia strategy");
    s->add_option("--beta", s_beta, "event-weight strategy");
    s->add_option("--policy", s_policy, "skip | error");
    s->add_option("--out", s_out, "trajectory CSV file (default stdout)");
    s->add_option("--save-state", s_save, "write resumable state after the last record");
    s->add_option("--resume", s_resume, "resume from a saved state file")
        ->excludes(s_prior_opt)
        ->excludes(s_frame_opt);
    s->callback([&] {
        run_stream_cmd(s_path, s_prior, s_frame, s_rule, s_alpha, s_beta, s_policy, s_out,
                       s_save, s_resume);
    });

    // compare
    std::string x_path, x_configs, x_prior = "vacuous", x_frame, x_out;
    auto* x = app.add_subcommand("compare", "Run several rule configs over one stream");
    x->add_option("stream", x_path, "JSONL evidence stream")->required();
    x->add_option("--configs", x_configs, "JSON config list")->required();
    x->add_option("--prior", x_prior, "vacuous | uniform | dirichlet:<g> | BoE file");
    x->add_option("--frame", x_frame, "frame labels, comma-separated");
    x->add_option("--out", x_out, "report JSON file (default stdout)");
    x->callback([&] { run_compare(x_path, x_configs, x_prior, x_frame, x_out); });

    // demo
    std::string d_name;
    auto* d = app.add_subcommand("demo", "Run a built-in worked example");
    d->add_option("name", d_name, "mvp1 | mvp2 | mvp3 | cct")
        ->required()
        ->check(CLI::IsMember({"mvp1", "mvp2", "mvp3", "cct"}));
    d->callback([&] {
        if (d_name == "mvp1")
            demo_mvp1();
        else if (d_name == "mvp2")
            demo_mvp2();
        else if (d_name == "mvp3")
            demo_mvp3();
        else
            demo_cct();
    });

    // random-boe
    std::string r_labels, r_out;
    int r_max_focal = 0;
    std::uint64_t r_seed = 0;
    auto* r = app.add_subcommand("random-boe", "Generate a seeded random BoE");
    r->add_option("--labels", r_labels, "frame labels, comma-separated")->required();
    r->add_option("--max-focal", r_max_focal, "largest core size to draw");
    r->add_option("--seed", r_seed, "RNG seed");
    r->add_option("--out", r_out, "write to file instead of stdout");
    r->callback([&] { run_random_boe(r_labels, r_max_focal, r_seed, r_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
