#include "evistream/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "evistream/errors.hpp"

namespace evistream {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

nlohmann::json parse_json_text(std::istream& in, const std::string& origin) {
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false, true);
    if (doc.is_discarded())
        throw ParseError(origin + ": not valid JSON");
    return doc;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    return in;
}

const nlohmann::json& need(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

std::vector<std::string> string_list(const nlohmann::json& node, const char* what) {
    if (!node.is_array())
        throw ParseError(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    out.reserve(node.size());
    for (const auto& item : node) {
        if (!item.is_string())
            throw ParseError(std::string(what) + " must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

double number(const nlohmann::json& node, const char* what) {
    if (!node.is_number())
        throw ParseError(std::string(what) + " must be a number");
    return node.get<double>();
}

std::string label_text(const Proposition& p, const FrameOfDiscernment& frame) {
    std::string out;
    for (const std::string& l : p.member_labels(frame)) {
        if (!out.empty())
            out += ", ";
        out += l;
    }
    return out;
}

} // namespace

MassFunction json_to_boe(const nlohmann::json& doc,
                         const std::optional<FrameOfDiscernment>& expected_frame) {
    if (!doc.is_object())
        throw ParseError("BoE document must be a JSON object");
    FrameOfDiscernment frame =
        FrameOfDiscernment::create(string_list(need(doc, "frame"), "\"frame\""));
    if (expected_frame && !(frame == *expected_frame))
        throw FrameMismatch("document frame does not match the expected frame");

    const nlohmann::json& focal = need(doc, "focal");
    if (!focal.is_array())
        throw ParseError("\"focal\" must be an array");
    std::map<std::uint32_t, double> masses;
    for (const auto& entry : focal) {
        if (!entry.is_object())
            throw ParseError("focal entries must be objects");
        const Proposition p = frame.proposition(string_list(need(entry, "set"), "\"set\""));
        const double m = number(need(entry, "mass"), "\"mass\"");
        if (!masses.emplace(p.bits(), m).second)
            throw InvalidBpa("duplicate focal set {" + label_text(p, frame) + "}");
    }
    return MassFunction::create(frame, masses);
}

nlohmann::json boe_to_json(const MassFunction& boe) {
    const auto& frame = boe.frame();
    nlohmann::json doc;
    doc["frame"] = nlohmann::json::array();
    for (int i = 0; i < frame.size(); ++i)
        doc["frame"].push_back(frame.label(i));
    doc["focal"] = nlohmann::json::array();
    for (const auto& [bits, mass] : boe.masses()) {
        nlohmann::json entry;
        entry["set"] = nlohmann::json::array();
        for (int i = 0; i < frame.size(); ++i)
            if (bits & (1u << i))
                entry["set"].push_back(frame.label(i));
        entry["mass"] = mass;
        doc["focal"].push_back(std::move(entry));
    }
    return doc;
}

MassFunction load_boe_file(const std::string& path,
                           const std::optional<FrameOfDiscernment>& expected_frame) {
    auto in = open_for_read(path);
    return json_to_boe(parse_json_text(in, path), expected_frame);
}

void save_boe_file(const std::string& path, const MassFunction& boe) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << boe_to_json(boe).dump(2) << '\n';
}

BoeCheck check_boe_json(const nlohmann::json& doc) {
    BoeCheck check;
    if (!doc.is_object())
        throw ParseError("BoE document must be a JSON object");
    std::optional<FrameOfDiscernment> frame;
    try {
        frame = FrameOfDiscernment::create(string_list(need(doc, "frame"), "\"frame\""));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        check.report.violations.emplace_back(e.what());
        check.report.valid = false;
        return check;
    }

    const nlohmann::json& focal = need(doc, "focal");
    if (!focal.is_array())
        throw ParseError("\"focal\" must be an array");
    std::map<std::uint32_t, double> masses;
    double sum = 0.0;
    for (const auto& entry : focal) {
        if (!entry.is_object())
            throw ParseError("focal entries must be objects");
        const double m = number(need(entry, "mass"), "\"mass\"");
        std::optional<Proposition> p;
        try {
            p = frame->proposition(string_list(need(entry, "set"), "\"set\""));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            check.report.violations.emplace_back(e.what());
        }
        if (p) {
            if (p->is_empty())
                check.report.violations.emplace_back("the empty set cannot carry mass");
            else if (!masses.emplace(p->bits(), m).second)
                check.report.violations.emplace_back("duplicate focal set {" +
                                                     label_text(*p, *frame) + "}");
        }
        if (!(m > 0.0) || !std::isfinite(m))
            check.report.violations.emplace_back("mass " + format_double(m) +
                                                 " is not strictly positive");
        else
            sum += m;
    }
    check.report.mass_sum = sum;
    if (std::abs(sum - 1.0) > tol::kMassSum)
        check.report.violations.emplace_back("masses sum to " + format_double(sum) +
                                             ", expected 1 within 1e-9");
    check.report.valid = check.report.violations.empty();
    if (check.report.valid)
        check.boe = MassFunction::create(*frame, masses);
    return check;
}

// --- Strategy grammar ---

namespace {

double parse_number_suffix(const std::string& text, std::size_t colon, const char* what) {
    const std::string tail = text.substr(colon + 1);
    try {
        std::size_t used = 0;
        const double v = std::stod(tail, &used);
        if (used != tail.size())
            throw ParseError(std::string("trailing characters in ") + what + ": " + text);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(std::string("cannot parse ") + what + ": " + text);
    }
}

} // namespace

AlphaStrategy parse_alpha(const std::string& text) {
    if (text == "zero")
        return AlphaStrategy::zero_inertia();
    if (text == "infinite")
        return AlphaStrategy::infinite_inertia();
    if (text == "proportional")
        return AlphaStrategy::proportional_inertia();
    if (text.rfind("fixed:", 0) == 0)
        return AlphaStrategy::fixed(parse_number_suffix(text, 5, "inertia weight"));
    throw ParseError("unknown inertia strategy: " + text);
}

BetaStrategy parse_beta(const std::string& text, const FrameOfDiscernment& frame) {
    if (text == "receptive")
        return BetaStrategy::receptive();
    if (text == "cautious")
        return BetaStrategy::cautious();
    if (text.rfind("explicit:", 0) == 0)
        return BetaStrategy::explicit_weights_of(load_explicit_weights(text.substr(9), frame));
    throw ParseError("unknown event-weight strategy: " + text);
}

DegenerateEventPolicy parse_policy(const std::string& text) {
    if (text == "skip")
        return DegenerateEventPolicy::SkipAndRenormalize;
    if (text == "error")
        return DegenerateEventPolicy::Error;
    throw ParseError("unknown degenerate-event policy: " + text);
}

UpdateRule parse_rule(const std::string& text) {
    if (text == "gcu")
        return UpdateRule::Gcu;
    if (text == "cue")
        return UpdateRule::Cue;
    if (text == "bayes")
        return UpdateRule::BayesBaseline;
    throw ParseError("unknown update rule: " + text);
}

MassFunction parse_prior(const std::string& text, const FrameOfDiscernment& frame) {
    if (text == "vacuous")
        return init_prior(PriorSpec::vacuous(), frame);
    if (text == "uniform")
        return init_prior(PriorSpec::uniform(), frame);
    if (text.rfind("dirichlet:", 0) == 0)
        return init_prior(PriorSpec::dirichlet(parse_number_suffix(text, 9, "ignorance share")),
                          frame);
    return load_boe_file(text, frame);
}

BetaWeights load_explicit_weights(const std::string& path, const FrameOfDiscernment& frame) {
    auto in = open_for_read(path);
    const nlohmann::json doc = parse_json_text(in, path);
    if (!doc.is_array())
        throw ParseError(path + ": weight table must be a JSON array");
    BetaWeights weights;
    for (const auto& entry : doc) {
        if (!entry.is_object())
            throw ParseError(path + ": weight entries must be objects");
        const Proposition p = frame.proposition(string_list(need(entry, "set"), "\"set\""));
        const double w = number(need(entry, "weight"), "\"weight\"");
        if (!weights.emplace(p.bits(), w).second)
            throw ConstraintViolation("duplicate event {" + label_text(p, frame) +
                                      "} in weight table");
    }
    return weights;
}

std::vector<RuleConfig> load_rule_configs(const std::string& path,
                                          const FrameOfDiscernment& frame) {
    auto in = open_for_read(path);
    const nlohmann::json doc = parse_json_text(in, path);
    if (!doc.is_object())
        throw ParseError(path + ": config document must be a JSON object");
    const nlohmann::json& list = need(doc, "configs");
    if (!list.is_array())
        throw ParseError(path + ": \"configs\" must be an array");
    std::vector<RuleConfig> configs;
    for (const auto& entry : list) {
        if (!entry.is_object())
            throw ParseError(path + ": config entries must be objects");
        RuleConfig c;
        c.rule = parse_rule(need(entry, "rule").get<std::string>());
        if (entry.contains("alpha"))
            c.alpha = parse_alpha(entry["alpha"].get<std::string>());
        if (entry.contains("beta"))
            c.beta = parse_beta(entry["beta"].get<std::string>(), frame);
        if (entry.contains("policy"))
            c.policy = parse_policy(entry["policy"].get<std::string>());
        if (entry.contains("name"))
            c.name = entry["name"].get<std::string>();
        configs.push_back(std::move(c));
    }
    return configs;
}

// --- Evidence streams (JSON Lines) ---

std::vector<StreamRecord> load_stream(std::istream& in,
                                      const std::optional<FrameOfDiscernment>& expected_frame) {
    std::vector<StreamRecord> records;
    std::optional<FrameOfDiscernment> frame = expected_frame;
    std::string line;
    int line_no = 0;
    long long last_k = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false, true);
        if (doc.is_discarded())
            throw ParseError("not valid JSON", line_no);
        try {
            if (!doc.is_object())
                throw ParseError("stream records must be JSON objects");
            const nlohmann::json& k_node = need(doc, "k");
            if (!k_node.is_number_integer())
                throw ParseError("\"k\" must be an integer");
            StreamRecord record;
            record.k = k_node.get<long long>();
            if (record.k < 0)
                throw NonMonotoneIndex("step index must be non-negative, got " +
                                       std::to_string(record.k));
            if (record.k <= last_k)
                throw NonMonotoneIndex("step index " + std::to_string(record.k) +
                                       " does not increase past " + std::to_string(last_k));
            record.incoming = json_to_boe(need(doc, "boe"), frame);
            if (!frame)
                frame = record.incoming.frame();
            if (doc.contains("alpha"))
                record.alpha_override = parse_alpha(doc["alpha"].get<std::string>());
            if (doc.contains("beta"))
                record.beta_override = parse_beta(doc["beta"].get<std::string>(), *frame);
            last_k = record.k;
            records.push_back(std::move(record));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return records;
}

std::vector<StreamRecord> load_stream_file(const std::string& path,
                                           const std::optional<FrameOfDiscernment>& expected_frame) {
    auto in = open_for_read(path);
    return load_stream(in, expected_frame);
}

// --- Trajectory CSV ---

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log) {
    const auto& frame = log.frame;
    out << "k,ignorance,core_size,skipped";
    for (int i = 0; i < frame.size(); ++i)
        out << ",betp_" << frame.label(i);
    for (int i = 0; i < frame.size(); ++i)
        out << ",bl_" << frame.label(i) << ",pl_" << frame.label(i);
    out << '\n';
    for (const TrajectorySample& s : log.samples) {
        out << s.k << ',' << format_double(s.ignorance) << ',' << s.core_size << ','
            << s.skipped_events;
        for (double v : s.pignistic_values)
            out << ',' << format_double(v);
        for (int i = 0; i < frame.size(); ++i)
            out << ',' << format_double(s.bl_singletons[i]) << ','
                << format_double(s.pl_singletons[i]);
        out << '\n';
    }
}

void save_trajectory_csv(const std::string& path, const TrajectoryLog& log) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    write_trajectory_csv(out, log);
}

// --- Resumable pipeline state ---

nlohmann::json state_to_json(const StreamState& state) {
    const auto& frame = state.boe.frame();
    nlohmann::json doc;
    doc["version"] = 1;
    doc["k"] = state.k;
    doc["frame"] = nlohmann::json::array();
    for (int i = 0; i < frame.size(); ++i)
        doc["frame"].push_back(frame.label(i));
    doc["focal"] = nlohmann::json::array();
    for (const auto& [bits, mass] : state.boe.masses())
        doc["focal"].push_back(nlohmann::json::array({bits, mass}));
    return doc;
}

StreamState json_to_state(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw ParseError("state document must be a JSON object");
    const nlohmann::json& version = need(doc, "version");
    if (!version.is_number_integer() || version.get<int>() != 1)
        throw ParseError("unsupported state version");
    const nlohmann::json& k_node = need(doc, "k");
    if (!k_node.is_number_integer())
        throw ParseError("\"k\" must be an integer");
    FrameOfDiscernment frame =
        FrameOfDiscernment::create(string_list(need(doc, "frame"), "\"frame\""));
    const nlohmann::json& focal = need(doc, "focal");
    if (!focal.is_array())
        throw ParseError("\"focal\" must be an array");
    std::map<std::uint32_t, double> masses;
    for (const auto& entry : focal) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() ||
            !entry[1].is_number())
            throw ParseError("focal entries must be [bits, mass] pairs");
        const std::uint32_t bits = entry[0].get<std::uint32_t>();
        if (bits >= static_cast<std::uint32_t>(frame.subset_count()))
            throw FrameMismatch("bit pattern " + std::to_string(bits) +
                                " does not fit the frame");
        if (!masses.emplace(bits, entry[1].get<double>()).second)
            throw InvalidBpa("duplicate focal set in state document");
    }
    StreamState state;
    state.k = k_node.get<long long>();
    state.boe = MassFunction::create(frame, masses);
    return state;
}

void save_state_file(const std::string& path, const StreamState& state) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << state_to_json(state).dump() << '\n';
}

StreamState load_state_file(const std::string& path) {
    auto in = open_for_read(path);
    return json_to_state(parse_json_text(in, path));
}

// --- Comparison report ---

nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json doc;
    doc["frame"] = nlohmann::json::array();
    for (int i = 0; i < report.frame.size(); ++i)
        doc["frame"].push_back(report.frame.label(i));
    doc["configs"] = report.config_names;
    doc["steps"] = nlohmann::json::array();
    for (const StepDivergence& d : report.divergences) {
        nlohmann::json step;
        step["k"] = d.k;
        step["pignistic_divergence"] = d.pignistic;
        step["mass_divergence"] = d.mass;
        doc["steps"].push_back(std::move(step));
    }
    doc["max_pignistic_divergence"] = report.max_pignistic_divergence;
    doc["max_mass_divergence"] = report.max_mass_divergence;
    doc["final"] = nlohmann::json::array();
    for (const TrajectoryLog& log : report.trajectories)
        doc["final"].push_back(boe_to_json(log.final_state));
    return doc;
}

} // namespace evistream
