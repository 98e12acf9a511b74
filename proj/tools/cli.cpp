#include "cli.hpp"

#include "zsum/constants.hpp"
#include "zsum/inverse.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace zsum::cli {

namespace {

using nlohmann::json;

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string group;
    unsigned long long budget = 0;
    bool budget_given = false;
    int workers = 1;
    std::string output;
    Format format = Format::Json;
    bool no_timing = false;
    bool no_prune = false;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

Group parse_group(const std::string& text)
{
    try {
        return Group::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

unsigned long long effective_budget(const RunConfig& config)
{
    if (config.budget_given)
        return config.budget;
    if (const char* env = std::getenv("ZEROSUM_BUDGET"); env != nullptr && *env != '\0') {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("ZEROSUM_BUDGET is not a non-negative integer");
        }
    }
    return kDefaultNodeBudget;
}

SearchOptions search_options(const RunConfig& config, std::ostream& err)
{
    SearchOptions options;
    options.workers = config.workers;
    options.node_budget = effective_budget(config);
    options.symmetry = config.no_prune ? Symmetry::None : Symmetry::Auto;
    options.progress = [&err](const SearchProgress& p) {
        err << "progress: nodes=" << p.nodes << " depth=" << p.best_depth << '\n';
    };
    return options;
}

std::string csv_quote(const std::string& text)
{
    return '"' + text + '"';
}

std::string element_text(Element g)
{
    return to_string(g);
}

// ---- constants ------------------------------------------------------------

int cmd_constants(const RunConfig& config, const std::string& which, std::ostream& out, std::ostream& err)
{
    const Group group = parse_group(config.group);
    if (group.exponent() > kMaxExponent)
        throw UsageError("exponent exceeds " + std::to_string(kMaxExponent));
    std::vector<Criterion> criteria;
    if (which == "all") {
        criteria.assign(std::begin(kAllCriteria), std::end(kAllCriteria));
    } else if (auto c = parse_criterion(which)) {
        criteria.push_back(*c);
    } else {
        throw UsageError("unknown constant '" + which + "' (expected all|D|eta|s|s_exp_mult)");
    }

    const SearchOptions options = search_options(config, err);
    if (config.format == Format::Csv)
        out << "group,criterion,computed,formula,nodes,ms,complete,example\n";
    bool mismatch = false;
    bool exhausted = false;
    for (Criterion c : criteria) {
        const SearchReport report = longest_lacking(group, c, options);
        exhausted = exhausted || !report.complete;
        mismatch = mismatch || (report.complete && report.computed_constant != report.formula_constant);
        const std::string example = report.extremal_examples.empty() ? "" : report.extremal_examples.front().to_string();
        switch (config.format) {
        case Format::Json: {
            json j = report;
            if (config.no_timing)
                j.erase("ms");
            out << j.dump() << '\n';
            break;
        }
        case Format::Csv:
            out << csv_quote(group.to_string()) << ',' << criterion_name(c) << ',' << report.computed_constant << ','
                << report.formula_constant << ',' << report.nodes_visited << ','
                << (config.no_timing ? 0.0 : report.elapsed_ms) << ',' << report.complete << ','
                << csv_quote(example) << '\n';
            break;
        case Format::Text:
            out << criterion_name(c) << "(" << group.to_string() << ") = " << report.computed_constant
                << " (formula " << report.formula_constant << ")" << (report.complete ? "" : " INCOMPLETE")
                << "  e.g. " << example << '\n';
            break;
        }
    }
    if (exhausted)
        return kExitBudget;
    return mismatch ? kExitCounterexample : kExitOk;
}

// ---- extremal -------------------------------------------------------------

ExtremalKind parse_kind(const std::string& kind)
{
    if (kind == "eta")
        return ExtremalKind::Eta;
    if (kind == "s")
        return ExtremalKind::S;
    throw UsageError("unknown kind '" + kind + "' (expected eta|s)");
}

json matches_json(const std::vector<ClassifyMatch>& matches)
{
    json arr = json::array();
    for (const auto& match : matches)
        arr.push_back(match);
    return arr;
}

std::string match_csv(const ClassifyMatch& match)
{
    const ExtremalForm& f = match.form;
    std::ostringstream row;
    row << form_name(f.tag) << ',' << csv_quote(element_text(f.first)) << ',' << csv_quote(element_text(f.second))
        << ',';
    if (f.uses_basis())
        row << f.x << ',' << f.s;
    else
        row << ',';
    row << ',';
    if (f.tag == FormTag::SA)
        row << f.t;
    row << ',';
    if (f.uses_shift())
        row << csv_quote(element_text(f.g));
    return row.str();
}

std::string match_text(const Group& group, const ClassifyMatch& match)
{
    const ExtremalForm& f = match.form;
    std::ostringstream text;
    text << form_name(f.tag) << " " << (f.uses_basis() ? "e1=" : "g1=") << element_text(f.first)
         << (f.uses_basis() ? " e2=" : " g2=") << element_text(f.second);
    if (f.uses_basis())
        text << " x=" << f.x << " s=" << f.s;
    if (f.tag == FormTag::SA)
        text << " t=" << f.t;
    if (f.uses_shift())
        text << " g=" << element_text(f.g);
    if (f.uses_basis() && match.x_at_most_half_m)
        text << " (x <= " << group.m() << "/2)";
    return text.str();
}

int cmd_extremal(const RunConfig& config, const std::string& kind_text, bool up_to_aut, bool with_classify,
                 std::ostream& out, std::ostream& err)
{
    const Group group = parse_group(config.group);
    if (group.rank() != 2)
        throw UsageError("extremal requires a group of rank 2");
    const ExtremalKind kind = parse_kind(kind_text);
    const Enumeration found = enumerate_extremal(group, kind, up_to_aut, search_options(config, err));
    std::optional<Classifier> classifier;
    if (with_classify)
        classifier.emplace(group);

    if (config.format == Format::Csv)
        out << (with_classify ? "sequence,matches\n" : "sequence\n");
    std::size_t unclassified = 0;
    for (const Sequence& seq : found.sequences) {
        std::vector<ClassifyMatch> matches;
        if (classifier) {
            matches = classifier->classify(seq);
            if (matches.empty())
                ++unclassified;
        }
        switch (config.format) {
        case Format::Json: {
            json j{{"sequence", seq}, {"text", seq.to_string()}};
            if (classifier)
                j["matches"] = matches_json(matches);
            out << j.dump() << '\n';
            break;
        }
        case Format::Csv:
            out << csv_quote(seq.to_string());
            if (classifier)
                out << ',' << matches.size();
            out << '\n';
            break;
        case Format::Text:
            out << seq.to_string();
            if (classifier)
                out << "  [" << matches.size() << " matches]";
            out << '\n';
            break;
        }
    }
    err << "extremal: " << found.sequences.size() << " sequences, " << found.orbits << " orbits, " << found.nodes
        << " nodes" << (found.complete ? "" : ", INCOMPLETE") << '\n';
    if (!found.complete)
        return kExitBudget;
    return unclassified > 0 ? kExitCounterexample : kExitOk;
}

// ---- check ----------------------------------------------------------------

json sequences_json(const std::vector<Sequence>& seqs)
{
    json arr = json::array();
    for (const auto& s : seqs)
        arr.push_back(s);
    return arr;
}

int emit_check(const RunConfig& config, const json& record, CheckStatus status, std::ostream& out)
{
    switch (config.format) {
    case Format::Json:
        out << record.dump() << '\n';
        break;
    case Format::Csv:
        out << "target,parameter,status,instances\n"
            << record["target"].get<std::string>() << ',' << record["parameter"].get<int>() << ','
            << status_name(status) << ',' << record.value("instances", 0) << '\n';
        break;
    case Format::Text:
        out << record["target"].get<std::string>() << " at " << record["parameter"].get<int>() << ": "
            << status_name(status) << '\n';
        for (const auto& [key, value] : record.items())
            if (key != "target" && key != "parameter" && key != "status")
                out << "  " << key << ": " << value.dump() << '\n';
        break;
    }
    return exit_code(status);
}

int cmd_check(const RunConfig& config, const std::string& target, std::optional<int> m, std::optional<int> n,
              std::ostream& out, std::ostream& err)
{
    const SearchOptions options = search_options(config, err);
    auto need = [&](const std::optional<int>& value, const char* flag, int minimum) {
        if (!value)
            throw UsageError(target + " requires " + flag);
        if (*value < minimum)
            throw UsageError(std::string(flag) + " must be >= " + std::to_string(minimum));
        return *value;
    };
    auto guard_size = [](int m_value) {
        if (m_value > 16)
            throw UsageError("m too large for exhaustive verification");
    };

    if (target == "property-C" || target == "property-D") {
        const int mv = need(m, "--m", 2);
        guard_size(mv);
        const PropertyName which = target == "property-C" ? PropertyName::C : PropertyName::D;
        const PropertyReport report = check_property(mv, which, options);
        const json record{{"target", target},       {"parameter", mv},
                          {"status", status_name(report.status)},
                          {"orbits", report.orbits}, {"nodes", report.nodes},
                          {"instances", report.orbits},
                          {"counterexamples", sequences_json(report.counterexamples)}};
        return emit_check(config, record, report.status, out);
    }

    LemmaName lemma;
    int parameter;
    if (target == "noshort") {
        lemma = LemmaName::NoShort;
        parameter = need(m, "--m", 2);
        guard_size(parameter);
    } else if (target == "two-m") {
        lemma = LemmaName::TwoM;
        parameter = need(m, "--m", 2);
        guard_size(parameter);
    } else if (target == "invcyc") {
        lemma = LemmaName::InvCyc;
        parameter = need(n, "--n", 1);
        if (parameter > kMaxExponent)
            throw UsageError("--n exceeds " + std::to_string(kMaxExponent));
    } else {
        throw UsageError("unknown check target '" + target + "'");
    }
    const LemmaReport report = verify_lemma(lemma, parameter, options);
    json record{{"target", target},
                {"parameter", parameter},
                {"status", status_name(report.status)},
                {"instances", report.instances},
                {"failures", sequences_json(report.failures)}};
    if (lemma == LemmaName::NoShort)
        record["x_values"] = std::vector<int>(report.x_values.begin(), report.x_values.end());
    if (lemma == LemmaName::InvCyc) {
        record["any_extremals"] = report.any_extremals;
        record["exact_extremals"] = report.exact_extremals;
    }
    return emit_check(config, record, report.status, out);
}

// ---- reproduce ------------------------------------------------------------

int cmd_reproduce(const RunConfig& config, const std::string& figure, int m, int n, std::ostream& out)
{
    if (figure != "exp-1")
        throw UsageError("unknown figure '" + figure + "' (expected exp-1)");
    if (m < 2 || n < 3)
        throw UsageError("exp-1 requires --m >= 2 and --n >= 3");
    if (static_cast<long>(m) * n > kMaxExponent)
        throw UsageError("exponent m*n exceeds " + std::to_string(kMaxExponent));
    const ExpMinusOneReport report = reproduce_exp_minus_1(m, n);
    const Group& group = report.group;
    switch (config.format) {
    case Format::Json: {
        const json record{{"figure", figure},
                          {"group", {group.n1(), group.n2()}},
                          {"sequence", report.sequence},
                          {"text", report.sequence.to_string()},
                          {"length", report.sequence.length()},
                          {"s_minus_1", formula_value(group, Criterion::ExactExp) - 1},
                          {"length_is_s_minus_1", report.length_is_s_minus_1},
                          {"lacks_exact_exp", report.lacks_exact_exp},
                          {"max_multiplicity", report.max_multiplicity},
                          {"exp_minus_1", group.exponent() - 1},
                          {"max_multiplicity_below_exp_minus_1", report.multiplicities_below_exp_minus_1},
                          {"holds", report.holds()}};
        out << record.dump() << '\n';
        break;
    }
    case Format::Csv:
        out << "group,sequence,length,lacks_exact_exp,max_multiplicity,exp_minus_1,holds\n"
            << csv_quote(group.to_string()) << ',' << csv_quote(report.sequence.to_string()) << ','
            << report.sequence.length() << ',' << report.lacks_exact_exp << ',' << report.max_multiplicity << ','
            << group.exponent() - 1 << ',' << report.holds() << '\n';
        break;
    case Format::Text:
        out << "G = C_" << group.n1() << " + C_" << group.n2() << "\nS = " << report.sequence.to_string()
            << "\n|S| = " << report.sequence.length() << " (s(G)-1 = " << formula_value(group, Criterion::ExactExp) - 1
            << ")\nno zero-sum subsequence of length exp(G): " << (report.lacks_exact_exp ? "yes" : "no")
            << "\nmax multiplicity " << report.max_multiplicity << " < exp(G)-1 = " << group.exponent() - 1 << ": "
            << (report.multiplicities_below_exp_minus_1 ? "yes" : "no") << '\n';
        break;
    }
    return report.holds() ? kExitOk : kExitCounterexample;
}

// ---- classify -------------------------------------------------------------

int cmd_classify(const RunConfig& config, const std::string& seq_text, std::ostream& out)
{
    const Group group = parse_group(config.group);
    if (group.rank() != 2)
        throw UsageError("classify requires a group of rank 2");
    Sequence seq(group);
    try {
        seq = parse_sequence(group, seq_text);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    std::vector<ClassifyMatch> matches;
    try {
        matches = Classifier(group).classify(seq);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    switch (config.format) {
    case Format::Json:
        out << json{{"sequence", seq}, {"text", seq.to_string()}, {"matches", matches_json(matches)}}.dump() << '\n';
        break;
    case Format::Csv:
        out << "form,e1,e2,x,s,t,g\n";
        for (const auto& match : matches)
            out << match_csv(match) << '\n';
        break;
    case Format::Text:
        if (matches.empty())
            out << "no extremal form matches " << seq.to_string() << '\n';
        for (const auto& match : matches)
            out << match_text(group, match) << '\n';
        break;
    }
    return matches.empty() ? kExitCounterexample : kExitOk;
}

void add_common(CLI::App* sub, RunConfig& config, bool with_group)
{
    if (with_group)
        sub->add_option("--group", config.group, "group as \"m,mn\" or \"n\" for cyclic")->required();
    sub->add_option("--format", config.format, "output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{
            {"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}}));
    sub->add_option("--output,-o", config.output, "write data to this file instead of stdout");
    sub->add_option("--workers,-j", config.workers, "parallel search workers")->check(CLI::PositiveNumber);
    sub->add_option_function<unsigned long long>(
        "--budget",
        [&config](unsigned long long value) {
            config.budget = value;
            config.budget_given = true;
        },
        "node budget (0 = unlimited; default from ZEROSUM_BUDGET)");
    sub->add_flag("--no-timing", config.no_timing, "omit wall-clock fields for byte-stable output");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zero-sum constants and extremal sequences for abelian groups of rank <= 2", "zerosum"};
    app.require_subcommand(1);
    RunConfig config;

    std::string which = "all";
    auto* constants = app.add_subcommand("constants", "compute D, eta, s, s_exp_mult by exhaustive search");
    add_common(constants, config, true);
    constants->add_option("--which", which, "all|D|eta|s|s_exp_mult");
    constants->add_flag("--no-prune", config.no_prune, "disable automorphism pruning");

    std::string kind;
    bool up_to_aut = false;
    bool with_classify = false;
    auto* extremal = app.add_subcommand("extremal", "enumerate extremal sequences for eta or s");
    add_common(extremal, config, true);
    extremal->add_option("--kind", kind, "eta|s")->required();
    extremal->add_flag("--up-to-aut", up_to_aut, "one representative per automorphism orbit");
    extremal->add_flag("--classify", with_classify, "attach the matching extremal forms");

    std::string target;
    std::optional<int> m_opt;
    std::optional<int> n_opt;
    auto* check = app.add_subcommand("check", "verify a structural property or lemma exhaustively");
    add_common(check, config, false);
    check->add_option("target", target, "property-C|property-D|noshort|two-m|invcyc")->required();
    check->add_option("--m", m_opt, "m for C_m + C_m");
    check->add_option("--n", n_opt, "n for the cyclic group C_n");

    std::string figure;
    int rep_m = 0;
    int rep_n = 0;
    auto* reproduce = app.add_subcommand("reproduce", "reproduce a published construction");
    add_common(reproduce, config, false);
    reproduce->add_option("figure", figure, "exp-1")->required();
    reproduce->add_option("--m", rep_m, "m")->required();
    reproduce->add_option("--n", rep_n, "n")->required();

    std::string seq_text;
    auto* classify_cmd = app.add_subcommand("classify", "match a sequence against the extremal forms");
    add_common(classify_cmd, config, true);
    classify_cmd->add_option("--seq", seq_text, "sequence text, e.g. \"(1,0) (0,1) (1,1)^3\"")->required();

    std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream* data = &out;
    if (!config.output.empty()) {
        file.open(config.output);
        if (!file) {
            err << "error: cannot open " << config.output << '\n';
            return kExitUsage;
        }
        data = &file;
    }

    try {
        if (constants->parsed())
            return cmd_constants(config, which, *data, err);
        if (extremal->parsed())
            return cmd_extremal(config, kind, up_to_aut, with_classify, *data, err);
        if (check->parsed())
            return cmd_check(config, target, m_opt, n_opt, *data, err);
        if (reproduce->parsed())
            return cmd_reproduce(config, figure, rep_m, rep_n, *data);
        if (classify_cmd->parsed())
            return cmd_classify(config, seq_text, *data);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace zsum::cli
