#include "tricolor/cli.hpp"

#include "tricolor/algebra.hpp"
#include "tricolor/analyzer.hpp"
#include "tricolor/dot.hpp"
#include "tricolor/generator.hpp"
#include "tricolor/partition.hpp"
#include "tricolor/planner.hpp"
#include "tricolor/strategy.hpp"
#include "tricolor/tdag_text.hpp"
#include "tricolor/transfer.hpp"
#include "tricolor/well_formed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>

namespace tricolor
{

namespace
{

using Json = nlohmann::ordered_json;

/// Raised for domain failures that should end the command with exit code 1.
class DomainFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultTransferBudget = 4;

struct Common
{
    std::string format = "text";

    bool json() const { return format == "json"; }
};

void add_format(CLI::App& cmd, Common& common)
{
    cmd.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

Json tdag_json(const Tdag& t)
{
    Json nodes = Json::array();
    for (const Node& n : t.nodes())
    {
        Json node{{"name", t.display_name(n.id)}, {"color", to_string(n.color)}};
        if (n.label)
            node["label"] = *n.label;
        nodes.push_back(std::move(node));
    }
    Json arcs = Json::array();
    for (const Arc& a : t.arcs())
    {
        arcs.push_back({{"from", t.display_name(a.from)},
                        {"feature", a.feature},
                        {"to", t.display_name(a.to)},
                        {"color", to_string(a.color)}});
    }
    return {{"root", t.display_name(t.root())}, {"nodes", nodes}, {"arcs", arcs}};
}

Json constraint_json(const Constraint& c)
{
    Json payload = c.kind == ConstraintKind::Reentrancy ? Json(path_to_string(c.other)) : Json(c.value);
    return {{"kind", to_string(c.kind)},
            {"anchor", path_to_string(c.anchor)},
            {"payload", payload},
            {"strength", to_string(c.strength)}};
}

Json report_json(const PartitionReport& r)
{
    auto set = [](const std::vector<Constraint>& cs) {
        Json out = Json::array();
        for (const Constraint& c : cs)
            out.push_back(constraint_json(c));
        return out;
    };
    return {{"c0", set(r.c0)},
            {"c_plus", set(r.c_plus)},
            {"c_minus", set(r.c_minus)},
            {"c_new", set(r.c_new)},
            {"verdict", to_string(r.verdict)}};
}

std::string report_text(const PartitionReport& r)
{
    std::string out;
    auto set = [&out](std::string_view title, const std::vector<Constraint>& cs) {
        out += std::string(title) + " (" + std::to_string(cs.size()) + ")\n";
        for (const Constraint& c : cs)
            out += "  " + to_string(c) + "\n";
    };
    set("C0", r.c0);
    set("C+", r.c_plus);
    set("C-", r.c_minus);
    set("Cnew", r.c_new);
    out += "verdict: " + std::string(to_string(r.verdict)) + "\n";
    return out;
}

Json coverage_json(const Tdag& t, const GenReport& r)
{
    Json nodes = Json::object();
    for (const Node& n : t.nodes())
        nodes[t.display_name(n.id)] = to_string(r.node_coverage[n.id.value]);
    Json arcs = Json::object();
    for (const Arc& a : t.arcs())
        arcs[t.display_name(a.id)] = to_string(r.arc_coverage[a.id.value]);
    return {{"nodes", nodes}, {"arcs", arcs}};
}

std::string coverage_text(const Tdag& t, const GenReport& r)
{
    std::string out = "coverage:\n";
    for (const Node& n : t.nodes())
        out += "  node " + t.display_name(n.id) + " " + std::string(to_string(r.node_coverage[n.id.value])) + "\n";
    for (const Arc& a : t.arcs())
        out += "  arc " + t.display_name(a.id) + " " + std::string(to_string(r.arc_coverage[a.id.value])) + "\n";
    return out;
}

/// Depth budget: flag, else TRICOLOR_DEPTH, else the library default.
std::size_t depth_budget(const std::optional<std::size_t>& flag)
{
    if (flag)
        return *flag;
    if (const char* env = std::getenv("TRICOLOR_DEPTH"))
    {
        std::string_view text(env);
        std::size_t value = 0;
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size() || value == 0)
            throw CLI::ValidationError("TRICOLOR_DEPTH", "must be a positive integer, got '" + std::string(text) + "'");
        return value;
    }
    return kDefaultDepth;
}

StrategyTable strategies_from(const std::string& path)
{
    if (path.empty())
        return default_strategies();
    try
    {
        return parse_strategies(read_file(path));
    }
    catch (const ParseError& e)
    {
        throw ParseError(e.line(), path + ": " + e.message());
    }
}

std::string unify_failure(const UnifyOutcome& outcome)
{
    if (const auto* i = std::get_if<Indefinite>(&outcome))
    {
        return "indefinite: green atoms " + i->first_atom + " and " + i->second_atom + " disagree at " +
               path_to_string(i->path);
    }
    const auto& f = std::get<Failure>(outcome);
    return "failure: " + f.reason + " at " + path_to_string(f.path);
}

int cmd_check(const std::string& path, const Common& c, std::ostream& out)
{
    const Tdag t = parse_tdag(read_file(path), FeaturePolicy::AllowDuplicates);
    const auto violations = check_well_formed(t);
    if (c.json())
    {
        Json list = Json::array();
        for (const Violation& v : violations)
        {
            list.push_back({{"condition", to_string(v.condition)},
                            {"element", t.display_name(v.element)},
                            {"message", v.message}});
        }
        out << Json{{"well_formed", violations.empty()}, {"violations", list}}.dump(2) << '\n';
    }
    else if (violations.empty())
    {
        out << "well-formed\n";
    }
    else
    {
        for (const Violation& v : violations)
            out << to_string(v.condition) << ": " << v.message << '\n';
    }
    return violations.empty() ? kExitOk : kExitDomainFailure;
}

int cmd_unify(const std::string& a, const std::string& b, const Common& c, std::ostream& out)
{
    const UnifyOutcome outcome = unify(load_tdag(a), load_tdag(b));
    if (const auto* u = std::get_if<Unified>(&outcome))
    {
        if (c.json())
            out << Json{{"outcome", "unified"}, {"tdag", tdag_json(u->result)}}.dump(2) << '\n';
        else
            out << serialize_tdag(u->result);
        return kExitOk;
    }
    if (c.json())
    {
        Json report;
        if (const auto* i = std::get_if<Indefinite>(&outcome))
        {
            report = {{"outcome", "indefinite"},
                      {"atoms", {i->first_atom, i->second_atom}},
                      {"path", path_to_string(i->path)}};
        }
        else
        {
            const auto& f = std::get<Failure>(outcome);
            report = {{"outcome", "failure"}, {"reason", f.reason}, {"path", path_to_string(f.path)}};
        }
        out << report.dump(2) << '\n';
    }
    else
    {
        out << unify_failure(outcome) << '\n';
    }
    return kExitDomainFailure;
}

int cmd_subsume(const std::string& a, const std::string& b, const Common& c, std::ostream& out)
{
    const bool result = subsumes(load_tdag(a), load_tdag(b));
    if (c.json())
        out << Json{{"subsumes", result}}.dump(2) << '\n';
    else
        out << (result ? "subsumes" : "does not subsume") << '\n';
    return kExitOk;
}

struct TransferArgs
{
    std::string tdag;
    std::string replay;
    std::string grammar;
    std::string strategies;
    std::size_t budget = kDefaultTransferBudget;
    std::optional<std::size_t> depth;
};

void print_trace(const TransferTrace& trace, const Common& c, std::ostream& out)
{
    if (c.json())
    {
        Json ops = Json::array();
        const Tdag* before = &trace.initial;
        for (const TransferStep& s : trace.steps)
        {
            ops.push_back(format_op(*before, s.op));
            before = &s.result;
        }
        out << Json{{"ops", ops}, {"result", tdag_json(trace.final_tdag())}}.dump(2) << '\n';
    }
    else
    {
        out << format_trace(trace);
    }
}

int cmd_transfer(const TransferArgs& args, const Common& c, std::ostream& out)
{
    const Tdag t = load_tdag(args.tdag);
    if (!args.replay.empty())
    {
        const TransferTrace trace = [&] {
            try
            {
                return replay_trace(t, read_file(args.replay));
            }
            catch (const ParseError& e)
            {
                throw ParseError(e.line(), args.replay + ": " + e.message());
            }
        }();
        if (c.json())
            out << Json{{"result", tdag_json(trace.final_tdag())}}.dump(2) << '\n';
        else
            out << serialize_tdag(trace.final_tdag());
        return kExitOk;
    }

    const StrategyTable strategies = strategies_from(args.strategies);
    AcceptPredicate accept = [](const Tdag&) { return true; };
    std::optional<Grammar> grammar;
    if (!args.grammar.empty())
    {
        grammar = load_grammar(args.grammar);
        GenerateOptions options{depth_budget(args.depth)};
        accept = [&grammar, options](const Tdag& x) { return generate(x, *grammar, options).success(); };
    }
    const PlanResult plan = plan_transfer(t, accept, strategies, args.budget);
    if (const auto* e = std::get_if<Exhaustion>(&plan))
    {
        throw DomainFailure("transfer: no accepted TDAG within " + std::to_string(args.budget) + " ops (" +
                            std::to_string(e->states_explored) + " states explored)");
    }
    print_trace(std::get<TransferTrace>(plan), c, out);
    return kExitOk;
}

int cmd_classify(const std::string& source, const std::string& target, const Common& c, std::ostream& out)
{
    const PartitionReport report = classify(load_tdag(source), load_tdag(target));
    if (c.json())
        out << report_json(report).dump(2) << '\n';
    else
        out << report_text(report);
    return kExitOk;
}

int cmd_analyze(const std::string& sentence, const std::string& grammar_path, const Common& c, std::ostream& out)
{
    const Grammar grammar = load_grammar(grammar_path);
    const Analysis a = analyze(tokenize(sentence), grammar);
    if (c.json())
    {
        out << Json{{"tree", bracketed(a.tree, grammar)}, {"parses", a.parse_count}, {"tdag", tdag_json(a.tdag)}}.dump(2)
            << '\n';
    }
    else
    {
        out << "# tree: " << bracketed(a.tree, grammar) << '\n' << serialize_tdag(a.tdag);
    }
    return kExitOk;
}

int cmd_generate(const std::string& tdag_path, const std::string& grammar_path, std::optional<std::size_t> depth,
                 bool trace, const Common& c, std::ostream& out)
{
    const Tdag t = load_tdag(tdag_path);
    const Grammar grammar = load_grammar(grammar_path);
    const GenReport report = generate(t, grammar, GenerateOptions{depth_budget(depth)});
    if (c.json())
    {
        Json j{{"success", report.success()}};
        if (report.success())
        {
            j["surface"] = report.derivation->surface;
            j["tree"] = bracketed(report.derivation->tree, grammar);
            j["derived"] = tdag_json(report.derivation->derived);
        }
        else
        {
            j["failure"] = report.failure;
        }
        j["coverage"] = coverage_json(t, report);
        if (trace)
            j["trace"] = report.trace;
        out << j.dump(2) << '\n';
    }
    else if (report.success())
    {
        if (trace)
        {
            for (const std::string& line : report.trace)
                out << line << '\n';
        }
        out << report.derivation->surface << '\n';
        if (trace)
            out << coverage_text(t, report);
    }
    if (!report.success())
        throw DomainFailure("generation failed: " + report.failure);
    return kExitOk;
}

struct TranslateArgs
{
    std::string sentence;
    std::string src;
    std::string tgt;
    std::string strategies;
    std::size_t budget = kDefaultTransferBudget;
    std::optional<std::size_t> depth;
};

int cmd_translate(const TranslateArgs& args, const Common& c, std::ostream& out)
{
    const Grammar src = load_grammar(args.src);
    const Grammar tgt = load_grammar(args.tgt);
    const StrategyTable strategies = strategies_from(args.strategies);
    const GenerateOptions options{depth_budget(args.depth)};

    const Analysis analysis = analyze(tokenize(args.sentence), src);
    const PlanResult plan = plan_transfer(
        analysis.tdag, [&](const Tdag& x) { return generate(x, tgt, options).success(); }, strategies, args.budget);
    if (const auto* e = std::get_if<Exhaustion>(&plan))
    {
        const GenReport direct = generate(analysis.tdag, tgt, options);
        throw DomainFailure("translate: no transfer within " + std::to_string(args.budget) + " ops makes the sentence generable (" +
                            std::to_string(e->states_explored) + " states explored; untransferred: " + direct.failure + ")");
    }
    const TransferTrace& trace = std::get<TransferTrace>(plan);
    const GenReport generated = generate(trace.final_tdag(), tgt, options);
    const PartitionReport report = classify(analysis.tdag, generated.derivation->derived);

    if (c.json())
    {
        Json ops = Json::array();
        const Tdag* before = &trace.initial;
        for (const TransferStep& s : trace.steps)
        {
            ops.push_back(format_op(*before, s.op));
            before = &s.result;
        }
        out << Json{{"surface", generated.derivation->surface},
                    {"source_tree", bracketed(analysis.tree, src)},
                    {"target_tree", bracketed(generated.derivation->tree, tgt)},
                    {"transfer", ops},
                    {"partition", report_json(report)}}
                   .dump(2)
            << '\n';
    }
    else
    {
        out << generated.derivation->surface << '\n';
        out << "transfer:\n";
        const Tdag* before = &trace.initial;
        for (const TransferStep& s : trace.steps)
        {
            out << "  " << format_op(*before, s.op) << '\n';
            before = &s.result;
        }
        out << report_text(report);
    }
    return kExitOk;
}

int cmd_export_dot(const std::string& path, std::ostream& out)
{
    const Tdag t = load_tdag(path);
    if (!t.well_formed())
        throw DomainFailure("export-dot: '" + path + "' is not well-formed");
    out << export_dot(t);
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Tricolor DAG toolkit: check, combine, transfer and generate from TDAGs", "tricolor"};
    app.require_subcommand(1, 1);
    Common common;
    std::function<int()> action;

    std::string path_a;
    std::string path_b;
    auto* check = app.add_subcommand("check", "Report well-formedness violations of a TDAG");
    check->add_option("tdag", path_a, "TDAG file")->required();
    add_format(*check, common);
    check->callback([&] { action = [&] { return cmd_check(path_a, common, out); }; });

    auto* unify_cmd = app.add_subcommand("unify", "Unify two TDAGs at their roots");
    unify_cmd->add_option("a", path_a, "First TDAG file")->required();
    unify_cmd->add_option("b", path_b, "Second TDAG file")->required();
    add_format(*unify_cmd, common);
    unify_cmd->callback([&] { action = [&] { return cmd_unify(path_a, path_b, common, out); }; });

    auto* subsume_cmd = app.add_subcommand("subsume", "Test whether the first TDAG subsumes the second");
    subsume_cmd->add_option("general", path_a, "More general TDAG file")->required();
    subsume_cmd->add_option("specific", path_b, "More specific TDAG file")->required();
    add_format(*subsume_cmd, common);
    subsume_cmd->callback([&] { action = [&] { return cmd_subsume(path_a, path_b, common, out); }; });

    TransferArgs transfer_args;
    auto* transfer = app.add_subcommand("transfer", "Replay a transfer trace, or plan one");
    transfer->add_option("tdag", transfer_args.tdag, "Source TDAG file")->required();
    auto* replay = transfer->add_option("--replay", transfer_args.replay, "Trace file to replay");
    transfer->add_option("--grammar", transfer_args.grammar, "Accept once this grammar can generate")->excludes(replay);
    transfer->add_option("--strategies", transfer_args.strategies, "Strategy table file")->excludes(replay);
    transfer->add_option("--budget", transfer_args.budget, "Maximum number of ops")
        ->check(CLI::PositiveNumber)
        ->excludes(replay);
    transfer->add_option("--depth", transfer_args.depth, "Generation depth budget")->check(CLI::PositiveNumber);
    add_format(*transfer, common);
    transfer->callback([&] { action = [&] { return cmd_transfer(transfer_args, common, out); }; });

    auto* classify_cmd = app.add_subcommand("classify", "Partition source constraints against a target");
    classify_cmd->add_option("--source", path_a, "Source TDAG file")->required();
    classify_cmd->add_option("--target", path_b, "Target TDAG file")->required();
    add_format(*classify_cmd, common);
    classify_cmd->callback([&] { action = [&] { return cmd_classify(path_a, path_b, common, out); }; });

    std::string sentence;
    auto* analyze_cmd = app.add_subcommand("analyze", "Parse a sentence into a TDAG");
    analyze_cmd->add_option("--sentence", sentence, "Sentence to parse")->required();
    analyze_cmd->add_option("--grammar", path_a, "Grammar file")->required();
    add_format(*analyze_cmd, common);
    analyze_cmd->callback([&] { action = [&] { return cmd_analyze(sentence, path_a, common, out); }; });

    std::optional<std::size_t> depth;
    bool trace = false;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a sentence from a TDAG");
    generate_cmd->add_option("--tdag", path_a, "TDAG file")->required();
    generate_cmd->add_option("--grammar", path_b, "Grammar file")->required();
    generate_cmd->add_option("--depth", depth, "Derivation depth budget")->check(CLI::PositiveNumber);
    generate_cmd->add_flag("--trace", trace, "Print the call log and coverage");
    add_format(*generate_cmd, common);
    generate_cmd->callback(
        [&] { action = [&] { return cmd_generate(path_a, path_b, depth, trace, common, out); }; });

    TranslateArgs translate_args;
    auto* translate = app.add_subcommand("translate", "Analyze, transfer and generate");
    translate->add_option("--sentence", translate_args.sentence, "Source sentence")->required();
    translate->add_option("--src", translate_args.src, "Source grammar file")->required();
    translate->add_option("--tgt", translate_args.tgt, "Target grammar file")->required();
    translate->add_option("--strategies", translate_args.strategies, "Strategy table file");
    translate->add_option("--budget", translate_args.budget, "Maximum number of transfer ops")
        ->check(CLI::PositiveNumber);
    translate->add_option("--depth", translate_args.depth, "Derivation depth budget")->check(CLI::PositiveNumber);
    add_format(*translate, common);
    translate->callback([&] { action = [&] { return cmd_translate(translate_args, common, out); }; });

    auto* dot = app.add_subcommand("export-dot", "Render a TDAG as Graphviz DOT");
    dot->add_option("tdag", path_a, "TDAG file")->required();
    dot->callback([&] { action = [&] { return cmd_export_dot(path_a, out); }; });

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        return action();
    }
    catch (const CLI::CallForHelp& e)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const ParseError& e)
    {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const TransferError& e)
    {
        err << "transfer error: " << e.what() << '\n';
        return e.kind() == TransferError::Kind::Coordinate ? kExitUsage : kExitDomainFailure;
    }
    catch (const DomainFailure& e)
    {
        err << e.what() << '\n';
        return kExitDomainFailure;
    }
    catch (const AnalysisError& e)
    {
        err << "analysis failed: " << e.what() << '\n';
        return kExitDomainFailure;
    }
    catch (const InstantiationError& e)
    {
        err << "grammar error: " << e.what() << '\n';
        return kExitDomainFailure;
    }
    catch (const ContractError& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitDomainFailure;
    }
}

} // namespace tricolor
