#include "tricolor/generator.hpp"
#include "tricolor/feature_graph.hpp"

#include <algorithm>
#include <limits>

namespace tricolor
{

namespace
{

constexpr std::size_t kNoRecord = std::numeric_limits<std::size_t>::max();

const std::string& pred_feature()
{
    static const std::string pred(kPredFeature);
    return pred;
}

/// Injective map from the semantic part of a derivation graph into the input.
struct Mapping
{
    NodeId top;
    std::vector<std::optional<NodeId>> image;
    std::vector<std::optional<NodeId>> preimage;
    std::size_t size = 0;
};

enum class Injectivity
{
    /// Mid-search: later unifications may still merge two nodes that land
    /// on one input node, so sharing a target is not yet a failure.
    Deferred,
    Required,
};

/**
 * Maps the top feature structure onto the input root, its `pred` arc onto
 * the input's, and every arc below onto an input arc with the same feature.
 * Fails when an arc or atom has no counterpart, when one node would land on
 * two input nodes, or (if required) when two nodes land on one.
 */
std::optional<Mapping> map_semantics(const Tdag& d, const Tdag& t, Injectivity injectivity)
{
    Mapping m{*walk(d, d.root(), {std::string(kFsFeature)}), {}, {}, 0};
    m.image.resize(d.node_count());
    m.preimage.resize(t.node_count());
    std::vector<NodeId> queue;
    auto bind = [&](NodeId x, NodeId y) {
        if (m.image[x.value])
            return *m.image[x.value] == y;
        if (m.preimage[y.value] && injectivity == Injectivity::Required)
            return false;
        m.image[x.value] = y;
        m.preimage[y.value] = x;
        ++m.size;
        queue.push_back(x);
        return true;
    };
    bind(m.top, t.root());
    queue.clear();
    if (auto pred = d.find_arc(m.top, pred_feature()))
    {
        auto target = t.find_arc(t.root(), pred_feature());
        if (!target || !bind(d.arc(*pred).to, t.arc(*target).to))
            return std::nullopt;
    }
    for (std::size_t head = 0; head < queue.size(); ++head)
    {
        const NodeId x = queue[head];
        const NodeId y = *m.image[x.value];
        const Node& dx = d.node(x);
        if (dx.label && t.node(y).label != dx.label)
            return std::nullopt;
        for (ArcId id : d.out_arcs(x))
        {
            const Arc& a = d.arc(id);
            auto match = t.find_arc(y, a.feature);
            if (!match || !bind(a.to, t.arc(*match).to))
                return std::nullopt;
        }
    }
    return m;
}

/// The mapped part of `d`, laid out in input node order, all red.
Tdag derived_tdag(const Tdag& d, const Tdag& t, const Mapping& m)
{
    TdagBuilder builder;
    std::vector<NodeId> fresh(d.node_count());
    for (const Node& y : t.nodes())
    {
        if (auto x = m.preimage[y.id.value])
            fresh[x->value] = builder.add_node(Color::Red, d.node(*x).label, y.name);
    }
    for (const Node& y : t.nodes())
    {
        auto x = m.preimage[y.id.value];
        if (!x)
            continue;
        for (ArcId id : d.out_arcs(*x))
        {
            const Arc& a = d.arc(id);
            if (*x == m.top && a.feature != kPredFeature)
                continue;
            builder.add_arc(fresh[x->value], a.feature, fresh[a.to.value], Color::Red);
        }
    }
    return std::move(builder).build(fresh[m.top.value]);
}

/// Which input elements a derived TDAG covers, plus T2 problems met on the way.
struct Image
{
    std::vector<bool> nodes;
    std::vector<bool> arcs;
    std::vector<std::string> conflicts;
};

Image image_of(const Tdag& derived, const Tdag& t)
{
    Image out{std::vector<bool>(t.node_count()), std::vector<bool>(t.arc_count()), {}};
    std::vector<std::optional<NodeId>> phi(derived.node_count());
    phi[derived.root().value] = t.root();
    std::vector<NodeId> queue{derived.root()};
    for (std::size_t head = 0; head < queue.size(); ++head)
    {
        const NodeId x = queue[head];
        const NodeId y = *phi[x.value];
        const Node& gx = derived.node(x);
        if (gx.label && t.node(y).label != gx.label)
        {
            out.conflicts.push_back("derived atom " + *gx.label + " has no counterpart at '" + t.display_name(y) + "'");
            continue;
        }
        if (gx.label || !t.node(y).label)
            out.nodes[y.value] = true;
        for (ArcId id : derived.out_arcs(x))
        {
            const Arc& a = derived.arc(id);
            auto match = t.find_arc(y, a.feature);
            if (!match)
            {
                out.conflicts.push_back("derived arc '" + a.feature + "' from '" + t.display_name(y) +
                                        "' has no counterpart in the input");
                continue;
            }
            const NodeId target = t.arc(*match).to;
            if (phi[a.to.value] && *phi[a.to.value] != target)
            {
                out.conflicts.push_back("derived node reached through '" + t.display_name(*match) +
                                        "' stands for two input nodes");
                continue;
            }
            out.arcs[match->value] = true;
            if (!phi[a.to.value])
            {
                phi[a.to.value] = target;
                queue.push_back(a.to);
            }
        }
    }
    return out;
}

/// Root paths of every node along red arcs only.
std::vector<std::vector<Path>> red_paths(const Tdag& t)
{
    std::vector<std::vector<Path>> out(t.node_count());
    std::vector<std::pair<NodeId, Path>> stack{{t.root(), {}}};
    while (!stack.empty())
    {
        auto [n, p] = std::move(stack.back());
        stack.pop_back();
        for (ArcId id : t.out_arcs(n))
        {
            const Arc& a = t.arc(id);
            if (a.color != Color::Red)
                continue;
            Path next = p;
            next.push_back(a.feature);
            stack.push_back({a.to, next});
        }
        out[n.value].push_back(std::move(p));
    }
    for (auto& paths : out)
        std::sort(paths.begin(), paths.end());
    return out;
}

/// True when `p` and `q` end in the same feature from one shared node, so
/// their reentrancy follows from the one above it.
bool inherited_reentrancy(const Tdag& t, const Path& p, const Path& q)
{
    if (p.empty() || q.empty() || p.back() != q.back())
        return false;
    const auto up_p = walk(t, t.root(), Path(p.begin(), p.end() - 1));
    const auto up_q = walk(t, t.root(), Path(q.begin(), q.end() - 1));
    return up_p && up_q && *up_p == *up_q;
}

Coverage unmarked(Color c)
{
    switch (c)
    {
    case Color::Red:
        return Coverage::MissingRed;
    case Color::Yellow:
        return Coverage::LeftYellow;
    case Color::Green:
        return Coverage::LeftGreen;
    }
    return Coverage::MissingRed;
}

struct Record
{
    std::string symbol;
    std::size_t parent = kNoRecord;
    Path dpath;
    std::size_t rule = kNoRecord;
    std::vector<std::size_t> children;
    std::optional<NodeId> anchor;
    std::size_t image_at_expansion = 0;
};

struct Open
{
    std::size_t record;
    std::size_t depth;
};

struct State
{
    Tdag d;
    std::vector<Open> agenda;
    std::vector<Record> records;
};

DerivationTree tree_of(const std::vector<Record>& records, std::size_t r)
{
    DerivationTree tree{records[r].rule, {}};
    for (std::size_t c : records[r].children)
        tree.children.push_back(tree_of(records, c));
    return tree;
}

class Search
{
public:
    Search(const Tdag& t, const Grammar& g, const GenerateOptions& options, bool collect_all)
        : m_t(t)
        , m_g(g)
        , m_options(options)
        , m_collect_all(collect_all)
    {
        for (const Rule& r : g.rules)
        {
            UnifyOutcome graph = rule_graph(r);
            m_graphs.push_back(std::holds_alternative<Unified>(graph)
                                   ? std::optional<Tdag>(std::get<Unified>(graph).result)
                                   : std::nullopt);
        }
    }

    State initial() const
    {
        TdagBuilder builder;
        NodeId root = builder.add_node(Color::Red);
        builder.add_arc(root, std::string(kFsFeature), builder.add_node(Color::Red), Color::Red);
        return State{std::move(builder).build(root), {{0, 1}}, {Record{m_g.start, kNoRecord, {}, kNoRecord, {}, std::nullopt, 0}}};
    }

    /// Depth-first search with depth limit `limit`; true once a derivation succeeded.
    bool run(std::size_t limit)
    {
        m_limit = limit;
        m_cutoff = false;
        return dfs(initial());
    }

    bool cutoff() const noexcept { return m_cutoff; }
    std::vector<Derivation>& found() noexcept { return m_found; }
    const std::optional<State>& success_state() const noexcept { return m_success; }
    const std::string& first_problem() const noexcept { return m_first_problem; }

private:
    bool dfs(State s)
    {
        if (s.agenda.empty())
            return finish(s);
        const Open item = s.agenda.back();
        s.agenda.pop_back();
        if (item.depth > m_limit)
        {
            m_cutoff = true;
            return false;
        }

        Record& rec = s.records[item.record];
        const Mapping m = *map_semantics(s.d, m_t, Injectivity::Deferred);
        Path pred_path = rec.dpath;
        pred_path.emplace_back(kFsFeature);
        pred_path.push_back(pred_feature());
        std::optional<NodeId> anchor;
        if (auto at = walk(s.d, s.d.root(), pred_path))
            anchor = m.image[at->value];
        if (m_options.prune_loops)
        {
            for (std::size_t a = rec.parent; a != kNoRecord; a = s.records[a].parent)
            {
                const Record& up = s.records[a];
                if (up.symbol == rec.symbol && up.anchor == anchor && up.image_at_expansion == m.size)
                    return false;
            }
        }
        rec.anchor = anchor;
        rec.image_at_expansion = m.size;

        for (std::size_t r : m_g.rules_for(rec.symbol))
        {
            if (!m_graphs[r])
                continue;
            UnifyOutcome merged = unify(s.d, embed(*m_graphs[r], s.records[item.record].dpath));
            auto* u = std::get_if<Unified>(&merged);
            if (!u || !map_semantics(u->result, m_t, Injectivity::Deferred))
                continue;
            State next{std::move(u->result), s.agenda, s.records};
            next.records[item.record].rule = r;
            const Rule& rule = m_g.rules[r];
            std::vector<std::size_t> kids;
            for (std::size_t i = 1; i <= rule.rhs.size(); ++i)
            {
                Path dpath = next.records[item.record].dpath;
                dpath.push_back(child_feature(i));
                kids.push_back(next.records.size());
                next.records.push_back(Record{rule.rhs[i - 1], item.record, std::move(dpath), kNoRecord, {}, std::nullopt, 0});
            }
            next.records[item.record].children = kids;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                next.agenda.push_back({*it, item.depth + 1});
            if (dfs(std::move(next)) && !m_collect_all)
                return true;
        }
        return false;
    }

    bool finish(const State& s)
    {
        const auto mapped = map_semantics(s.d, m_t, Injectivity::Required);
        if (!mapped)
            return false;
        const Mapping& m = *mapped;
        for (const Arc& a : s.d.arcs())
        {
            // Semantics that never got attached to the input would be invented.
            if (a.feature == kPredFeature && !m.image[a.to.value])
                return false;
        }
        DerivationTree tree = tree_of(s.records, 0);
        Derivation d{tree, surface(tree, m_g), derived_tdag(s.d, m_t, m)};
        TerminationCheck check = check_termination(m_t, d);
        if (!check.passed())
        {
            if (m_first_problem.empty())
            {
                for (const std::string& p : check.problems)
                    m_first_problem += (m_first_problem.empty() ? "" : "; ") + p;
            }
            return false;
        }
        m_found.push_back(std::move(d));
        if (!m_collect_all)
            m_success = s;
        return true;
    }

    const Tdag& m_t;
    const Grammar& m_g;
    GenerateOptions m_options;
    bool m_collect_all;
    std::vector<std::optional<Tdag>> m_graphs;
    std::size_t m_limit = 0;
    bool m_cutoff = false;
    std::vector<Derivation> m_found;
    std::optional<State> m_success;
    std::string m_first_problem;
};

void require_inputs(const Tdag& t, const GenerateOptions& options)
{
    if (!t.well_formed())
        throw ContractError("generate: input TDAG is not well-formed");
    if (options.depth_budget == 0)
        throw ContractError("generate: depth budget must be at least 1");
}

std::string describe(const Tdag& t, std::optional<NodeId> n)
{
    if (!n)
        return "";
    if (auto concept_arc = t.find_arc(*n, std::string(kConceptFeature)))
    {
        const Node& c = t.node(t.arc(*concept_arc).to);
        if (c.label)
            return *c.label;
    }
    if (t.node(*n).label)
        return *t.node(*n).label;
    return t.display_name(*n);
}

void trace_calls(const State& s, const Tdag& t, const Grammar& g, std::size_t r, std::size_t level,
                 std::vector<std::string>& out)
{
    const Record& rec = s.records[r];
    const std::string indent(level, ' ');
    const std::string depth = std::to_string(level);
    std::string call = indent + depth + "> " + rec.symbol + " called";
    std::string what = describe(t, rec.anchor);
    if (!what.empty())
        call += " with pred " + what;
    out.push_back(call);
    for (std::size_t c : rec.children)
        trace_calls(s, t, g, c, level + 1, out);
    out.push_back(indent + depth + "< " + rec.symbol + " returns \"" + surface(tree_of(s.records, r), g) + "\"");
}

} // namespace

std::string_view to_string(Coverage c) noexcept
{
    switch (c)
    {
    case Coverage::DerivedRed:
        return "derived-red";
    case Coverage::LeftYellow:
        return "left-yellow";
    case Coverage::LeftGreen:
        return "left-green";
    case Coverage::MissingRed:
        return "missing-red";
    }
    return "?";
}

GenReport generate(const Tdag& t, const Grammar& grammar, const GenerateOptions& options)
{
    require_inputs(t, options);
    GenReport report;
    Search search(t, grammar, options, false);
    bool exhausted_early = false;
    for (std::size_t limit = 1; limit <= options.depth_budget; ++limit)
    {
        if (search.run(limit))
            break;
        if (!search.cutoff())
        {
            exhausted_early = true;
            break;
        }
    }

    if (!search.found().empty())
    {
        report.derivation = std::move(search.found().front());
        Image image = image_of(report.derivation->derived, t);
        for (const Node& n : t.nodes())
            report.node_coverage.push_back(image.nodes[n.id.value] ? Coverage::DerivedRed : unmarked(n.color));
        for (const Arc& a : t.arcs())
            report.arc_coverage.push_back(image.arcs[a.id.value] ? Coverage::DerivedRed : unmarked(a.color));
        trace_calls(*search.success_state(), t, grammar, 0, 0, report.trace);
        return report;
    }

    for (const Node& n : t.nodes())
        report.node_coverage.push_back(unmarked(n.color));
    for (const Arc& a : t.arcs())
        report.arc_coverage.push_back(unmarked(a.color));
    if (!search.first_problem().empty())
        report.failure = search.first_problem();
    else if (exhausted_early)
        report.failure = "no derivation: every rule application adds semantics absent from the input";
    else
        report.failure = "depth: no derivation within depth " + std::to_string(options.depth_budget);
    return report;
}

std::vector<Derivation> enumerate_derivations(const Tdag& t, const Grammar& grammar, const GenerateOptions& options)
{
    require_inputs(t, options);
    Search search(t, grammar, options, true);
    search.run(options.depth_budget);
    return std::move(search.found());
}

TerminationCheck check_termination(const Tdag& t, const Derivation& derivation)
{
    TerminationCheck out;
    const Tdag& g = derivation.derived;
    Image image = image_of(g, t);

    out.nothing_new = image.conflicts.empty();
    for (const std::string& c : image.conflicts)
        out.problems.push_back("T2: " + c);

    out.all_red_derived = true;
    for (const Node& n : t.nodes())
    {
        if (n.color == Color::Red && !image.nodes[n.id.value])
        {
            out.all_red_derived = false;
            out.problems.push_back("T1: red node '" + (n.label ? *n.label : t.display_name(n.id)) + "' not derived");
        }
    }
    for (const Arc& a : t.arcs())
    {
        if (a.color == Color::Red && !image.arcs[a.id.value])
        {
            out.all_red_derived = false;
            out.problems.push_back("T1: red arc '" + t.display_name(a.id) + "' not derived");
        }
    }

    out.red_reentrancies_derived = true;
    const auto paths = red_paths(t);
    for (const Node& n : t.nodes())
    {
        const auto& mine = paths[n.id.value];
        if (mine.size() < 2)
            continue;
        const auto first = walk(g, g.root(), mine.front());
        for (std::size_t i = 1; i < mine.size(); ++i)
        {
            if (inherited_reentrancy(t, mine.front(), mine[i]))
                continue;
            const auto other = walk(g, g.root(), mine[i]);
            if (!first || !other || *first != *other)
            {
                out.red_reentrancies_derived = false;
                out.problems.push_back("T3: reentrancy " + path_to_string(mine.front()) + " = " +
                                       path_to_string(mine[i]) + " not derived");
            }
        }
    }
    return out;
}

bool verify_sandwich(const Tdag& t, const Derivation& derivation)
{
    return subsumes(red_core(t), derivation.derived) && subsumes(derivation.derived, saturate(t));
}

} // namespace tricolor
