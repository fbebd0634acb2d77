#include "tricolor/strategy.hpp"
#include "tricolor/algebra.hpp"
#include "tricolor/tdag_text.hpp"

#include <algorithm>
#include <sstream>

namespace tricolor
{

namespace
{

std::regex compile(const std::string& pattern)
{
    return std::regex(pattern, std::regex::ECMAScript);
}

std::optional<TransferOp> paint_op(const Tdag& t, ElementRef target, StrategyAction action)
{
    const Color c = t.color(target);
    if (c == Color::Green || (action == StrategyAction::PaintYellow && c != Color::Red))
        return std::nullopt;
    if (!can_paint(t, target))
        return std::nullopt;
    if (c == Color::Red)
        return PaintRedToYellow{target};
    return PaintYellowToGreen{target};
}

/// For each node, the arc ending its lexicographically least root path.
std::vector<std::optional<ArcId>> least_path_arcs(const Tdag& t)
{
    auto paths = root_paths(t);
    std::vector<std::optional<ArcId>> out(t.node_count());
    for (const Node& n : t.nodes())
    {
        const auto& mine = paths[n.id.value];
        if (mine.empty() || mine.front().empty())
            continue;
        // The least path ends in an arc from a node one of whose paths is its prefix.
        const Path& least = mine.front();
        Path prefix(least.begin(), least.end() - 1);
        for (ArcId a : t.in_arcs(n.id))
        {
            const Arc& arc = t.arc(a);
            if (arc.feature != least.back())
                continue;
            const auto& parent = paths[arc.from.value];
            if (std::binary_search(parent.begin(), parent.end(), prefix))
            {
                out[n.id.value] = a;
                break;
            }
        }
    }
    return out;
}

} // namespace

StrategyTable::StrategyTable(std::vector<Strategy> entries)
    : m_entries(std::move(entries))
{
    for (const Strategy& s : m_entries)
        m_patterns.push_back(compile(s.feature_pattern));
}

std::vector<TransferOp> StrategyTable::propose(std::size_t index, const Tdag& t) const
{
    const Strategy& entry = m_entries.at(index);
    const std::regex& pattern = m_patterns[index];

    std::vector<std::optional<ArcId>> primary;
    if (entry.shared_only)
        primary = least_path_arcs(t);

    std::vector<TransferOp> out;
    for (const Arc& a : t.arcs())
    {
        if (!std::regex_match(a.feature, pattern))
            continue;
        if (entry.shared_only && (t.in_arcs(a.to).size() < 2 || primary[a.to.value] == a.id))
            continue;
        auto op = paint_op(t, a.id, entry.action);
        if (!op && t.node(a.to).color == a.color)
            op = paint_op(t, a.to, entry.action);
        if (op && std::find(out.begin(), out.end(), *op) == out.end())
            out.push_back(*op);
    }
    return out;
}

StrategyTable parse_strategies(std::string_view text)
{
    std::vector<Strategy> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no)
    {
        auto fields = split_fields(line);
        if (fields.empty())
            continue;
        if (fields[0] != "strategy" || fields.size() < 4)
            throw ParseError(line_no,
                             "expected 'strategy <name> match-feature=<regex> action=<paint-yellow|paint-green> "
                             "[target=shared]'");
        Strategy s;
        s.name = std::string(fields[1]);
        bool have_pattern = false;
        bool have_action = false;
        for (std::size_t i = 2; i < fields.size(); ++i)
        {
            std::string_view f = fields[i];
            if (f.starts_with("match-feature="))
            {
                s.feature_pattern = std::string(f.substr(14));
                have_pattern = true;
            }
            else if (f == "action=paint-yellow" || f == "action=paint-green")
            {
                s.action = f == "action=paint-yellow" ? StrategyAction::PaintYellow : StrategyAction::PaintGreen;
                have_action = true;
            }
            else if (f == "target=shared")
            {
                s.shared_only = true;
            }
            else
            {
                throw ParseError(line_no, "unknown strategy field '" + std::string(f) + "'");
            }
        }
        if (!have_pattern || !have_action)
            throw ParseError(line_no, "strategy '" + s.name + "' needs match-feature= and action=");
        if (std::any_of(entries.begin(), entries.end(), [&](const Strategy& e) { return e.name == s.name; }))
            throw ParseError(line_no, "duplicate strategy '" + s.name + "'");
        try
        {
            compile(s.feature_pattern);
        }
        catch (const std::regex_error& e)
        {
            throw ParseError(line_no, "invalid pattern '" + s.feature_pattern + "': " + e.what());
        }
        entries.push_back(std::move(s));
    }
    return StrategyTable(std::move(entries));
}

std::string serialize_strategies(const StrategyTable& table)
{
    std::string out;
    for (const Strategy& s : table.entries())
    {
        out += "strategy " + s.name + " match-feature=" + s.feature_pattern + " action=" +
               (s.action == StrategyAction::PaintYellow ? "paint-yellow" : "paint-green");
        if (s.shared_only)
            out += " target=shared";
        out += '\n';
    }
    return out;
}

StrategyTable default_strategies()
{
    return StrategyTable({
        {"functional-control", "agent", StrategyAction::PaintYellow, true},
        {"relative-gap", "gap", StrategyAction::PaintYellow, true},
        {"number-definiteness", "num|def", StrategyAction::PaintYellow, false},
        {"passivization", "passive", StrategyAction::PaintGreen, false},
    });
}

std::vector<TransferOp> enumerate_ops(const Tdag& t, const StrategyTable& strategies)
{
    std::vector<TransferOp> out;
    auto push = [&](TransferOp op) {
        if (std::find(out.begin(), out.end(), op) == out.end())
            out.push_back(std::move(op));
    };
    for (std::size_t i = 0; i < strategies.entries().size(); ++i)
    {
        for (TransferOp& op : strategies.propose(i, t))
            push(std::move(op));
    }
    auto paint = [&](ElementRef ref) {
        if (!can_paint(t, ref))
            return;
        if (t.color(ref) == Color::Red)
            push(PaintRedToYellow{ref});
        else
            push(PaintYellowToGreen{ref});
    };
    for (const Node& n : t.nodes())
        paint(n.id);
    for (const Arc& a : t.arcs())
        paint(a.id);
    return out;
}

} // namespace tricolor
