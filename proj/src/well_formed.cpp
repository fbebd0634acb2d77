#include "tricolor/well_formed.hpp"

namespace tricolor
{

namespace
{

/// Nodes reachable from the root using only nodes and arcs of at least `min`.
Tdag::SmallVector<bool, 8> reachable_at_least(const Tdag& t, Color min)
{
    Tdag::SmallVector<bool, 8> seen(t.node_count(), false);
    seen[t.root().value] = true;
    if (t.node(t.root()).color < min)
        return seen;
    Tdag::SmallVector<NodeId, 8> queue{t.root()};
    for (std::size_t head = 0; head < queue.size(); ++head)
    {
        for (ArcId a : t.out_arcs(queue[head]))
        {
            const Arc& arc = t.arc(a);
            if (arc.color < min || seen[arc.to.value] || t.node(arc.to).color < min)
                continue;
            seen[arc.to.value] = true;
            queue.push_back(arc.to);
        }
    }
    return seen;
}

} // namespace

std::string_view to_string(Condition c) noexcept
{
    switch (c)
    {
    case Condition::W1:
        return "W1";
    case Condition::W2:
        return "W2";
    case Condition::W3:
        return "W3";
    case Condition::W4:
        return "W4";
    case Condition::W5:
        return "W5";
    case Condition::W6:
        return "W6";
    }
    return "W?";
}

std::vector<Violation> check_well_formed(const Tdag& t)
{
    std::vector<Violation> out;

    if (t.node(t.root()).color != Color::Red)
        out.push_back({Condition::W1, t.root(), "root '" + t.display_name(t.root()) + "' is not red"});

    for (const Arc& a : t.arcs())
    {
        if (a.color == Color::Red && (t.node(a.from).color != Color::Red || t.node(a.to).color != Color::Red))
            out.push_back({Condition::W2, a.id, "red arc '" + t.display_name(a.id) + "' touches a non-red node"});
    }

    bool any_red = false;
    bool any_yellow = false;
    for (const Node& n : t.nodes())
    {
        any_red |= n.id != t.root() && n.color == Color::Red;
        any_yellow |= n.color == Color::Yellow;
    }
    if (any_red)
    {
        auto seen = reachable_at_least(t, Color::Red);
        for (const Node& n : t.nodes())
        {
            if (n.color == Color::Red && !seen[n.id.value])
                out.push_back({Condition::W3, n.id,
                               "red node '" + t.display_name(n.id) + "' is not reachable through red elements"});
        }
    }
    if (any_yellow)
    {
        auto seen = reachable_at_least(t, Color::Yellow);
        for (const Node& n : t.nodes())
        {
            if (n.color == Color::Yellow && !seen[n.id.value])
                out.push_back({Condition::W4, n.id,
                               "yellow node '" + t.display_name(n.id) +
                                   "' is not reachable through red/yellow elements"});
        }
    }

    for (const Arc& a : t.arcs())
    {
        if (a.color == Color::Yellow &&
            (t.node(a.from).color == Color::Green || t.node(a.to).color == Color::Green))
            out.push_back({Condition::W5, a.id, "yellow arc '" + t.display_name(a.id) + "' touches a green node"});
    }

    for (const Node& n : t.nodes())
    {
        auto arcs = t.out_arcs(n.id);
        for (std::size_t k = 1; k < arcs.size(); ++k)
        {
            if (t.arc(arcs[k]).feature == t.arc(arcs[k - 1]).feature)
                out.push_back({Condition::W6, arcs[k],
                               "feature '" + t.arc(arcs[k]).feature + "' leaves '" + t.display_name(n.id) +
                                   "' twice"});
        }
    }
    return out;
}

} // namespace tricolor
