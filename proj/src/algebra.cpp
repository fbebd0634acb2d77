#include "tricolor/algebra.hpp"

#include <algorithm>
#include <limits>

namespace tricolor
{

namespace
{

constexpr std::uint32_t kUnmapped = std::numeric_limits<std::uint32_t>::max();

template <class T>
using Small = Tdag::SmallVector<T, 16>;

void require_well_formed(const Tdag& t, const char* op)
{
    if (!t.well_formed())
        throw ContractError(std::string(op) + ": input TDAG is not well-formed");
}

/**
 * Walks `general` from the root, mapping each node onto `specific` along
 * equal features. `exact` demands equal colors and labels instead of the
 * subsumption rules, plus an injective map.
 */
bool homomorphic(const Tdag& general, const Tdag& specific, bool exact)
{
    Small<std::uint32_t> image(general.node_count(), kUnmapped);
    Small<std::uint32_t> preimage;
    if (exact)
        preimage.assign(specific.node_count(), kUnmapped);

    auto bind = [&](NodeId from, NodeId to, Small<NodeId>& stack) {
        std::uint32_t& slot = image[from.value];
        if (slot != kUnmapped)
            return slot == to.value;
        if (exact)
        {
            if (preimage[to.value] != kUnmapped)
                return false;
            preimage[to.value] = from.value;
        }
        slot = to.value;
        stack.push_back(from);
        return true;
    };

    Small<NodeId> stack;
    bind(general.root(), specific.root(), stack);
    while (!stack.empty())
    {
        NodeId x = stack.back();
        stack.pop_back();
        NodeId y{image[x.value]};
        const Node& gx = general.node(x);
        const Node& sy = specific.node(y);
        if (exact ? gx.color != sy.color : !color_subsumes(gx.color, sy.color))
            return false;
        if (gx.label ? sy.label != gx.label : (exact && sy.label))
            return false;

        auto gout = general.out_arcs(x);
        auto sout = specific.out_arcs(y);
        if (exact && gout.size() != sout.size())
            return false;
        // Both lists are sorted by feature.
        std::size_t k = 0;
        for (ArcId ga : gout)
        {
            const Arc& g = general.arc(ga);
            while (k < sout.size() && specific.arc(sout[k]).feature < g.feature)
                ++k;
            if (k == sout.size() || specific.arc(sout[k]).feature != g.feature)
                return false;
            const Arc& s = specific.arc(sout[k]);
            if (exact ? g.color != s.color : !color_subsumes(g.color, s.color))
                return false;
            if (!bind(g.to, s.to, stack))
                return false;
        }
    }
    return true;
}

/// A node or arc of either unification operand, indexed a-first.
struct Operands
{
    const Tdag& a;
    const Tdag& b;

    std::uint32_t offset_nodes() const { return static_cast<std::uint32_t>(a.node_count()); }
    std::uint32_t offset_arcs() const { return static_cast<std::uint32_t>(a.arc_count()); }

    const Node& node(std::uint32_t i) const
    {
        return i < offset_nodes() ? a.node(NodeId{i}) : b.node(NodeId{i - offset_nodes()});
    }
    const Arc& arc(std::uint32_t i) const
    {
        return i < offset_arcs() ? a.arc(ArcId{i}) : b.arc(ArcId{i - offset_arcs()});
    }
    std::uint32_t from(std::uint32_t i) const
    {
        return i < offset_arcs() ? arc(i).from.value : arc(i).from.value + offset_nodes();
    }
    std::uint32_t to(std::uint32_t i) const
    {
        return i < offset_arcs() ? arc(i).to.value : arc(i).to.value + offset_nodes();
    }
};

constexpr std::uint32_t kNone = kUnmapped;

/**
 * Union-find over the nodes of both operands. Each class keeps a singly
 * linked list of its surviving arcs, at most one per feature.
 */
struct MergeState
{
    MergeState(const Operands& ops, std::uint32_t node_total, std::uint32_t arc_total)
        : parent(node_total)
        , head(node_total, kNone)
        , next(arc_total, kNone)
        , color(arc_total)
    {
        for (std::uint32_t i = 0; i < node_total; ++i)
            parent[i] = i;
        for (std::uint32_t i = arc_total; i-- > 0;)
        {
            std::uint32_t from = ops.from(i);
            next[i] = head[from];
            head[from] = i;
            color[i] = ops.arc(i).color;
        }
    }

    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
        {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    Small<std::uint32_t> parent;
    Small<std::uint32_t> head;
    Small<std::uint32_t> next;
    Small<Color> color;
};

/// Shortest feature path from `root` to `target` in the merged class graph.
Path class_path(MergeState& m, const Operands& ops, std::uint32_t root, std::uint32_t target)
{
    const std::size_t n = m.parent.size();
    Small<std::uint32_t> via(n, kUnmapped);
    Small<std::uint32_t> prev(n, kUnmapped);
    Small<std::uint32_t> queue{root};
    prev[root] = root;
    for (std::size_t head = 0; head < queue.size() && prev[target] == kUnmapped; ++head)
    {
        std::uint32_t c = queue[head];
        Small<std::uint32_t> arcs;
        for (std::uint32_t arc = m.head[c]; arc != kNone; arc = m.next[arc])
            arcs.push_back(arc);
        std::sort(arcs.begin(), arcs.end(),
                  [&](std::uint32_t x, std::uint32_t y) { return ops.arc(x).feature < ops.arc(y).feature; });
        for (std::uint32_t arc : arcs)
        {
            std::uint32_t d = m.find(ops.to(arc));
            if (prev[d] != kUnmapped)
                continue;
            prev[d] = c;
            via[d] = arc;
            queue.push_back(d);
        }
    }
    Path path;
    if (prev[target] == kUnmapped)
        return path;
    for (std::uint32_t c = target; c != root; c = prev[c])
        path.push_back(ops.arc(via[c]).feature);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::string path_to_string(const Path& p)
{
    std::string out = "<";
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        if (i)
            out += ' ';
        out += p[i];
    }
    out += '>';
    return out;
}

bool subsumes(const Tdag& general, const Tdag& specific)
{
    require_well_formed(general, "subsumes");
    require_well_formed(specific, "subsumes");
    return homomorphic(general, specific, false);
}

bool iso_equal(const Tdag& a, const Tdag& b)
{
    if (a.node_count() != b.node_count() || a.arc_count() != b.arc_count())
        return false;
    return homomorphic(a, b, true);
}

std::string canonical_form(const Tdag& t)
{
    Small<std::uint32_t> number(t.node_count(), kUnmapped);
    Small<NodeId> order{t.root()};
    number[t.root().value] = 0;
    for (std::size_t head = 0; head < order.size(); ++head)
    {
        for (ArcId a : t.out_arcs(order[head]))
        {
            NodeId to = t.arc(a).to;
            if (number[to.value] == kUnmapped)
            {
                number[to.value] = static_cast<std::uint32_t>(order.size());
                order.push_back(to);
            }
        }
    }
    std::string out;
    for (NodeId id : order)
    {
        const Node& n = t.node(id);
        out += static_cast<char>('0' + static_cast<int>(n.color));
        if (n.label)
        {
            out += '=';
            out += *n.label;
        }
        for (ArcId a : t.out_arcs(id))
        {
            const Arc& arc = t.arc(a);
            out += '|';
            out += arc.feature;
            out += ':';
            out += std::to_string(number[arc.to.value]);
            out += static_cast<char>('0' + static_cast<int>(arc.color));
        }
        out += ';';
    }
    return out;
}

UnifyOutcome unify(const Tdag& a, const Tdag& b)
{
    require_well_formed(a, "unify");
    require_well_formed(b, "unify");

    Operands ops{a, b};
    const std::uint32_t node_total = static_cast<std::uint32_t>(a.node_count() + b.node_count());
    const std::uint32_t arc_total = static_cast<std::uint32_t>(a.arc_count() + b.arc_count());
    MergeState m(ops, node_total, arc_total);

    Small<std::pair<std::uint32_t, std::uint32_t>> pending{{a.root().value, b.root().value + ops.offset_nodes()}};
    while (!pending.empty())
    {
        auto [x, y] = pending.back();
        pending.pop_back();
        std::uint32_t rx = m.find(x);
        std::uint32_t ry = m.find(y);
        if (rx == ry)
            continue;
        m.parent[ry] = rx;
        for (std::uint32_t arc = m.head[ry], following; arc != kNone; arc = following)
        {
            following = m.next[arc];
            const std::string& feature = ops.arc(arc).feature;
            std::uint32_t match = m.head[rx];
            while (match != kNone && ops.arc(match).feature != feature)
                match = m.next[match];
            if (match == kNone)
            {
                m.next[arc] = m.head[rx];
                m.head[rx] = arc;
                continue;
            }
            m.color[match] = join(m.color[match], m.color[arc]);
            pending.push_back({ops.to(match), ops.to(arc)});
        }
        m.head[ry] = kNone;
    }

    const std::uint32_t root = m.find(a.root().value);

    // Per class: color, label, and atom conflicts. A conflict is soft only
    // when every labeled member of the class is green.
    Small<Color> class_color(node_total, Color::Green);
    Small<const std::string*> class_label(node_total, nullptr);
    Small<const std::string*> class_rival(node_total, nullptr);
    Small<bool> class_labels_green(node_total, true);
    Small<std::uint32_t> first_member(node_total, kUnmapped);
    std::uint32_t hard_conflict = kUnmapped;
    std::string hard_reason;
    for (std::uint32_t i = 0; i < node_total; ++i)
    {
        std::uint32_t c = m.find(i);
        const Node& n = ops.node(i);
        if (first_member[c] == kUnmapped)
            first_member[c] = i;
        class_color[c] = join(class_color[c], n.color);
        if (!n.label)
            continue;
        class_labels_green[c] = class_labels_green[c] && n.color == Color::Green;
        if (m.head[c] != kNone && hard_conflict == kUnmapped)
        {
            hard_conflict = c;
            hard_reason = "atom '" + *n.label + "' unified with a complex node";
        }
        if (!class_label[c])
            class_label[c] = &*n.label;
        else if (*class_label[c] != *n.label && !class_rival[c])
            class_rival[c] = &*n.label;
    }
    std::uint32_t soft_conflict = kUnmapped;
    for (std::uint32_t c = 0; c < node_total && hard_conflict == kUnmapped; ++c)
    {
        if (!class_rival[c])
            continue;
        if (!class_labels_green[c])
        {
            hard_conflict = c;
            hard_reason = "atom '" + *class_label[c] + "' conflicts with atom '" + *class_rival[c] + "'";
        }
        else if (soft_conflict == kUnmapped)
        {
            soft_conflict = c;
        }
    }
    if (hard_conflict != kUnmapped)
        return Failure{hard_reason, class_path(m, ops, root, hard_conflict)};

    // Cycle check over the class graph (iterative DFS).
    {
        Small<std::uint8_t> state(node_total, 0);
        Small<std::pair<std::uint32_t, std::uint32_t>> stack{{root, m.head[root]}};
        state[root] = 1;
        while (!stack.empty())
        {
            auto& [c, arc] = stack.back();
            if (arc == kNone)
            {
                state[c] = 2;
                stack.pop_back();
                continue;
            }
            std::uint32_t d = m.find(ops.to(arc));
            arc = m.next[arc];
            if (state[d] == 1)
                return Failure{"unification creates a cycle", class_path(m, ops, root, d)};
            if (state[d] == 0)
            {
                state[d] = 1;
                stack.push_back({d, m.head[d]});
            }
        }
    }

    if (soft_conflict != kUnmapped)
    {
        std::string first = *class_label[soft_conflict];
        std::string second = *class_rival[soft_conflict];
        if (second < first)
            std::swap(first, second);
        return Indefinite{first, second, class_path(m, ops, root, soft_conflict)};
    }

    // Emit classes in order of their first member; names prefer operand a.
    TdagBuilder builder;
    Small<std::uint32_t> class_node(node_total, kUnmapped);
    Small<std::string_view> used_names;
    for (std::uint32_t i = 0; i < node_total; ++i)
    {
        std::uint32_t c = m.find(i);
        if (class_node[c] != kUnmapped)
            continue;
        const Node& first = ops.node(first_member[c]);
        std::string name;
        if (!first.name.empty() &&
            std::find(used_names.begin(), used_names.end(), first.name) == used_names.end())
        {
            name = first.name;
            used_names.push_back(first.name);
        }
        std::optional<std::string> label;
        if (class_label[c])
            label = *class_label[c];
        class_node[c] = builder.add_node(class_color[c], std::move(label), std::move(name)).value;
    }
    for (std::uint32_t c = 0; c < node_total; ++c)
    {
        for (std::uint32_t arc = m.head[c]; arc != kNone; arc = m.next[arc])
        {
            builder.add_arc(NodeId{class_node[c]}, ops.arc(arc).feature, NodeId{class_node[m.find(ops.to(arc))]},
                            m.color[arc]);
        }
    }
    return Unified{std::move(builder).build(NodeId{class_node[root]})};
}

Tdag red_core(const Tdag& t)
{
    require_well_formed(t, "red_core");
    TdagBuilder builder;
    Small<std::uint32_t> renumber(t.node_count(), kUnmapped);
    for (const Node& n : t.nodes())
    {
        if (n.color == Color::Red)
            renumber[n.id.value] = builder.add_node(Color::Red, n.label, n.name).value;
    }
    for (const Arc& a : t.arcs())
    {
        if (a.color == Color::Red)
            builder.add_arc(NodeId{renumber[a.from.value]}, a.feature, NodeId{renumber[a.to.value]}, Color::Red);
    }
    return std::move(builder).build(NodeId{renumber[t.root().value]});
}

Tdag saturate(const Tdag& t)
{
    require_well_formed(t, "saturate");
    std::vector<std::pair<ElementRef, Color>> changes;
    changes.reserve(t.element_count());
    for (const Node& n : t.nodes())
        changes.emplace_back(n.id, Color::Red);
    for (const Arc& a : t.arcs())
        changes.emplace_back(a.id, Color::Red);
    return t.recolored(changes);
}

std::vector<std::vector<Path>> root_paths(const Tdag& t)
{
    std::vector<std::vector<Path>> paths(t.node_count());
    paths[t.root().value].push_back({});
    // Process nodes in topological order so every predecessor is complete.
    std::vector<std::uint32_t> indegree(t.node_count(), 0);
    for (const Arc& a : t.arcs())
        ++indegree[a.to.value];
    std::vector<NodeId> ready{t.root()};
    while (!ready.empty())
    {
        NodeId n = ready.back();
        ready.pop_back();
        for (ArcId id : t.out_arcs(n))
        {
            const Arc& a = t.arc(id);
            for (const Path& p : paths[n.value])
            {
                Path q = p;
                q.push_back(a.feature);
                paths[a.to.value].push_back(std::move(q));
            }
            if (--indegree[a.to.value] == 0)
                ready.push_back(a.to);
        }
    }
    for (auto& list : paths)
        std::sort(list.begin(), list.end());
    return paths;
}

} // namespace tricolor
