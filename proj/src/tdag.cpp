#include "tricolor/tdag.hpp"
#include "tricolor/well_formed.hpp"

#include <algorithm>
#include <numeric>

namespace tricolor
{

void Tdag::throw_bad_id(ElementRef ref)
{
    if (const auto* n = std::get_if<NodeId>(&ref))
        throw ContractError("node id " + std::to_string(n->value) + " out of range");
    throw ContractError("arc id " + std::to_string(std::get<ArcId>(ref).value) + " out of range");
}

bool Tdag::contains(ElementRef ref) const noexcept
{
    if (const auto* n = std::get_if<NodeId>(&ref))
        return n->value < node_count();
    return std::get<ArcId>(ref).value < arc_count();
}

Color Tdag::color(ElementRef ref) const
{
    if (const auto* n = std::get_if<NodeId>(&ref))
        return node(*n).color;
    return arc(std::get<ArcId>(ref)).color;
}

std::optional<ArcId> Tdag::find_arc(NodeId from, std::string_view feature) const
{
    for (ArcId a : out_arcs(from))
    {
        if (m_rep->m_arcs[a.value].feature == feature)
            return a;
    }
    return std::nullopt;
}

std::optional<NodeId> Tdag::find_node(std::string_view name) const
{
    for (const Node& n : nodes())
    {
        if (!n.name.empty() && n.name == name)
            return n.id;
    }
    return std::nullopt;
}

std::string Tdag::display_name(NodeId id) const
{
    const Node& n = node(id);
    if (!n.name.empty())
        return n.name;
    std::string fallback = "n" + std::to_string(id.value);
    while (find_node(fallback))
        fallback.insert(fallback.begin(), '_');
    return fallback;
}

std::string Tdag::display_name(ArcId id) const
{
    const Arc& a = arc(id);
    return display_name(a.from) + "/" + a.feature;
}

std::string Tdag::display_name(ElementRef ref) const
{
    return std::visit([this](auto id) { return display_name(id); }, ref);
}

std::optional<ElementRef> Tdag::resolve(std::string_view ref) const
{
    for (const Node& n : nodes())
    {
        if (display_name(n.id) == ref)
            return n.id;
    }
    auto slash = ref.rfind('/');
    if (slash == std::string_view::npos)
        return std::nullopt;
    auto from = resolve(ref.substr(0, slash));
    if (!from || !std::holds_alternative<NodeId>(*from))
        return std::nullopt;
    if (auto a = find_arc(std::get<NodeId>(*from), ref.substr(slash + 1)))
        return *a;
    return std::nullopt;
}

Tdag Tdag::recolored(std::span<const std::pair<ElementRef, Color>> changes) const
{
    auto rep = std::make_shared<Rep>(*m_rep);
    for (const auto& [ref, c] : changes)
    {
        if (!contains(ref))
            throw ContractError("recolor target not in TDAG");
        if (const auto* n = std::get_if<NodeId>(&ref))
            rep->m_nodes[n->value].color = c;
        else
            rep->m_arcs[std::get<ArcId>(ref).value].color = c;
    }
    Tdag out{rep};
    rep->m_well_formed = check_well_formed(out).empty();
    return out;
}

void Tdag::Rep::index()
{
    const std::size_t n = m_nodes.size();
    m_out_offsets.assign(n + 1, 0);
    m_in_offsets.assign(n + 1, 0);
    for (const Arc& a : m_arcs)
    {
        ++m_out_offsets[a.from.value + 1];
        ++m_in_offsets[a.to.value + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        m_out_offsets[i + 1] += m_out_offsets[i];
        m_in_offsets[i + 1] += m_in_offsets[i];
    }
    m_out.assign(m_arcs.size(), ArcId{});
    m_in.assign(m_arcs.size(), ArcId{});
    SmallVector<std::uint32_t, 8> out_fill(m_out_offsets.begin(), m_out_offsets.end() - 1);
    SmallVector<std::uint32_t, 8> in_fill(m_in_offsets.begin(), m_in_offsets.end() - 1);
    for (const Arc& a : m_arcs)
    {
        m_out[out_fill[a.from.value]++] = a.id;
        m_in[in_fill[a.to.value]++] = a.id;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        auto first = m_out.begin() + m_out_offsets[i];
        auto last = m_out.begin() + m_out_offsets[i + 1];
        if (last - first > 1)
        {
            std::sort(first, last, [this](ArcId x, ArcId y) {
                const Arc& ax = m_arcs[x.value];
                const Arc& ay = m_arcs[y.value];
                if (ax.feature != ay.feature)
                    return ax.feature < ay.feature;
                return x < y;
            });
        }
    }
}

TdagBuilder::TdagBuilder(const Tdag& base)
    : m_nodes(base.m_rep->m_nodes)
    , m_arcs(base.m_rep->m_arcs)
{}

NodeId TdagBuilder::add_node(Color color, std::optional<std::string> label, std::string name)
{
    NodeId id{static_cast<std::uint32_t>(m_nodes.size())};
    m_nodes.push_back(Node{id, std::move(name), color, std::move(label)});
    return id;
}

ArcId TdagBuilder::add_arc(NodeId from, std::string feature, NodeId to, Color color)
{
    ArcId id{static_cast<std::uint32_t>(m_arcs.size())};
    m_arcs.push_back(Arc{id, from, std::move(feature), to, color});
    return id;
}

Tdag TdagBuilder::build(NodeId root, FeaturePolicy policy) const&
{
    return assemble(m_nodes, m_arcs, root, policy);
}

Tdag TdagBuilder::build(NodeId root, FeaturePolicy policy) &&
{
    return assemble(std::move(m_nodes), std::move(m_arcs), root, policy);
}

Tdag TdagBuilder::assemble(Tdag::SmallVector<Node, 6> nodes, Tdag::SmallVector<Arc, 8> arcs, NodeId root,
                           FeaturePolicy policy)
{
    const std::size_t n = nodes.size();
    if (root.value >= n)
        throw BuildError(BuildErrorKind::DanglingEndpoint, root,
                         "root node " + std::to_string(root.value) + " is not declared");
    for (const Arc& a : arcs)
    {
        if (a.from.value >= n || a.to.value >= n)
        {
            throw BuildError(BuildErrorKind::DanglingEndpoint, a.id,
                             "arc '" + a.feature + "' refers to undeclared node " +
                                 std::to_string(a.from.value >= n ? a.from.value : a.to.value));
        }
        if (a.feature.empty())
            throw BuildError(BuildErrorKind::EmptyFeature, a.id, "arc has an empty feature name");
    }

    if (std::count_if(nodes.begin(), nodes.end(), [](const Node& x) { return !x.name.empty(); }) > 1)
    {
        Tdag::SmallVector<const Node*, 6> named;
        for (const Node& node : nodes)
        {
            if (!node.name.empty())
                named.push_back(&node);
        }
        std::sort(named.begin(), named.end(), [](const Node* x, const Node* y) { return x->name < y->name; });
        for (std::size_t i = 1; i < named.size(); ++i)
        {
            if (named[i]->name == named[i - 1]->name)
                throw BuildError(BuildErrorKind::DuplicateName, named[i]->id,
                                 "duplicate node name '" + named[i]->name + "'");
        }
    }

    auto rep = std::make_shared<Tdag::Rep>();
    rep->m_nodes = std::move(nodes);
    rep->m_arcs = std::move(arcs);
    rep->m_root = root;
    rep->index();
    Tdag t{rep};

    for (std::uint32_t i = 0; i < n; ++i)
    {
        auto out = t.out_arcs(NodeId{i});
        if (!out.empty() && rep->m_nodes[i].atomic())
        {
            throw BuildError(BuildErrorKind::AtomWithArcs, NodeId{i},
                             "atomic node '" + t.display_name(NodeId{i}) + "' has outgoing arcs");
        }
        if (policy == FeaturePolicy::Unique)
        {
            for (std::size_t k = 1; k < out.size(); ++k)
            {
                if (rep->m_arcs[out[k].value].feature == rep->m_arcs[out[k - 1].value].feature)
                {
                    throw BuildError(BuildErrorKind::DuplicateFeature, out[k],
                                     "two arcs leave '" + t.display_name(NodeId{i}) + "' with feature '" +
                                         rep->m_arcs[out[k].value].feature + "'");
                }
            }
        }
    }

    // Iterative DFS: 0 = unvisited, 1 = on stack, 2 = done.
    Tdag::SmallVector<std::uint8_t, 8> state(n, 0);
    Tdag::SmallVector<std::pair<std::uint32_t, std::uint32_t>, 8> stack;
    for (std::uint32_t start = 0; start < n; ++start)
    {
        if (state[start])
            continue;
        stack.push_back({start, 0});
        state[start] = 1;
        while (!stack.empty())
        {
            auto& [v, next] = stack.back();
            auto out = t.out_arcs(NodeId{v});
            if (next == out.size())
            {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            ArcId a = out[next++];
            std::uint32_t w = rep->m_arcs[a.value].to.value;
            if (state[w] == 1)
            {
                throw BuildError(BuildErrorKind::Cycle, a,
                                 "arc '" + t.display_name(a) + "' closes a cycle");
            }
            if (state[w] == 0)
            {
                state[w] = 1;
                stack.push_back({w, 0});
            }
        }
    }

    Tdag::SmallVector<bool, 8> seen(n, false);
    Tdag::SmallVector<std::uint32_t, 8> queue{root.value};
    seen[root.value] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
    {
        for (ArcId a : t.out_arcs(NodeId{queue[head]}))
        {
            std::uint32_t w = rep->m_arcs[a.value].to.value;
            if (!seen[w])
            {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if (queue.size() != n)
    {
        for (std::uint32_t i = 0; i < n; ++i)
        {
            if (!seen[i])
                throw BuildError(BuildErrorKind::Unreachable, NodeId{i},
                                 "node '" + t.display_name(NodeId{i}) + "' is not reachable from the root");
        }
    }

    rep->m_well_formed = check_well_formed(t).empty();
    return t;
}

} // namespace tricolor
