#include "tricolor/feature_graph.hpp"

#include <map>

namespace tricolor
{

std::string child_feature(std::size_t i)
{
    return "c" + std::to_string(i);
}

Path constituent_prefix(std::size_t i)
{
    if (i == 0)
        return {std::string(kFsFeature)};
    return {child_feature(i), std::string(kFsFeature)};
}

std::optional<NodeId> walk(const Tdag& t, NodeId from, const Path& p)
{
    for (const std::string& f : p)
    {
        auto a = t.find_arc(from, f);
        if (!a)
            return std::nullopt;
        from = t.arc(*a).to;
    }
    return from;
}

Tdag subtdag(const Tdag& t, NodeId n)
{
    std::vector<std::optional<NodeId>> copy(t.node_count());
    std::vector<NodeId> order{n};
    TdagBuilder builder;
    const Node& top = t.node(n);
    copy[n.value] = builder.add_node(top.color, top.label, top.name);
    for (std::size_t head = 0; head < order.size(); ++head)
    {
        for (ArcId id : t.out_arcs(order[head]))
        {
            const Arc& a = t.arc(id);
            if (!copy[a.to.value])
            {
                const Node& x = t.node(a.to);
                copy[a.to.value] = builder.add_node(x.color, x.label, x.name);
                order.push_back(a.to);
            }
        }
    }
    for (NodeId from : order)
    {
        for (ArcId id : t.out_arcs(from))
        {
            const Arc& a = t.arc(id);
            builder.add_arc(*copy[from.value], a.feature, *copy[a.to.value], a.color);
        }
    }
    return std::move(builder).build(*copy[n.value]);
}

Tdag embed(const Tdag& t, const Path& prefix)
{
    if (prefix.empty())
        return t;
    TdagBuilder builder;
    NodeId root = builder.add_node(Color::Red);
    NodeId at = root;
    for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
    {
        NodeId next = builder.add_node(Color::Red);
        builder.add_arc(at, prefix[i], next, Color::Red);
        at = next;
    }
    const std::uint32_t base = static_cast<std::uint32_t>(builder.node_count());
    for (const Node& n : t.nodes())
        builder.add_node(n.color, n.label, n.name);
    for (const Arc& a : t.arcs())
        builder.add_arc(NodeId{a.from.value + base}, a.feature, NodeId{a.to.value + base}, a.color);
    NodeId hung{t.root().value + base};
    builder.add_arc(at, prefix.back(), hung, Color::Red);
    return std::move(builder).build(root);
}

Tdag red_point()
{
    TdagBuilder builder;
    return std::move(builder).build(builder.add_node(Color::Red));
}

namespace
{

/// Builds a tree-form TDAG by inserting paths into a trie.
class PathTrie
{
public:
    PathTrie() { m_root = m_builder.add_node(Color::Red); }

    NodeId root() const { return m_root; }

    /// Node at the end of `p`, creating nodes as needed.
    NodeId insert(const Path& p)
    {
        NodeId at = m_root;
        for (const std::string& f : p)
            at = step(at, f);
        return at;
    }

    /// Existing child of `at` through `f`, or a new red one.
    NodeId step(NodeId at, const std::string& f)
    {
        auto [it, inserted] = m_children.try_emplace({at.value, f});
        if (inserted)
        {
            it->second = m_builder.add_node(Color::Red);
            m_builder.add_arc(at, f, it->second, Color::Red);
        }
        return it->second;
    }

    std::optional<NodeId> child(NodeId at, const std::string& f) const
    {
        auto it = m_children.find({at.value, f});
        if (it == m_children.end())
            return std::nullopt;
        return it->second;
    }

    void link(NodeId from, const std::string& f, NodeId to)
    {
        m_children[{from.value, f}] = to;
        m_builder.add_arc(from, f, to, Color::Red);
    }

    NodeId add_leaf(std::string atom) { return m_builder.add_node(Color::Red, std::move(atom)); }

    Tdag build() const { return m_builder.build(m_root); }

private:
    TdagBuilder m_builder;
    NodeId m_root;
    std::map<std::pair<std::uint32_t, std::string>, NodeId> m_children;
};

Path full_path(const FeaturePath& p)
{
    Path out = constituent_prefix(p.constituent);
    out.insert(out.end(), p.features.begin(), p.features.end());
    return out;
}

} // namespace

UnifyOutcome equation_graph(const Equation& e)
{
    PathTrie trie;
    Path lhs = full_path(e.lhs);
    if (const auto* atom = std::get_if<std::string>(&e.rhs))
    {
        if (!e.lhs.features.empty() && e.lhs.features.back() == kPredFeature)
            lhs.emplace_back(kConceptFeature);
        NodeId parent = trie.insert(Path(lhs.begin(), lhs.end() - 1));
        trie.link(parent, lhs.back(), trie.add_leaf(*atom));
        return Unified{trie.build()};
    }
    Path rhs = full_path(std::get<FeaturePath>(e.rhs));
    if (lhs == rhs)
        return Unified{trie.build()};
    NodeId target = trie.insert(lhs);
    NodeId parent = trie.insert(Path(rhs.begin(), rhs.end() - 1));
    if (auto existing = trie.child(parent, rhs.back()))
    {
        if (*existing == target)
            return Unified{trie.build()};
        return Failure{"equation makes a path reach its own extension", rhs};
    }
    trie.link(parent, rhs.back(), target);
    try
    {
        return Unified{trie.build()};
    }
    catch (const BuildError&)
    {
        return Failure{"equation makes a path reach its own extension", lhs};
    }
}

UnifyOutcome rule_graph(const Rule& rule, bool semantic_only)
{
    PathTrie trie;
    for (std::size_t i = 0; i < rule.constituent_count(); ++i)
        trie.insert(constituent_prefix(i));
    Tdag acc = trie.build();
    for (const Equation& e : rule.equations)
    {
        if (semantic_only && !e.semantic())
            continue;
        UnifyOutcome part = equation_graph(e);
        if (!std::holds_alternative<Unified>(part))
            return part;
        UnifyOutcome merged = unify(acc, std::get<Unified>(part).result);
        if (!std::holds_alternative<Unified>(merged))
            return merged;
        acc = std::move(std::get<Unified>(merged).result);
    }
    return Unified{std::move(acc)};
}

} // namespace tricolor
