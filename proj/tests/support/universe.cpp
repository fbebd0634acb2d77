#include "universe.hpp"

#include <functional>
#include <string>

namespace tricolor::testkit
{

namespace
{

struct Shape
{
    std::size_t nodes = 0;
    // target[node * features + feature], -1 when absent
    std::vector<int> target;
};

std::string feature_name(std::size_t i)
{
    return std::string(1, static_cast<char>('f' + i));
}

std::string atom_name(std::size_t i)
{
    return std::string("*") + static_cast<char>('A' + i);
}

bool canonical_and_acyclic(const Shape& s, std::size_t features)
{
    std::vector<int> order{0};
    std::vector<bool> seen(s.nodes, false);
    seen[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head)
    {
        for (std::size_t f = 0; f < features; ++f)
        {
            int t = s.target[order[head] * features + f];
            if (t >= 0 && !seen[t])
            {
                seen[t] = true;
                order.push_back(t);
            }
        }
    }
    if (order.size() != s.nodes)
        return false;
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        if (order[i] != static_cast<int>(i))
            return false;
    }
    std::vector<int> state(s.nodes, 0);
    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        for (std::size_t f = 0; f < features; ++f)
        {
            int t = s.target[v * features + f];
            if (t < 0)
                continue;
            if (state[t] == 1 || (state[t] == 0 && !dfs(t)))
                return false;
        }
        state[v] = 2;
        return true;
    };
    return dfs(0);
}

std::vector<Shape> shapes(const UniverseSpec& spec)
{
    std::vector<Shape> out;
    const std::size_t F = spec.feature_count;
    for (std::size_t n = 1; n <= spec.max_nodes; ++n)
    {
        const std::size_t slots = n * F;
        Shape s{n, std::vector<int>(slots, -1)};
        // odometer over {-1, 0..n-1}^slots
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == slots)
            {
                if (canonical_and_acyclic(s, F))
                    out.push_back(s);
                return;
            }
            for (int v = -1; v < static_cast<int>(n); ++v)
            {
                s.target[i] = v;
                rec(i + 1);
            }
            s.target[i] = -1;
        };
        rec(0);
    }
    return out;
}

struct FlatArc
{
    int from;
    std::size_t feature;
    int to;
};

bool well_formed_coloring(std::size_t nodes, const std::vector<FlatArc>& arcs, const std::vector<Color>& nc,
                          const std::vector<Color>& ac)
{
    if (nc[0] != Color::Red)
        return false;
    for (std::size_t i = 0; i < arcs.size(); ++i)
    {
        Color a = nc[arcs[i].from];
        Color b = nc[arcs[i].to];
        if (ac[i] == Color::Red && (a != Color::Red || b != Color::Red))
            return false;
        if (ac[i] == Color::Yellow && (a == Color::Green || b == Color::Green))
            return false;
    }
    for (Color min : {Color::Red, Color::Yellow})
    {
        std::vector<bool> reach(nodes, false);
        reach[0] = true;
        bool grew = true;
        while (grew)
        {
            grew = false;
            for (std::size_t i = 0; i < arcs.size(); ++i)
            {
                if (reach[arcs[i].from] && nc[arcs[i].from] >= min && ac[i] >= min && nc[arcs[i].to] >= min &&
                    !reach[arcs[i].to])
                {
                    reach[arcs[i].to] = true;
                    grew = true;
                }
            }
        }
        for (std::size_t v = 0; v < nodes; ++v)
        {
            if (nc[v] == min && !reach[v])
                return false;
        }
    }
    return true;
}

} // namespace

std::size_t count_shapes(const UniverseSpec& spec)
{
    return shapes(spec).size();
}

std::vector<Tdag> enumerate_universe(const UniverseSpec& spec)
{
    std::vector<Tdag> out;
    const std::size_t F = spec.feature_count;
    for (const Shape& s : shapes(spec))
    {
        std::vector<FlatArc> arcs;
        std::vector<bool> leaf(s.nodes, true);
        for (std::size_t v = 0; v < s.nodes; ++v)
        {
            for (std::size_t f = 0; f < F; ++f)
            {
                int t = s.target[v * F + f];
                if (t >= 0)
                {
                    arcs.push_back({static_cast<int>(v), f, t});
                    leaf[v] = false;
                }
            }
        }
        std::vector<Color> nc(s.nodes, Color::Red);
        std::vector<Color> ac(arcs.size(), Color::Red);
        std::vector<int> label(s.nodes, -1);

        std::function<void(std::size_t)> labels = [&](std::size_t v) {
            if (v == s.nodes)
            {
                TdagBuilder b;
                for (std::size_t i = 0; i < s.nodes; ++i)
                {
                    std::optional<std::string> l;
                    if (label[i] >= 0)
                        l = atom_name(label[i]);
                    b.add_node(nc[i], std::move(l));
                }
                for (std::size_t i = 0; i < arcs.size(); ++i)
                    b.add_arc(NodeId{static_cast<std::uint32_t>(arcs[i].from)}, feature_name(arcs[i].feature),
                              NodeId{static_cast<std::uint32_t>(arcs[i].to)}, ac[i]);
                out.push_back(std::move(b).build(NodeId{0}));
                return;
            }
            label[v] = -1;
            labels(v + 1);
            if (leaf[v])
            {
                for (std::size_t a = 0; a < spec.atom_count; ++a)
                {
                    label[v] = static_cast<int>(a);
                    labels(v + 1);
                }
                label[v] = -1;
            }
        };
        std::function<void(std::size_t)> arc_colors = [&](std::size_t i) {
            if (i == arcs.size())
            {
                if (well_formed_coloring(s.nodes, arcs, nc, ac))
                    labels(0);
                return;
            }
            for (Color c : kAllColors)
            {
                ac[i] = c;
                arc_colors(i + 1);
            }
        };
        std::function<void(std::size_t)> node_colors = [&](std::size_t v) {
            if (v == s.nodes)
            {
                arc_colors(0);
                return;
            }
            for (Color c : kAllColors)
            {
                if (v == 0 && c != Color::Red)
                    continue;
                nc[v] = c;
                node_colors(v + 1);
            }
        };
        node_colors(0);
    }
    return out;
}

} // namespace tricolor::testkit
