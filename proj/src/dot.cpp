#include "tricolor/dot.hpp"

#include <sstream>

namespace tricolor
{

namespace
{

std::string_view dot_color(Color c)
{
    switch (c)
    {
    case Color::Red:
        return "red";
    case Color::Yellow:
        return "gold";
    case Color::Green:
        return "green";
    }
    return "black";
}

std::string quoted(std::string_view text)
{
    std::string out = "\"";
    for (char ch : text)
    {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string export_dot(const Tdag& t)
{
    std::ostringstream out;
    out << "digraph tdag {\n";
    out << "  node [shape=ellipse, style=bold];\n";
    for (const Node& n : t.nodes())
    {
        std::string name = t.display_name(n.id);
        out << "  " << quoted(name) << " [label=" << quoted(n.label ? *n.label : name)
            << ", color=" << dot_color(n.color);
        if (n.id == t.root())
            out << ", peripheries=2";
        out << "];\n";
    }
    for (const Node& n : t.nodes())
    {
        for (ArcId id : t.out_arcs(n.id))
        {
            const Arc& a = t.arc(id);
            out << "  " << quoted(t.display_name(a.from)) << " -> " << quoted(t.display_name(a.to))
                << " [label=" << quoted(a.feature) << ", color=" << dot_color(a.color)
                << ", fontcolor=" << dot_color(a.color) << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace tricolor
