#include "tricolor/tdag_text.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace tricolor
{

namespace
{

struct PendingArc
{
    std::size_t line;
    std::string from;
    std::string feature;
    std::string to;
    Color color;
};

/// Parses `key=value`, returning the value or nullopt if the key differs.
std::optional<std::string_view> keyed(std::string_view field, std::string_view key)
{
    if (field.size() > key.size() && field.substr(0, key.size()) == key && field[key.size()] == '=')
        return field.substr(key.size() + 1);
    return std::nullopt;
}

Color color_field(std::string_view field, std::size_t line)
{
    auto value = keyed(field, "color");
    if (!value)
        throw ParseError(line, "expected color=<red|yellow|green>, got '" + std::string(field) + "'");
    auto c = parse_color(*value);
    if (!c)
        throw ParseError(line, "unknown color '" + std::string(*value) + "'");
    return *c;
}

} // namespace

std::vector<std::string_view> split_fields(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size())
    {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Tdag parse_tdag(std::string_view text, FeaturePolicy policy)
{
    TdagBuilder builder;
    std::map<std::string, NodeId, std::less<>> ids;
    std::vector<std::size_t> node_lines;
    std::vector<PendingArc> arcs;
    std::optional<std::pair<std::string, std::size_t>> root;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto f = split_fields(line);
        if (f.empty())
            continue;
        if (f[0] == "root")
        {
            if (f.size() != 2)
                throw ParseError(line_no, "expected 'root <id>'");
            if (root)
                throw ParseError(line_no, "root declared twice (first on line " + std::to_string(root->second) + ")");
            root.emplace(std::string(f[1]), line_no);
        }
        else if (f[0] == "node")
        {
            if (f.size() < 3 || f.size() > 4)
                throw ParseError(line_no, "expected 'node <id> color=<c> [label=<atom>]'");
            Color c = color_field(f[2], line_no);
            std::optional<std::string> label;
            if (f.size() == 4)
            {
                auto value = keyed(f[3], "label");
                if (!value || value->empty())
                    throw ParseError(line_no, "expected label=<atom>, got '" + std::string(f[3]) + "'");
                label = std::string(*value);
            }
            std::string name(f[1]);
            if (ids.count(name))
                throw ParseError(line_no, "node '" + name + "' declared twice");
            ids.emplace(name, builder.add_node(c, std::move(label), name));
            node_lines.push_back(line_no);
        }
        else if (f[0] == "arc")
        {
            if (f.size() != 5)
                throw ParseError(line_no, "expected 'arc <from> <feature> <to> color=<c>'");
            arcs.push_back({line_no, std::string(f[1]), std::string(f[2]), std::string(f[3]),
                            color_field(f[4], line_no)});
        }
        else
        {
            throw ParseError(line_no, "unknown directive '" + std::string(f[0]) + "'");
        }
    }

    if (!root)
        throw ParseError(0, "missing 'root <id>' line");
    auto root_it = ids.find(root->first);
    if (root_it == ids.end())
        throw ParseError(root->second, "root '" + root->first + "' is not a declared node");

    for (const PendingArc& a : arcs)
    {
        auto from = ids.find(a.from);
        auto to = ids.find(a.to);
        if (from == ids.end() || to == ids.end())
        {
            const std::string& missing = from == ids.end() ? a.from : a.to;
            throw ParseError(a.line, "dangling endpoint: node '" + missing + "' is not declared");
        }
        builder.add_arc(from->second, a.feature, to->second, a.color);
    }

    try
    {
        return std::move(builder).build(root_it->second, policy);
    }
    catch (const BuildError& e)
    {
        std::size_t line = 0;
        const ElementRef element = e.element();
        if (const auto* arc = std::get_if<ArcId>(&element))
            line = arcs.at(arc->value).line;
        else
            line = node_lines.at(std::get<NodeId>(element).value);
        throw ParseError(line, e.what());
    }
}

std::string serialize_tdag(const Tdag& t)
{
    std::ostringstream out;
    out << "root " << t.display_name(t.root()) << '\n';
    for (const Node& n : t.nodes())
    {
        out << "node " << t.display_name(n.id) << " color=" << to_string(n.color);
        if (n.label)
            out << " label=" << *n.label;
        out << '\n';
    }
    for (const Arc& a : t.arcs())
    {
        out << "arc " << t.display_name(a.from) << ' ' << a.feature << ' ' << t.display_name(a.to)
            << " color=" << to_string(a.color) << '\n';
    }
    return out.str();
}

Tdag load_tdag(const std::string& path)
{
    std::string text = read_file(path);
    try
    {
        return parse_tdag(text);
    }
    catch (const ParseError& e)
    {
        throw ParseError(e.line(), path + ": " + e.message());
    }
}

} // namespace tricolor
