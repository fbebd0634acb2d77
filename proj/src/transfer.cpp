#include "tricolor/transfer.hpp"
#include "tricolor/tdag_text.hpp"
#include "tricolor/well_formed.hpp"

#include <sstream>

namespace tricolor
{

namespace
{

[[noreturn]] void reject(const std::string& msg)
{
    throw TransferError(TransferError::Kind::Rejected, msg);
}

void require_node(const Tdag& t, NodeId id, std::string_view role)
{
    if (!t.contains(id))
        throw TransferError(TransferError::Kind::Coordinate,
                            std::string(role) + " node " + std::to_string(id.value) + " does not exist");
}

void require_element(const Tdag& t, ElementRef ref)
{
    if (!t.contains(ref))
        throw TransferError(TransferError::Kind::Coordinate, "paint target does not exist");
}

/// `t` with `target` weakened to `to`; a node drags its same-colored incoming arcs along.
Tdag painted(const Tdag& t, ElementRef target, Color to)
{
    Tdag::SmallVector<std::pair<ElementRef, Color>, 8> changes{{target, to}};
    if (const auto* n = std::get_if<NodeId>(&target))
    {
        const Color old = t.node(*n).color;
        for (ArcId a : t.in_arcs(*n))
        {
            if (t.arc(a).color == old)
                changes.push_back({a, to});
        }
    }
    return t.recolored({changes.data(), changes.size()});
}

Tdag apply_paint(const Tdag& t, ElementRef target, Color expected)
{
    require_element(t, target);
    const Color current = t.color(target);
    if (current != expected)
    {
        reject("painter: '" + t.display_name(target) + "' is " + std::string(to_string(current)) + ", not " +
               std::string(to_string(expected)));
    }
    if (const auto* n = std::get_if<NodeId>(&target); n && *n == t.root())
        reject("painter: W1 requires the root '" + t.display_name(target) + "' to stay red");
    Tdag out = painted(t, target, *weakened(current));
    if (!out.well_formed())
    {
        const Violation v = check_well_formed(out).front();
        reject("painter: weakening '" + t.display_name(target) + "' breaks " + std::string(to_string(v.condition)) +
               " (" + v.message + ")");
    }
    return out;
}

void check_arc_source(const Tdag& t, NodeId from, const std::string& feature)
{
    if (feature.empty())
        reject("addition: empty feature name");
    if (t.node(from).atomic())
        reject("addition: atomic node '" + t.display_name(from) + "' cannot have outgoing arcs");
    if (t.find_arc(from, feature))
        reject("addition: W6 forbids a second '" + feature + "' arc from '" + t.display_name(from) + "'");
}

void check_yellow_endpoint(const Tdag& t, NodeId id)
{
    if (t.node(id).color == Color::Green)
        reject("addition: a yellow arc must connect two red or yellow nodes, but '" + t.display_name(id) +
               "' is green");
}

Tdag finish(const TdagBuilder& builder, NodeId root)
{
    Tdag out = [&] {
        try
        {
            return builder.build(root);
        }
        catch (const BuildError& e)
        {
            reject(std::string("addition: ") + e.what());
        }
    }();
    if (!out.well_formed())
        reject("addition: result breaks " + std::string(to_string(check_well_formed(out).front().condition)));
    return out;
}

Tdag add_node(const Tdag& t, NodeId attach, const std::string& feature, const std::optional<std::string>& label,
              const std::string& name, Color color)
{
    require_node(t, attach, "attach");
    check_arc_source(t, attach, feature);
    if (color == Color::Yellow)
        check_yellow_endpoint(t, attach);
    if (!name.empty() && t.find_node(name))
        reject("addition: node name '" + name + "' is already used");
    if (label && label->empty())
        reject("addition: empty atom label");
    TdagBuilder builder(t);
    NodeId fresh = builder.add_node(color, label, name);
    builder.add_arc(attach, feature, fresh, color);
    return finish(builder, t.root());
}

Tdag add_arc(const Tdag& t, NodeId from, const std::string& feature, NodeId to, Color color)
{
    require_node(t, from, "source");
    require_node(t, to, "target");
    check_arc_source(t, from, feature);
    if (color == Color::Yellow)
    {
        check_yellow_endpoint(t, from);
        check_yellow_endpoint(t, to);
    }
    TdagBuilder builder(t);
    builder.add_arc(from, feature, to, color);
    return finish(builder, t.root());
}

std::string_view color_word(Color c)
{
    return to_string(c);
}

ElementRef resolve_ref(const Tdag& t, std::string_view ref)
{
    auto found = t.resolve(ref);
    if (!found)
        throw TransferError(TransferError::Kind::Coordinate, "no node or arc named '" + std::string(ref) + "'");
    return *found;
}

NodeId resolve_node(const Tdag& t, std::string_view ref)
{
    ElementRef found = resolve_ref(t, ref);
    if (!std::holds_alternative<NodeId>(found))
        throw TransferError(TransferError::Kind::Coordinate, "'" + std::string(ref) + "' names an arc, not a node");
    return std::get<NodeId>(found);
}

Color parse_addition_color(std::string_view word)
{
    auto c = parse_color(word);
    if (!c || *c == Color::Red)
        throw ParseError(0, "additions are yellow or green, got '" + std::string(word) + "'");
    return *c;
}

} // namespace

bool is_paint(const TransferOp& op) noexcept
{
    return std::holds_alternative<PaintRedToYellow>(op) || std::holds_alternative<PaintYellowToGreen>(op);
}

bool can_paint(const Tdag& t, ElementRef target)
{
    if (!t.contains(target))
        return false;
    if (const auto* n = std::get_if<NodeId>(&target); n && *n == t.root())
        return false;
    auto to = weakened(t.color(target));
    return to && painted(t, target, *to).well_formed();
}

Tdag apply_op(const Tdag& t, const TransferOp& op)
{
    if (!t.well_formed())
        throw ContractError("transfer: input TDAG is not well-formed");
    struct Visitor
    {
        const Tdag& t;
        Tdag operator()(const AddYellowNode& o) const
        {
            return add_node(t, o.attach, o.feature, o.label, o.name, Color::Yellow);
        }
        Tdag operator()(const AddGreenNode& o) const
        {
            return add_node(t, o.attach, o.feature, o.label, o.name, Color::Green);
        }
        Tdag operator()(const AddYellowArc& o) const { return add_arc(t, o.from, o.feature, o.to, Color::Yellow); }
        Tdag operator()(const AddGreenArc& o) const { return add_arc(t, o.from, o.feature, o.to, Color::Green); }
        Tdag operator()(const PaintRedToYellow& o) const { return apply_paint(t, o.target, Color::Red); }
        Tdag operator()(const PaintYellowToGreen& o) const { return apply_paint(t, o.target, Color::Yellow); }
    };
    return std::visit(Visitor{t}, op);
}

std::string format_op(const Tdag& before, const TransferOp& op)
{
    struct Visitor
    {
        const Tdag& t;
        std::string node_line(Color c, NodeId attach, const std::string& feature,
                              const std::optional<std::string>& label, const std::string& name) const
        {
            std::string fresh = name.empty() ? "n" + std::to_string(t.node_count()) : name;
            std::string line = "add-node " + std::string(color_word(c)) + " " + t.display_name(attach) + " " +
                               feature + " " + fresh;
            if (label)
                line += " label=" + *label;
            return line;
        }
        std::string arc_line(Color c, NodeId from, const std::string& feature, NodeId to) const
        {
            return "add-arc " + std::string(color_word(c)) + " " + t.display_name(from) + " " + feature + " " +
                   t.display_name(to);
        }
        std::string operator()(const AddYellowNode& o) const
        {
            return node_line(Color::Yellow, o.attach, o.feature, o.label, o.name);
        }
        std::string operator()(const AddGreenNode& o) const
        {
            return node_line(Color::Green, o.attach, o.feature, o.label, o.name);
        }
        std::string operator()(const AddYellowArc& o) const { return arc_line(Color::Yellow, o.from, o.feature, o.to); }
        std::string operator()(const AddGreenArc& o) const { return arc_line(Color::Green, o.from, o.feature, o.to); }
        std::string operator()(const PaintRedToYellow& o) const { return "paint " + t.display_name(o.target) + " red yellow"; }
        std::string operator()(const PaintYellowToGreen& o) const
        {
            return "paint " + t.display_name(o.target) + " yellow green";
        }
    };
    return std::visit(Visitor{before}, op);
}

TransferOp parse_op(const Tdag& before, std::string_view line)
{
    auto fields = split_fields(line);
    if (fields.empty())
        throw ParseError(0, "empty op line");
    const std::string_view verb = fields[0];
    if (verb == "paint")
    {
        if (fields.size() != 4)
            throw ParseError(0, "expected 'paint <element> <from-color> <to-color>'");
        auto from = parse_color(fields[2]);
        auto to = parse_color(fields[3]);
        if (!from || !to || weakened(*from) != to)
            throw ParseError(0, "a paint goes red->yellow or yellow->green, got '" + std::string(fields[2]) + " " +
                                    std::string(fields[3]) + "'");
        ElementRef target = resolve_ref(before, fields[1]);
        if (*from == Color::Red)
            return PaintRedToYellow{target};
        return PaintYellowToGreen{target};
    }
    if (verb == "add-node")
    {
        if (fields.size() != 5 && fields.size() != 6)
            throw ParseError(0, "expected 'add-node <yellow|green> <attach> <feature> <new-name> [label=<atom>]'");
        Color c = parse_addition_color(fields[1]);
        NodeId attach = resolve_node(before, fields[2]);
        std::optional<std::string> label;
        if (fields.size() == 6)
        {
            if (!fields[5].starts_with("label="))
                throw ParseError(0, "expected label=<atom>, got '" + std::string(fields[5]) + "'");
            label = std::string(fields[5].substr(6));
        }
        if (c == Color::Yellow)
            return AddYellowNode{attach, std::string(fields[3]), label, std::string(fields[4])};
        return AddGreenNode{attach, std::string(fields[3]), label, std::string(fields[4])};
    }
    if (verb == "add-arc")
    {
        if (fields.size() != 5)
            throw ParseError(0, "expected 'add-arc <yellow|green> <from> <feature> <to>'");
        Color c = parse_addition_color(fields[1]);
        NodeId from = resolve_node(before, fields[2]);
        NodeId to = resolve_node(before, fields[4]);
        if (c == Color::Yellow)
            return AddYellowArc{from, std::string(fields[3]), to};
        return AddGreenArc{from, std::string(fields[3]), to};
    }
    throw ParseError(0, "unknown op '" + std::string(verb) + "'");
}

std::string format_trace(const TransferTrace& trace)
{
    std::string out;
    const Tdag* before = &trace.initial;
    for (const TransferStep& step : trace.steps)
    {
        out += format_op(*before, step.op);
        out += '\n';
        before = &step.result;
    }
    return out;
}

TransferTrace replay_trace(const Tdag& initial, std::string_view text)
{
    TransferTrace trace{initial, {}};
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no)
    {
        if (split_fields(line).empty())
            continue;
        try
        {
            TransferOp op = parse_op(trace.final_tdag(), line);
            Tdag next = apply_op(trace.final_tdag(), op);
            trace.steps.push_back({std::move(op), std::move(next)});
        }
        catch (const ParseError& e)
        {
            throw ParseError(line_no, e.message());
        }
        catch (const TransferError& e)
        {
            throw TransferError(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return trace;
}

} // namespace tricolor
