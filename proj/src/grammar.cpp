#include "tricolor/grammar.hpp"
#include "tricolor/feature_graph.hpp"
#include "tricolor/tdag_text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tricolor
{

namespace
{

bool has_pred(const FeaturePath& p)
{
    return std::find(p.features.begin(), p.features.end(), kPredFeature) != p.features.end();
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string_view strip_comment(std::string_view line)
{
    // A '#' inside a quoted word does not start a comment.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        if (line[i] == '"')
            quoted = !quoted;
        else if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

bool valid_symbol(std::string_view s)
{
    return !s.empty() && s.front() != '$' && s.front() != '"' &&
           std::none_of(s.begin(), s.end(), [](char c) { return c == '<' || c == '>' || c == '='; });
}

class GrammarParser
{
public:
    Grammar parse(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        std::string raw;
        for (m_line = 1; std::getline(in, raw); ++m_line)
        {
            std::string_view line = strip_comment(raw);
            if (trim(line).empty())
                continue;
            const bool indented = std::isspace(static_cast<unsigned char>(line.front()));
            line = trim(line);
            if (line.front() == '<')
            {
                if (!indented)
                    fail("equations must be indented below their rule");
                if (!m_rule)
                    fail("equation outside of a rule");
                m_grammar.rules.back().equations.push_back(parse_equation(line));
                continue;
            }
            auto fields = split_fields(line);
            if (fields[0] == "start")
                parse_start(fields);
            else if (fields[0] == "rule")
                parse_rule(fields);
            else
                fail("expected 'rule', 'start' or an indented equation, got '" + std::string(fields[0]) + "'");
        }
        if (!m_start_line)
            throw ParseError(0, "no start rule: missing 'start <Symbol>' declaration");
        if (m_grammar.rules_for(m_grammar.start).empty())
            throw ParseError(m_start_line, "no rule has the start symbol '" + m_grammar.start + "' as left-hand side");
        return std::move(m_grammar);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(m_line, msg); }

    void parse_start(const std::vector<std::string_view>& fields)
    {
        if (fields.size() != 2 || !valid_symbol(fields[1]))
            fail("expected 'start <Symbol>'");
        if (m_start_line)
            fail("second start declaration (first on line " + std::to_string(m_start_line) + ")");
        m_grammar.start = std::string(fields[1]);
        m_start_line = m_line;
    }

    void parse_rule(const std::vector<std::string_view>& fields)
    {
        if (fields.size() < 5 || fields.size() > 6 || fields[3] != "->")
            fail("expected 'rule <name> <LHS> -> <RHS1> [<RHS2>]' or 'rule <name> <LHS> -> \"<word>\"'");
        Rule rule;
        rule.name = std::string(fields[1]);
        if (m_grammar.find_rule(rule.name))
            fail("duplicate rule name '" + rule.name + "'");
        if (!valid_symbol(fields[2]))
            fail("invalid left-hand side symbol '" + std::string(fields[2]) + "'");
        rule.lhs = std::string(fields[2]);
        std::string_view first = fields[4];
        if (first.front() == '"')
        {
            if (fields.size() != 5 || first.size() < 3 || first.back() != '"')
                fail("a lexical rule has exactly one quoted, non-empty word");
            rule.word = std::string(first.substr(1, first.size() - 2));
        }
        else
        {
            for (std::size_t i = 4; i < fields.size(); ++i)
            {
                if (!valid_symbol(fields[i]))
                    fail("invalid right-hand side symbol '" + std::string(fields[i]) + "'");
                rule.rhs.emplace_back(fields[i]);
            }
        }
        m_grammar.rules.push_back(std::move(rule));
        m_rule = true;
    }

    /// Parses `<Sym f ...>` at the front of `text` and consumes it.
    FeaturePath parse_path(std::string_view& text) const
    {
        auto close = text.find('>');
        if (text.front() != '<' || close == std::string_view::npos)
            fail("expected a path '<Symbol feature ...>'");
        auto parts = split_fields(text.substr(1, close - 1));
        text = trim(text.substr(close + 1));
        if (parts.empty())
            fail("empty path '<>'");
        const Rule& rule = m_grammar.rules.back();
        FeaturePath p;
        p.constituent = resolve_symbol(rule, parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i)
        {
            if (!valid_symbol(parts[i]))
                fail("invalid feature name '" + std::string(parts[i]) + "'");
            p.features.emplace_back(parts[i]);
        }
        return p;
    }

    std::size_t resolve_symbol(const Rule& rule, std::string_view symbol) const
    {
        if (symbol.starts_with('$'))
        {
            std::string_view digits = symbol.substr(1);
            if (digits.size() == 1 && digits[0] >= '0' && static_cast<std::size_t>(digits[0] - '0') < rule.constituent_count())
                return static_cast<std::size_t>(digits[0] - '0');
            fail("rule '" + rule.name + "' has no constituent '" + std::string(symbol) + "'");
        }
        std::optional<std::size_t> found;
        for (std::size_t i = 0; i < rule.constituent_count(); ++i)
        {
            if (rule.symbol(i) != symbol)
                continue;
            if (found)
                fail("symbol '" + std::string(symbol) + "' occurs more than once in rule '" + rule.name +
                     "'; refer to it as $0, $1 or $2");
            found = i;
        }
        if (!found)
            fail("unknown constituent symbol '" + std::string(symbol) + "' in rule '" + rule.name + "'");
        return *found;
    }

    Equation parse_equation(std::string_view text) const
    {
        Equation e;
        e.line = m_line;
        e.lhs = parse_path(text);
        if (!text.starts_with('='))
            fail("malformed equation: expected '=' after the left path");
        text = trim(text.substr(1));
        if (text.empty())
            fail("malformed equation: missing right-hand side");
        if (text.front() == '<')
        {
            e.rhs = parse_path(text);
            if (!text.empty())
                fail("malformed equation: trailing text '" + std::string(text) + "'");
        }
        else
        {
            auto parts = split_fields(text);
            if (parts.size() != 1 || !valid_symbol(parts[0]))
                fail("malformed equation: expected a path or a single atom on the right");
            e.rhs = std::string(parts[0]);
        }
        return e;
    }

    Grammar m_grammar;
    std::size_t m_line = 0;
    std::size_t m_start_line = 0;
    bool m_rule = false;
};

std::string symbol_ref(const Rule& rule, std::size_t i)
{
    std::size_t same = 0;
    for (std::size_t k = 0; k < rule.constituent_count(); ++k)
        same += rule.symbol(k) == rule.symbol(i);
    return same > 1 ? "$" + std::to_string(i) : rule.symbol(i);
}

} // namespace

bool Equation::semantic() const
{
    if (has_pred(lhs))
        return true;
    const auto* p = std::get_if<FeaturePath>(&rhs);
    return p && has_pred(*p);
}

std::vector<std::size_t> Grammar::rules_for(std::string_view symbol) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
    {
        if (rules[i].lhs == symbol)
            out.push_back(i);
    }
    return out;
}

const Rule* Grammar::find_rule(std::string_view name) const
{
    for (const Rule& r : rules)
    {
        if (r.name == name)
            return &r;
    }
    return nullptr;
}

Grammar parse_grammar(std::string_view text)
{
    return GrammarParser{}.parse(text);
}

std::string to_string(const Rule& rule, const FeaturePath& p)
{
    std::string out = "<" + symbol_ref(rule, p.constituent);
    for (const std::string& f : p.features)
        out += " " + f;
    return out + ">";
}

std::string to_string(const Rule& rule, const Equation& e)
{
    std::string out = to_string(rule, e.lhs) + " = ";
    if (const auto* p = std::get_if<FeaturePath>(&e.rhs))
        return out + to_string(rule, *p);
    return out + std::get<std::string>(e.rhs);
}

std::string serialize_grammar(const Grammar& g)
{
    std::string out = "start " + g.start + "\n";
    for (const Rule& r : g.rules)
    {
        out += "\nrule " + r.name + " " + r.lhs + " ->";
        if (r.word)
            out += " \"" + *r.word + "\"";
        for (const std::string& s : r.rhs)
            out += " " + s;
        out += "\n";
        for (const Equation& e : r.equations)
            out += "  " + to_string(r, e) + "\n";
    }
    return out;
}

Grammar load_grammar(const std::string& path)
{
    std::string text = read_file(path);
    try
    {
        return parse_grammar(text);
    }
    catch (const ParseError& e)
    {
        throw ParseError(e.line(), path + ": " + e.message());
    }
}

std::string surface(const DerivationTree& tree, const Grammar& g)
{
    const Rule& rule = g.rules.at(tree.rule);
    if (rule.word)
        return *rule.word;
    std::string out;
    for (const DerivationTree& child : tree.children)
    {
        std::string part = surface(child, g);
        if (!out.empty() && !part.empty())
            out += ' ';
        out += part;
    }
    return out;
}

std::string bracketed(const DerivationTree& tree, const Grammar& g)
{
    const Rule& rule = g.rules.at(tree.rule);
    std::string out = "(" + rule.lhs;
    if (rule.word)
        out += " " + *rule.word;
    for (const DerivationTree& child : tree.children)
        out += " " + bracketed(child, g);
    return out + ")";
}

std::vector<std::size_t> preorder_rules(const DerivationTree& tree)
{
    std::vector<std::size_t> out{tree.rule};
    for (const DerivationTree& child : tree.children)
    {
        auto below = preorder_rules(child);
        out.insert(out.end(), below.begin(), below.end());
    }
    return out;
}

LexicalFragment instantiate_lexical(const Rule& rule)
{
    if (!rule.lexical())
        throw ContractError("instantiate_lexical: rule '" + rule.name + "' is phrasal");
    UnifyOutcome graph = rule_graph(rule, true);
    if (const auto* f = std::get_if<Failure>(&graph))
        throw InstantiationError("rule '" + rule.name + "': " + f->reason + " at " + path_to_string(f->path));
    if (const auto* i = std::get_if<Indefinite>(&graph))
        throw InstantiationError("rule '" + rule.name + "': atoms " + i->first_atom + " and " + i->second_atom +
                                 " conflict at " + path_to_string(i->path));
    const Tdag& g = std::get<Unified>(graph).result;
    LexicalFragment out{subtdag(g, *walk(g, g.root(), constituent_prefix(0))), {}};
    for (const Equation& e : rule.equations)
    {
        if (!e.semantic())
            out.bindings.push_back(e);
    }
    return out;
}

} // namespace tricolor
