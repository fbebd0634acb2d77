#include "tricolor/analyzer.hpp"
#include "tricolor/feature_graph.hpp"

#include <algorithm>
#include <sstream>

namespace tricolor
{

namespace
{

struct Edge
{
    std::string symbol;
    Tdag fs;
    DerivationTree tree;
    /// Unary rules applied on top of the last lexical or binary step.
    std::size_t unary_depth = 0;
};

class Chart
{
public:
    Chart(const std::vector<std::string>& tokens, const Grammar& grammar)
        : m_tokens(tokens)
        , m_grammar(grammar)
        , m_cells(tokens.size() * (tokens.size() + 1))
    {
        for (const Rule& r : grammar.rules)
        {
            UnifyOutcome g = rule_graph(r);
            m_graphs.push_back(std::holds_alternative<Unified>(g)
                                   ? std::optional<Tdag>(std::get<Unified>(g).result)
                                   : std::nullopt);
        }
    }

    std::vector<Edge>& cell(std::size_t from, std::size_t to) { return m_cells[from * (m_tokens.size() + 1) + to]; }

    void fill()
    {
        const std::size_t n = m_tokens.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            bool known = false;
            for (std::size_t r = 0; r < m_grammar.rules.size(); ++r)
            {
                const Rule& rule = m_grammar.rules[r];
                if (!rule.word || *rule.word != m_tokens[i])
                    continue;
                known = true;
                if (auto fs = combine(r, {}))
                    cell(i, i + 1).push_back({rule.lhs, std::move(*fs), {r, {}}, 0});
            }
            if (!known)
                throw AnalysisError("unknown word '" + m_tokens[i] + "'");
            close_unary(i, i + 1);
        }
        for (std::size_t len = 2; len <= n; ++len)
        {
            for (std::size_t i = 0; i + len <= n; ++i)
            {
                const std::size_t j = i + len;
                for (std::size_t k = i + 1; k < j; ++k)
                {
                    for (std::size_t r = 0; r < m_grammar.rules.size(); ++r)
                    {
                        const Rule& rule = m_grammar.rules[r];
                        if (rule.rhs.size() != 2)
                            continue;
                        // Only cell(i, j) grows here, so these references stay valid.
                        const std::vector<Edge>& left = cell(i, k);
                        const std::vector<Edge>& right = cell(k, j);
                        for (const Edge& a : left)
                        {
                            if (a.symbol != rule.rhs[0])
                                continue;
                            for (const Edge& b : right)
                            {
                                if (b.symbol != rule.rhs[1])
                                    continue;
                                if (auto fs = combine(r, {&a, &b}))
                                    cell(i, j).push_back({rule.lhs, std::move(*fs), {r, {a.tree, b.tree}}, 0});
                            }
                        }
                    }
                }
                close_unary(i, j);
            }
        }
    }

    /// Longest edge, earliest first, for failure messages.
    std::string longest_edge()
    {
        const std::size_t n = m_tokens.size();
        for (std::size_t len = n; len >= 1; --len)
        {
            for (std::size_t i = 0; i + len <= n; ++i)
            {
                auto& edges = cell(i, i + len);
                if (edges.empty())
                    continue;
                std::string words;
                for (std::size_t k = i; k < i + len; ++k)
                    words += (k == i ? "" : " ") + m_tokens[k];
                return edges.front().symbol + " over tokens " + std::to_string(i) + "-" +
                       std::to_string(i + len - 1) + " '" + words + "'";
            }
        }
        return "none";
    }

private:
    void close_unary(std::size_t i, std::size_t j)
    {
        auto& edges = cell(i, j);
        for (std::size_t e = 0; e < edges.size(); ++e)
        {
            if (edges[e].unary_depth >= m_grammar.rules.size())
                continue;
            for (std::size_t r = 0; r < m_grammar.rules.size(); ++r)
            {
                const Rule& rule = m_grammar.rules[r];
                if (rule.rhs.size() != 1 || rule.rhs[0] != edges[e].symbol)
                    continue;
                const Edge child = edges[e];
                if (auto fs = combine(r, {&child}))
                    edges.push_back({rule.lhs, std::move(*fs), {r, {child.tree}}, child.unary_depth + 1});
            }
        }
    }

    /// Feature structure of rule `r` over `children`, or nullopt when unification fails.
    std::optional<Tdag> combine(std::size_t r, std::vector<const Edge*> children) const
    {
        if (!m_graphs[r])
            return std::nullopt;
        Tdag acc = *m_graphs[r];
        for (std::size_t c = 0; c < children.size(); ++c)
        {
            UnifyOutcome merged = unify(acc, embed(children[c]->fs, constituent_prefix(c + 1)));
            if (!std::holds_alternative<Unified>(merged))
                return std::nullopt;
            acc = std::move(std::get<Unified>(merged).result);
        }
        return subtdag(acc, *walk(acc, acc.root(), constituent_prefix(0)));
    }

    const std::vector<std::string>& m_tokens;
    const Grammar& m_grammar;
    std::vector<std::vector<Edge>> m_cells;
    std::vector<std::optional<Tdag>> m_graphs;
};

} // namespace

std::vector<std::string> tokenize(std::string_view sentence)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(sentence)};
    std::string word;
    while (in >> word)
    {
        while (!word.empty() && (word.back() == '.' || word.back() == '!' || word.back() == '?' || word.back() == ','))
            word.pop_back();
        if (!word.empty())
            out.push_back(word);
    }
    return out;
}

Analysis analyze(const std::vector<std::string>& tokens, const Grammar& grammar)
{
    if (tokens.empty())
        throw AnalysisError("empty input");
    Chart chart(tokens, grammar);
    chart.fill();

    const Edge* best = nullptr;
    std::vector<std::size_t> best_key;
    std::size_t count = 0;
    for (const Edge& e : chart.cell(0, tokens.size()))
    {
        if (e.symbol != grammar.start)
            continue;
        ++count;
        auto key = preorder_rules(e.tree);
        if (!best || key < best_key)
        {
            best = &e;
            best_key = std::move(key);
        }
    }
    if (!best)
        throw AnalysisError("no complete " + grammar.start + " analysis; longest edge: " + chart.longest_edge());

    auto pred = best->fs.find_arc(best->fs.root(), std::string(kPredFeature));
    Tdag semantics = pred ? embed(subtdag(best->fs, best->fs.arc(*pred).to), {std::string(kPredFeature)}) : red_point();
    return Analysis{std::move(semantics), best->tree, count};
}

} // namespace tricolor
