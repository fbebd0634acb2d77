/**
 * @file grammar.hpp
 * @brief PATR-II style unification grammars.
 *
 * @code
 * # comment
 * start S
 * rule s S -> NP VP
 *   <S pred> = <VP pred>
 *   <VP subj> = <NP>
 * rule john NP -> "John"
 *   <NP pred> = *JOHN
 * @endcode
 *
 * Equations follow their rule on indented lines. A symbol that occurs more
 * than once in a rule is referred to by position: `$0` is the left-hand side,
 * `$1` and `$2` the right-hand side constituents.
 */
#pragma once

#include "tricolor/algebra.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tricolor
{

/// Feature introduced under a predicate that a path-to-atom equation names.
inline constexpr std::string_view kConceptFeature = "concept";
/// Feature through which semantic equations reach the TDAG.
inline constexpr std::string_view kPredFeature = "pred";

/// A path rooted at one constituent of a rule.
struct FeaturePath
{
    /// 0 for the left-hand side, 1 and 2 for the right-hand side.
    std::size_t constituent = 0;
    Path features;

    friend bool operator==(const FeaturePath&, const FeaturePath&) = default;
};

struct Equation
{
    FeaturePath lhs;
    /// Another path (reentrancy) or an atom (value binding).
    std::variant<FeaturePath, std::string> rhs;
    /// Source line, 0 when built in code.
    std::size_t line = 0;

    /// True when a path of the equation goes through `pred`.
    bool semantic() const;

    friend bool operator==(const Equation& x, const Equation& y) { return x.lhs == y.lhs && x.rhs == y.rhs; }
};

struct Rule
{
    std::string name;
    std::string lhs;
    /// One or two symbols for a phrasal rule; empty for a lexical rule.
    std::vector<std::string> rhs;
    /// Word form of a lexical rule.
    std::optional<std::string> word;
    std::vector<Equation> equations;

    bool lexical() const noexcept { return word.has_value(); }
    /// Symbol of constituent `i`.
    const std::string& symbol(std::size_t i) const { return i == 0 ? lhs : rhs.at(i - 1); }
    std::size_t constituent_count() const noexcept { return 1 + rhs.size(); }

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct Grammar
{
    std::vector<Rule> rules;
    std::string start;

    /// Indices of the rules with left-hand side `symbol`, in file order.
    std::vector<std::size_t> rules_for(std::string_view symbol) const;
    const Rule* find_rule(std::string_view name) const;
};

/**
 * Throws ParseError with a line number on malformed rules or equations,
 * unknown constituent symbols, duplicate rule names, a missing start
 * declaration or a start symbol without rules.
 */
Grammar parse_grammar(std::string_view text);
std::string serialize_grammar(const Grammar& g);
Grammar load_grammar(const std::string& path);

/// `<Sym f g>` using the symbol name, or `$i` when the symbol repeats.
std::string to_string(const Rule& rule, const FeaturePath& p);
std::string to_string(const Rule& rule, const Equation& e);

/// A rule application and the applications below it, one per right-hand side symbol.
struct DerivationTree
{
    /// Index into Grammar::rules.
    std::size_t rule = 0;
    std::vector<DerivationTree> children;

    friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

/// Words of the lexical leaves, left to right, separated by spaces.
std::string surface(const DerivationTree& tree, const Grammar& g);

/// Bracketed form, e.g. `(S (NP John) (VP ...))`.
std::string bracketed(const DerivationTree& tree, const Grammar& g);

/// Rule indices in preorder; orders derivations by rule priority.
std::vector<std::size_t> preorder_rules(const DerivationTree& tree);

/// The semantic part of a lexical rule plus its remaining equations.
struct LexicalFragment
{
    /// All red; rooted at the rule's constituent.
    Tdag semantics;
    std::vector<Equation> bindings;
};

/// Raised when a rule's equations cannot be satisfied together.
class InstantiationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/**
 * Builds the semantic fragment of a lexical rule from its semantic
 * equations. Throws ContractError for a phrasal rule and InstantiationError
 * when the equations conflict.
 */
LexicalFragment instantiate_lexical(const Rule& rule);

} // namespace tricolor
