/**
 * @file feature_graph.hpp
 * @brief TDAG plumbing shared by the analyzer and the generator.
 *
 * Rules are turned into all-red TDAGs in derivation-tree form: the root is a
 * tree node whose `fs` arc leads to the left-hand side's feature structure
 * and whose `c1`/`c2` arcs lead to child tree nodes, each with its own `fs`.
 * Composing rules is then plain unification.
 */
#pragma once

#include "tricolor/grammar.hpp"

#include <optional>

namespace tricolor
{

/// Feature from a tree node to its feature structure.
inline constexpr std::string_view kFsFeature = "fs";

/// `c1` or `c2`: feature from a tree node to its child `i` (1-based).
std::string child_feature(std::size_t i);

/// Path from a tree node to the feature structure of constituent `i` of its rule.
Path constituent_prefix(std::size_t i);

/// Node reached from `from` along `p`, if every arc exists.
std::optional<NodeId> walk(const Tdag& t, NodeId from, const Path& p);

/// Everything reachable from `n`, rooted at `n`; colors and names kept.
Tdag subtdag(const Tdag& t, NodeId n);

/// `t` hung below a fresh red chain spelling `prefix`.
Tdag embed(const Tdag& t, const Path& prefix);

/// A single red node.
Tdag red_point();

/**
 * The TDAG demanded by one equation, in tree form. A path-to-atom equation
 * whose path ends in `pred` binds `<... pred concept>` instead, because the
 * predicate node also carries the arguments and an atom has no arcs.
 */
UnifyOutcome equation_graph(const Equation& e);

/// Unification of all equations of `rule` (only the semantic ones if asked).
UnifyOutcome rule_graph(const Rule& rule, bool semantic_only = false);

} // namespace tricolor
