/**
 * @file algebra.hpp
 * @brief Color-extended subsumption and unification over TDAGs.
 */
#pragma once

#include "tricolor/tdag.hpp"

#include <string>
#include <variant>
#include <vector>

namespace tricolor
{

/// Sequence of feature names from the root.
using Path = std::vector<std::string>;

std::string path_to_string(const Path& p);

/**
 * True iff there is a root-preserving homomorphism from `general` to
 * `specific` that respects features, atom labels and reentrancies, where a
 * red element maps only to red, yellow to red/yellow and green to any color.
 *
 * Throws ContractError if either argument is not well-formed.
 */
bool subsumes(const Tdag& general, const Tdag& specific);

/// Isomorphism preserving root, features, labels, colors and reentrancies.
bool iso_equal(const Tdag& a, const Tdag& b);

/**
 * Text key identical for exactly the isomorphic TDAGs: nodes numbered in
 * breadth-first order from the root, following arcs in feature order.
 */
std::string canonical_form(const Tdag& t);

struct Unified
{
    Tdag result;
};

/// Two green atoms disagree; resolution is postponed to the caller.
struct Indefinite
{
    std::string first_atom;
    std::string second_atom;
    Path path;
};

struct Failure
{
    std::string reason;
    Path path;
};

using UnifyOutcome = std::variant<Unified, Indefinite, Failure>;

/**
 * Unifies `a` and `b` at their roots. Merged colors follow the join
 * red > yellow > green. Conflicting atoms fail unless every conflicting atom is
 * green, in which case the outcome is Indefinite.
 *
 * Throws ContractError if either argument is not well-formed.
 */
UnifyOutcome unify(const Tdag& a, const Tdag& b);

/// The red nodes and arcs of `t` (t_min).
Tdag red_core(const Tdag& t);

/// `t` with every node and arc recolored red (t_max).
Tdag saturate(const Tdag& t);

/// Every root path to every node; paths of one node are sorted.
std::vector<std::vector<Path>> root_paths(const Tdag& t);

} // namespace tricolor
