/**
 * @file well_formed.hpp
 * @brief Well-formedness conditions W1-W6 for tricolor DAGs.
 */
#pragma once

#include "tricolor/tdag.hpp"

#include <string>
#include <vector>

namespace tricolor
{

enum class Condition : std::uint8_t
{
    W1 = 1, ///< The root is red.
    W2,     ///< Every red arc connects two red nodes.
    W3,     ///< Every red node is reachable from the root through red arcs and nodes.
    W4,     ///< Every yellow node is reachable through red/yellow arcs and nodes.
    W5,     ///< Every yellow arc connects red and/or yellow nodes.
    W6,     ///< No two arcs leave one node with the same feature.
};

struct Violation
{
    Condition condition;
    ElementRef element;
    std::string message;
};

std::string_view to_string(Condition c) noexcept;

/// All violations, ordered by condition and then by element id. Empty means well-formed.
std::vector<Violation> check_well_formed(const Tdag& t);

} // namespace tricolor
