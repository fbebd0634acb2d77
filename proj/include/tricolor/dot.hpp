/**
 * @file dot.hpp
 * @brief Graphviz rendering of TDAGs.
 */
#pragma once

#include "tricolor/tdag.hpp"

#include <string>

namespace tricolor
{

/**
 * DOT digraph of `t`. Nodes appear in id order, arcs in (node, feature)
 * order; red, yellow and green map to the Graphviz colors red, gold and
 * green. Atoms are shown as node labels, features as arc labels.
 */
std::string export_dot(const Tdag& t);

} // namespace tricolor
