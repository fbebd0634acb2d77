/**
 * @file universe.hpp
 * @brief Exhaustive enumeration of small well-formed TDAGs (test support).
 */
#pragma once

#include "tricolor/tdag.hpp"

#include <cstddef>
#include <vector>

namespace tricolor::testkit
{

struct UniverseSpec
{
    std::size_t max_nodes = 4;
    std::size_t feature_count = 2; ///< features "f", "g", ...
    std::size_t atom_count = 2;    ///< atoms "*A", "*B", ...
};

/**
 * Every well-formed TDAG within the bounds, one per isomorphism class.
 *
 * Shapes are enumerated as adjacency tables and kept only when their
 * breadth-first numbering is the identity, which picks one representative
 * per class. Colorings are filtered by a direct transcription of W1-W5 that
 * does not share code with check_well_formed().
 */
std::vector<Tdag> enumerate_universe(const UniverseSpec& spec = {});

/// Number of distinct uncolored shapes (for reporting).
std::size_t count_shapes(const UniverseSpec& spec = {});

} // namespace tricolor::testkit
