/**
 * @file strategy.hpp
 * @brief Data-driven transfer heuristics and op enumeration.
 *
 * Strategy file, one entry per line (`#` starts a comment):
 * @code
 * strategy <name> match-feature=<regex> action=<paint-yellow|paint-green> [target=shared]
 * @endcode
 */
#pragma once

#include "tricolor/transfer.hpp"

#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace tricolor
{

enum class StrategyAction
{
    /// Weaken matching red elements to yellow.
    PaintYellow,
    /// Weaken matching elements one step (red to yellow, yellow to green).
    PaintGreen,
};

struct Strategy
{
    std::string name;
    /// ECMAScript regex matched against the whole feature name.
    std::string feature_pattern;
    StrategyAction action = StrategyAction::PaintYellow;
    /**
     * Only arcs into a reentrant node that do not lie on the node's least
     * root path, i.e. the controlled occurrence of a shared value.
     */
    bool shared_only = false;
};

/**
 * @brief Ordered list of heuristic op generators.
 *
 * Each entry scans the arcs whose feature matches its pattern. It proposes a
 * paint of the arc when that is legal; otherwise it proposes a paint of the
 * arc's target node when the node has the arc's color and may be painted.
 */
class StrategyTable
{
public:
    StrategyTable() = default;
    explicit StrategyTable(std::vector<Strategy> entries);

    const std::vector<Strategy>& entries() const noexcept { return m_entries; }

    /// Ops proposed by entry `index`, in arc-id order.
    std::vector<TransferOp> propose(std::size_t index, const Tdag& t) const;

private:
    std::vector<Strategy> m_entries;
    std::vector<std::regex> m_patterns;
};

/// Throws ParseError on malformed entries or invalid regexes.
StrategyTable parse_strategies(std::string_view text);
std::string serialize_strategies(const StrategyTable& table);

/// Functional control, relative-clause gaps, number/definiteness, passivization.
StrategyTable default_strategies();

/**
 * Strategy ops in table order, then every legal paint in node-id then arc-id
 * order, without duplicates.
 */
std::vector<TransferOp> enumerate_ops(const Tdag& t, const StrategyTable& strategies);

} // namespace tricolor
