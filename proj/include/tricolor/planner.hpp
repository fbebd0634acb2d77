/**
 * @file planner.hpp
 * @brief Best-first search for a transfer sequence the target side accepts.
 */
#pragma once

#include "tricolor/strategy.hpp"

#include <cstddef>
#include <functional>
#include <variant>

namespace tricolor
{

/// Per-op search costs. Uniform by default, so cost equals op count.
struct PlannerCosts
{
    unsigned red_to_yellow = 1;
    unsigned yellow_to_green = 1;
    unsigned addition = 1;
};

/// The search ran out of ops within the budget.
struct Exhaustion
{
    /// Distinct TDAGs taken off the frontier, including the initial one.
    std::size_t states_explored = 0;
};

using PlanResult = std::variant<TransferTrace, Exhaustion>;

using AcceptPredicate = std::function<bool(const Tdag&)>;

/**
 * Searches op sequences of at most `budget` ops, cheapest first; among equal
 * costs, earlier-found sequences and earlier ops from enumerate_ops() win.
 * States are deduplicated up to isomorphism. Returns the first trace whose
 * final TDAG satisfies `accept`.
 */
PlanResult plan_transfer(const Tdag& t, const AcceptPredicate& accept, const StrategyTable& strategies,
                         std::size_t budget, const PlannerCosts& costs = {});

} // namespace tricolor
