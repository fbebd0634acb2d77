#include "tricolor/planner.hpp"
#include "tricolor/algebra.hpp"

#include <queue>
#include <unordered_map>

namespace tricolor
{

namespace
{

unsigned op_cost(const TransferOp& op, const PlannerCosts& costs)
{
    if (std::holds_alternative<PaintRedToYellow>(op))
        return costs.red_to_yellow;
    if (std::holds_alternative<PaintYellowToGreen>(op))
        return costs.yellow_to_green;
    return costs.addition;
}

struct SearchNode
{
    Tdag tdag;
    std::size_t parent;
    std::optional<TransferOp> op;
    std::size_t depth;
    unsigned long cost;
};

struct Entry
{
    unsigned long cost;
    std::size_t order;

    bool operator>(const Entry& other) const
    {
        return cost != other.cost ? cost > other.cost : order > other.order;
    }
};

} // namespace

PlanResult plan_transfer(const Tdag& t, const AcceptPredicate& accept, const StrategyTable& strategies,
                         std::size_t budget, const PlannerCosts& costs)
{
    if (!t.well_formed())
        throw ContractError("plan_transfer: input TDAG is not well-formed");

    std::vector<SearchNode> nodes{{t, 0, std::nullopt, 0, 0}};
    std::unordered_map<std::string, unsigned long> best{{canonical_form(t), 0}};
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    frontier.push({0, 0});
    std::size_t explored = 0;

    while (!frontier.empty())
    {
        const std::size_t index = frontier.top().order;
        frontier.pop();
        if (nodes[index].cost > best[canonical_form(nodes[index].tdag)])
            continue;
        ++explored;

        if (accept(nodes[index].tdag))
        {
            std::vector<std::size_t> chain;
            for (std::size_t i = index; i != 0; i = nodes[i].parent)
                chain.push_back(i);
            TransferTrace trace{t, {}};
            for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                trace.steps.push_back({*nodes[*it].op, nodes[*it].tdag});
            return trace;
        }
        if (nodes[index].depth >= budget)
            continue;

        // Copy out: push_back below may reallocate `nodes`.
        const Tdag current = nodes[index].tdag;
        const std::size_t depth = nodes[index].depth;
        const unsigned long cost = nodes[index].cost;
        for (TransferOp& op : enumerate_ops(current, strategies))
        {
            Tdag next = apply_op(current, op);
            const unsigned long next_cost = cost + op_cost(op, costs);
            auto [it, inserted] = best.try_emplace(canonical_form(next), next_cost);
            if (!inserted)
            {
                if (it->second <= next_cost)
                    continue;
                it->second = next_cost;
            }
            nodes.push_back({std::move(next), index, std::move(op), depth + 1, next_cost});
            frontier.push({next_cost, nodes.size() - 1});
        }
    }
    return Exhaustion{explored};
}

} // namespace tricolor
