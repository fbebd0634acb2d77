#include "oracles.hpp"

#include "tricolor/planner.hpp"
#include "tricolor/tdag_text.hpp"

#include <gtest/gtest.h>

using namespace tricolor;

namespace
{

Tdag fixture(const std::string& name) { return load_tdag(std::string(TRICOLOR_DATA_DIR) + "/" + name); }

Color arc_color(const Tdag& t, std::string_view from, std::string_view feature)
{
    return t.arc(*t.find_arc(*t.find_node(from), feature)).color;
}

std::vector<std::string> trace_lines(const TransferTrace& trace)
{
    std::vector<std::string> lines;
    const Tdag* before = &trace.initial;
    for (const TransferStep& step : trace.steps)
    {
        lines.push_back(format_op(*before, step.op));
        before = &step.result;
    }
    return lines;
}

} // namespace

TEST(Strategies, DefaultTableRoundTripsThroughTheFixture)
{
    StrategyTable fromFile = parse_strategies(read_file(std::string(TRICOLOR_DATA_DIR) + "/strategies.cfg"));
    EXPECT_EQ(serialize_strategies(fromFile), serialize_strategies(default_strategies()));
    EXPECT_EQ(serialize_strategies(parse_strategies(serialize_strategies(fromFile))), serialize_strategies(fromFile));
    ASSERT_EQ(fromFile.entries().size(), 4u);
    EXPECT_EQ(fromFile.entries()[0].name, "functional-control");
    EXPECT_TRUE(fromFile.entries()[0].shared_only);
}

TEST(Strategies, MalformedEntriesAreParseErrors)
{
    EXPECT_THROW(parse_strategies("strategy x match-feature=( action=paint-yellow\n"), ParseError);
    EXPECT_THROW(parse_strategies("strategy x match-feature=a action=paint-blue\n"), ParseError);
    EXPECT_THROW(parse_strategies("tactic x match-feature=a action=paint-yellow\n"), ParseError);
}

TEST(Strategies, FunctionalControlTargetsTheControlledOccurrence)
{
    Tdag t = fixture("wish_en.tdag");
    std::vector<TransferOp> ops = default_strategies().propose(0, t);
    ASSERT_EQ(ops.size(), 1u);
    EXPECT_EQ(format_op(t, ops[0]), "paint walk/agent red yellow");
    // Strategy proposals come first, then the remaining legal paints, once each.
    std::vector<TransferOp> all = enumerate_ops(t, default_strategies());
    EXPECT_EQ(all.front(), ops[0]);
    for (std::size_t i = 0; i < all.size(); ++i)
    {
        for (std::size_t j = i + 1; j < all.size(); ++j)
            EXPECT_FALSE(all[i] == all[j]);
    }
}

TEST(Planner, WishPlanMatchesTheReplayFixture)
{
    Tdag t = fixture("wish_en.tdag");
    auto relaxed = [](const Tdag& u) {
        return arc_color(u, "walk", "agent") != Color::Red && arc_color(u, "john", "num") != Color::Red;
    };
    PlanResult r = plan_transfer(t, relaxed, default_strategies(), 4);
    ASSERT_TRUE(std::holds_alternative<TransferTrace>(r));
    const auto& trace = std::get<TransferTrace>(r);
    EXPECT_EQ(trace_lines(trace), (std::vector<std::string>{"paint walk/agent red yellow", "paint singular red yellow"}));
    TransferTrace replayed = replay_trace(t, read_file(std::string(TRICOLOR_DATA_DIR) + "/wish_transfer.ops"));
    EXPECT_TRUE(iso_equal(trace.final_tdag(), replayed.final_tdag()));
}

TEST(Planner, BostonNeedsTwoYellowToGreenPaints)
{
    Tdag t = fixture("boston.tdag");
    auto dropped = [](const Tdag& u) {
        return arc_color(u, "office", "def") == Color::Green && arc_color(u, "office", "num") == Color::Green;
    };
    PlanResult r = plan_transfer(t, dropped, default_strategies(), 4);
    ASSERT_TRUE(std::holds_alternative<TransferTrace>(r));
    EXPECT_EQ(trace_lines(std::get<TransferTrace>(r)),
              (std::vector<std::string>{"paint definite yellow green", "paint singular yellow green"}));
}

TEST(Planner, AcceptedInputNeedsNoOps)
{
    Tdag t = fixture("boston.tdag");
    PlanResult r = plan_transfer(t, [](const Tdag&) { return true; }, default_strategies(), 0);
    ASSERT_TRUE(std::holds_alternative<TransferTrace>(r));
    EXPECT_TRUE(std::get<TransferTrace>(r).steps.empty());
}

TEST(Planner, ExhaustionVisitsEveryReachableColoring)
{
    for (const char* name : {"wish_en.tdag", "boston.tdag"})
    {
        Tdag t = fixture(name);
        for (std::size_t budget : {0u, 1u, 2u, 3u})
        {
            PlanResult r = plan_transfer(t, [](const Tdag&) { return false; }, default_strategies(), budget);
            ASSERT_TRUE(std::holds_alternative<Exhaustion>(r));
            EXPECT_EQ(std::get<Exhaustion>(r).states_explored, testkit::count_paint_states(t, budget))
                << name << " budget " << budget;
        }
    }
}

TEST(Planner, CostsSteerTheChoice)
{
    Tdag t = fixture("wish_en.tdag");
    // Either drop the number outright (two paints of one node) or relax three
    // red elements one step each.
    auto accept = [](const Tdag& u) {
        const Color concept_color = u.node(*u.find_node("john-concept")).color;
        return arc_color(u, "john", "num") == Color::Green ||
               (arc_color(u, "walk", "agent") == Color::Yellow && arc_color(u, "john", "num") == Color::Yellow &&
                concept_color == Color::Yellow);
    };
    PlanResult uniform = plan_transfer(t, accept, default_strategies(), 4);
    ASSERT_TRUE(std::holds_alternative<TransferTrace>(uniform));
    EXPECT_EQ(trace_lines(std::get<TransferTrace>(uniform)),
              (std::vector<std::string>{"paint singular red yellow", "paint singular yellow green"}));

    PlannerCosts costs;
    costs.yellow_to_green = 5;
    PlanResult priced = plan_transfer(t, accept, default_strategies(), 4, costs);
    ASSERT_TRUE(std::holds_alternative<TransferTrace>(priced));
    EXPECT_EQ(std::get<TransferTrace>(priced).steps.size(), 3u);
}

TEST(Planner, RejectsIllFormedInput)
{
    Tdag bad = parse_tdag("root r\nnode r color=green\n");
    EXPECT_THROW(plan_transfer(bad, [](const Tdag&) { return true; }, default_strategies(), 1), ContractError);
}
