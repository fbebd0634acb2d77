#include "oracles.hpp"
#include "random_tdag.hpp"

#include "tricolor/tdag_text.hpp"
#include "tricolor/well_formed.hpp"

#include <gtest/gtest.h>

using namespace tricolor;

namespace
{

std::vector<Condition> conditions(std::string_view text)
{
    std::vector<Condition> out;
    for (const Violation& v : check_well_formed(parse_tdag(text, FeaturePolicy::AllowDuplicates)))
        out.push_back(v.condition);
    return out;
}

} // namespace

TEST(CheckWellFormed, EachConditionDetectedAlone)
{
    using V = std::vector<Condition>;
    EXPECT_EQ(conditions("root r\nnode r color=yellow\n"), V{Condition::W1});
    EXPECT_EQ(conditions("root r\nnode r color=red\nnode x color=yellow\narc r f x color=red\n"), V{Condition::W2});
    EXPECT_EQ(conditions("root r\nnode r color=red\nnode x color=red\narc r f x color=yellow\n"), V{Condition::W3});
    EXPECT_EQ(conditions("root r\nnode r color=red\nnode x color=yellow\narc r f x color=green\n"), V{Condition::W4});
    EXPECT_EQ(conditions("root r\nnode r color=red\nnode x color=green\narc r f x color=yellow\n"), V{Condition::W5});
    EXPECT_EQ(conditions("root r\nnode r color=red\nnode a color=red\nnode b color=red\n"
                         "arc r f a color=red\narc r f b color=red\n"),
              V{Condition::W6});
}

TEST(CheckWellFormed, ReachabilityMayUseAnyStrongEnoughPath)
{
    // x is reachable through a green arc and through a red path.
    EXPECT_TRUE(conditions("root r\nnode r color=red\nnode m color=red\nnode x color=red\n"
                           "arc r f x color=green\narc r g m color=red\narc m h x color=red\n")
                    .empty());
}

TEST(CheckWellFormed, ViolationNamesTheElement)
{
    Tdag t = parse_tdag("root r\nnode r color=red\nnode x color=green\narc r f x color=yellow\n");
    auto v = check_well_formed(t);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].element, ElementRef{ArcId{0}});
    EXPECT_FALSE(v[0].message.empty());
    EXPECT_EQ(to_string(Condition::W5), "W5");
}

TEST(CheckWellFormed, AgreesWithPathOracleOnRandomColorings)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i)
    {
        Tdag t = testkit::random_tdag(rng);
        // Scramble colors without regard to the conditions.
        std::vector<std::pair<ElementRef, Color>> changes;
        std::uniform_int_distribution<int> color(0, 2);
        for (const Node& n : t.nodes())
            changes.push_back({n.id, static_cast<Color>(color(rng))});
        for (const Arc& a : t.arcs())
            changes.push_back({a.id, static_cast<Color>(color(rng))});
        Tdag scrambled = t.recolored(changes);
        ASSERT_EQ(check_well_formed(scrambled).empty(), testkit::brute_well_formed(scrambled)) << serialize_tdag(scrambled);
        ASSERT_EQ(scrambled.well_formed(), testkit::brute_well_formed(scrambled));
    }
}

TEST(RandomTdag, IsWellFormedByConstruction)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i)
    {
        Tdag t = testkit::random_tdag(rng);
        ASSERT_TRUE(t.well_formed()) << serialize_tdag(t);
    }
}
