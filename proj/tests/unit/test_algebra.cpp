#include "lattice_laws.hpp"
#include "oracles.hpp"
#include "random_tdag.hpp"
#include "universe.hpp"

#include "tricolor/algebra.hpp"
#include "tricolor/tdag_text.hpp"
#include "tricolor/transfer.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <utility>

using namespace tricolor;

namespace
{

Tdag arc_to(Color arc_and_node, std::optional<std::string> label = std::nullopt)
{
    TdagBuilder b;
    NodeId r = b.add_node(Color::Red);
    NodeId x = b.add_node(arc_and_node, std::move(label));
    b.add_arc(r, "f", x, arc_and_node);
    return b.build(r);
}

Tdag root_only()
{
    TdagBuilder b;
    return b.build(b.add_node(Color::Red));
}

const std::vector<Tdag>& small_universe()
{
    static const std::vector<Tdag> u = testkit::enumerate_universe({3, 2, 2});
    return u;
}

} // namespace

TEST(Subsumes, ColorsFollowTheTable)
{
    for (Color g : kAllColors)
    {
        for (Color s : kAllColors)
            EXPECT_EQ(subsumes(arc_to(g), arc_to(s)), color_subsumes(g, s)) << to_string(g) << " vs " << to_string(s);
    }
}

TEST(Subsumes, StructureLabelsAndReentrancy)
{
    Tdag two_paths = parse_tdag("root r\nnode r color=red\nnode a color=red\nnode b color=red\n"
                                "arc r f a color=red\narc r g b color=red\n");
    Tdag shared = parse_tdag("root r\nnode r color=red\nnode a color=red\n"
                             "arc r f a color=red\narc r g a color=red\n");
    EXPECT_TRUE(subsumes(root_only(), two_paths));
    EXPECT_FALSE(subsumes(two_paths, root_only()));
    EXPECT_TRUE(subsumes(two_paths, shared)) << "a reentrancy adds information";
    EXPECT_FALSE(subsumes(shared, two_paths));
    EXPECT_TRUE(subsumes(arc_to(Color::Red), arc_to(Color::Red, "*A")));
    EXPECT_FALSE(subsumes(arc_to(Color::Red, "*A"), arc_to(Color::Red)));
    EXPECT_FALSE(subsumes(arc_to(Color::Red, "*A"), arc_to(Color::Red, "*B")));
}

TEST(Subsumes, RejectsIllFormedInput)
{
    Tdag bad = parse_tdag("root r\nnode r color=yellow\n");
    EXPECT_THROW(subsumes(bad, root_only()), ContractError);
    EXPECT_THROW(unify(root_only(), bad), ContractError);
}

TEST(Subsumes, AgreesWithBruteForceOnSmallUniverse)
{
    const auto& u = small_universe();
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    for (int i = 0; i < 20000; ++i)
    {
        const Tdag& a = u[pick(rng)];
        const Tdag& b = u[pick(rng)];
        ASSERT_EQ(subsumes(a, b), testkit::brute_subsumes(a, b)) << serialize_tdag(a) << "--\n" << serialize_tdag(b);
    }
}

TEST(Subsumes, AgreesWithBruteForceOnRandomTdags)
{
    std::mt19937 rng(5);
    testkit::RandomTdagSpec spec;
    spec.max_nodes = 6;
    spec.features = {"f", "g"};
    spec.atoms = {"*A", "*B"};
    for (int i = 0; i < 3000; ++i)
    {
        Tdag a = testkit::random_tdag(rng, spec);
        Tdag b = testkit::random_tdag(rng, spec);
        ASSERT_EQ(subsumes(a, b), testkit::brute_subsumes(a, b)) << serialize_tdag(a) << "--\n" << serialize_tdag(b);
        // The unifier, when it exists, is the obvious candidate above both.
        UnifyOutcome o = unify(a, b);
        if (const auto* u = std::get_if<Unified>(&o))
        {
            ASSERT_TRUE(testkit::brute_subsumes(a, u->result));
            ASSERT_TRUE(testkit::brute_subsumes(b, u->result));
        }
    }
}

TEST(Unify, JoinsColors)
{
    for (Color x : kAllColors)
    {
        for (Color y : kAllColors)
        {
            UnifyOutcome o = unify(arc_to(x), arc_to(y));
            ASSERT_TRUE(std::holds_alternative<Unified>(o));
            const Tdag& u = std::get<Unified>(o).result;
            ASSERT_EQ(u.arc_count(), 1u);
            EXPECT_EQ(u.arc(ArcId{0}).color, join(x, y));
            EXPECT_EQ(u.node(u.arc(ArcId{0}).to).color, join(x, y));
        }
    }
}

TEST(Unify, MergesPathsAndAddsReentrancies)
{
    Tdag left = parse_tdag("root r\nnode r color=red\nnode a color=red\nnode b color=red label=*A\n"
                           "arc r f a color=red\narc a h b color=red\n");
    Tdag right = parse_tdag("root r\nnode r color=red\nnode a color=red\narc r f a color=red\narc r g a color=red\n");
    UnifyOutcome o = unify(left, right);
    ASSERT_TRUE(std::holds_alternative<Unified>(o));
    const Tdag& u = std::get<Unified>(o).result;
    EXPECT_EQ(u.node_count(), 3u);
    EXPECT_EQ(u.arc_count(), 3u);
    EXPECT_TRUE(subsumes(left, u));
    EXPECT_TRUE(subsumes(right, u));
    EXPECT_EQ(u.arc(*u.find_arc(u.root(), "f")).to, u.arc(*u.find_arc(u.root(), "g")).to);
}

TEST(Unify, ConflictingAtoms)
{
    auto outcome = [](Color x, Color y) { return unify(arc_to(x, "*B"), arc_to(y, "*A")); };
    // Two green atoms: postponed to the caller, atoms reported in order.
    UnifyOutcome green = outcome(Color::Green, Color::Green);
    ASSERT_TRUE(std::holds_alternative<Indefinite>(green));
    EXPECT_EQ(std::get<Indefinite>(green).first_atom, "*A");
    EXPECT_EQ(std::get<Indefinite>(green).second_atom, "*B");
    EXPECT_EQ(std::get<Indefinite>(green).path, (Path{"f"}));
    // Any stronger atom in the clash fails outright.
    for (auto [x, y] : {std::pair{Color::Red, Color::Red}, {Color::Red, Color::Green}, {Color::Yellow, Color::Green},
                        {Color::Yellow, Color::Yellow}})
    {
        UnifyOutcome o = outcome(x, y);
        ASSERT_TRUE(std::holds_alternative<Failure>(o)) << to_string(x) << "/" << to_string(y);
        EXPECT_EQ(std::get<Failure>(o).path, (Path{"f"}));
    }
}

TEST(Unify, AtomAgainstComplexNodeFails)
{
    Tdag atom = arc_to(Color::Red, "*A");
    Tdag complex = parse_tdag("root r\nnode r color=red\nnode a color=red\nnode b color=red\n"
                              "arc r f a color=red\narc a g b color=red\n");
    UnifyOutcome o = unify(atom, complex);
    ASSERT_TRUE(std::holds_alternative<Failure>(o));
    EXPECT_NE(std::get<Failure>(o).reason.find("*A"), std::string::npos);
}

TEST(Unify, CycleFails)
{
    Tdag loop = parse_tdag("root r\nnode r color=red\nnode a color=red\nnode b color=red\n"
                           "arc r f a color=red\narc r h b color=red\narc b g a color=red\n");
    Tdag tie = parse_tdag("root r\nnode r color=red\nnode a color=red\narc r f a color=red\narc r h a color=red\n");
    // f = h and h.g = f would make a node its own child.
    UnifyOutcome o = unify(loop, tie);
    ASSERT_TRUE(std::holds_alternative<Failure>(o));
    EXPECT_EQ(std::get<Failure>(o).reason, "unification creates a cycle");
}

TEST(Unify, IsCommutativeUpToIsomorphism)
{
    std::mt19937 rng(8);
    for (int i = 0; i < 1000; ++i)
    {
        Tdag a = testkit::random_tdag(rng);
        Tdag b = testkit::random_tdag(rng);
        UnifyOutcome ab = unify(a, b);
        UnifyOutcome ba = unify(b, a);
        ASSERT_EQ(ab.index(), ba.index());
        if (ab.index() == 0)
        {
            ASSERT_TRUE(iso_equal(std::get<Unified>(ab).result, std::get<Unified>(ba).result));
        }
    }
}

TEST(LatticeLaws, HoldExhaustivelyOnThreeNodeUniverse)
{
    const testkit::LatticeReport r = testkit::check_lattice_laws(small_universe(), std::nullopt);
    EXPECT_TRUE(r.completed);
    EXPECT_EQ(r.violations, 0u) << (r.examples.empty() ? "" : r.examples.front());
    EXPECT_EQ(r.unifications, r.elements * (r.elements + 1) / 2);
}

TEST(CanonicalForm, IdentifiesExactlyIsomorphicTdags)
{
    Tdag a = parse_tdag("root r\nnode r color=red\nnode x color=red label=*A\nnode y color=yellow\n"
                        "arc r f x color=red\narc r g y color=yellow\n");
    Tdag b = parse_tdag("root top\nnode y2 color=yellow\nnode top color=red\nnode x2 color=red label=*A\n"
                        "arc top g y2 color=yellow\narc top f x2 color=red\n");
    Tdag c = parse_tdag("root r\nnode r color=red\nnode x color=red label=*A\nnode y color=green\n"
                        "arc r f x color=red\narc r g y color=green\n");
    EXPECT_EQ(canonical_form(a), canonical_form(b));
    EXPECT_TRUE(iso_equal(a, b));
    EXPECT_NE(canonical_form(a), canonical_form(c));
    EXPECT_FALSE(iso_equal(a, c));

    const auto& u = small_universe();
    std::set<std::string> keys;
    for (const Tdag& t : u)
        keys.insert(canonical_form(t));
    EXPECT_EQ(keys.size(), u.size()) << "the universe holds one TDAG per class";
}

TEST(RedCoreAndSaturate, BracketTheOriginal)
{
    std::mt19937 rng(2);
    for (int i = 0; i < 500; ++i)
    {
        Tdag t = testkit::random_tdag(rng);
        Tdag core = red_core(t);
        Tdag full = saturate(t);
        for (const Node& n : core.nodes())
            ASSERT_EQ(n.color, Color::Red);
        for (const Node& n : full.nodes())
            ASSERT_EQ(n.color, Color::Red);
        ASSERT_EQ(full.element_count(), t.element_count());
        ASSERT_TRUE(subsumes(core, t));
        ASSERT_TRUE(subsumes(t, full));
    }
}

TEST(RootPaths, ListsEveryPathSorted)
{
    Tdag t = parse_tdag("root r\nnode r color=red\nnode a color=red\nnode b color=red\n"
                        "arc r g a color=red\narc r f b color=red\narc b h a color=red\n");
    auto paths = root_paths(t);
    EXPECT_EQ(paths[0], (std::vector<Path>{{}}));
    EXPECT_EQ(paths[1], (std::vector<Path>{{"f", "h"}, {"g"}}));
    EXPECT_EQ(paths[2], (std::vector<Path>{{"f"}}));
    EXPECT_EQ(path_to_string({"pred", "agent"}), "<pred agent>");
}

TEST(Subsumes, GreenAtomCoversAnyColor)
{
    auto agent = [](Color c) {
        TdagBuilder b;
        NodeId r = b.add_node(Color::Red);
        NodeId p = b.add_node(Color::Red);
        NodeId j = b.add_node(c, "*JOHN");
        b.add_arc(r, "pred", p, Color::Red);
        b.add_arc(p, "agent", j, c);
        return b.build(r);
    };
    EXPECT_TRUE(subsumes(agent(Color::Green), agent(Color::Red)));
    EXPECT_FALSE(subsumes(agent(Color::Red), agent(Color::Yellow)));
    EXPECT_TRUE(subsumes(agent(Color::Yellow), agent(Color::Red)));

    UnifyOutcome o = unify(agent(Color::Red), agent(Color::Green));
    ASSERT_TRUE(std::holds_alternative<Unified>(o));
    EXPECT_TRUE(iso_equal(std::get<Unified>(o).result, agent(Color::Red)));
}

TEST(Unify, NumberColorsAndIndefiniteNumber)
{
    auto number = [](Color c, const char* value) {
        return parse_tdag(std::string("root r\nnode r color=red\nnode n color=") + std::string(to_string(c)) +
                          " label=" + value + "\narc r num n color=" + std::string(to_string(c)) + "\n");
    };
    UnifyOutcome o = unify(number(Color::Yellow, "singular"), number(Color::Green, "singular"));
    ASSERT_TRUE(std::holds_alternative<Unified>(o));
    EXPECT_TRUE(iso_equal(std::get<Unified>(o).result, number(Color::Yellow, "singular")));
    UnifyOutcome clash = unify(number(Color::Green, "*SINGULAR"), number(Color::Green, "*PLURAL"));
    ASSERT_TRUE(std::holds_alternative<Indefinite>(clash));
    EXPECT_EQ(std::get<Indefinite>(clash).path, (Path{"num"}));
}

TEST(RedCoreAndSaturate, FixtureExamples)
{
    const std::string dir = std::string(TRICOLOR_DATA_DIR) + "/";
    Tdag boston = load_tdag(dir + "boston.tdag");
    Tdag core = red_core(boston);
    std::set<std::string> labels;
    for (const Node& n : core.nodes())
    {
        if (n.label)
            labels.insert(*n.label);
    }
    EXPECT_EQ(labels, (std::set<std::string>{"*BOSTON", "*CALL", "*OFFICE"}));
    EXPECT_EQ(core.arc_count(), 6u);

    Tdag green_child = parse_tdag("root r\nnode r color=red\nnode x color=green\narc r f x color=green\n");
    EXPECT_TRUE(iso_equal(red_core(green_child), root_only()));

    Tdag wish = load_tdag(dir + "wish_en.tdag");
    Tdag painted = replay_trace(wish, read_file(dir + "wish_transfer.ops")).final_tdag();
    EXPECT_TRUE(iso_equal(saturate(painted), wish));
    EXPECT_TRUE(iso_equal(saturate(wish), wish));
    EXPECT_TRUE(iso_equal(red_core(wish), wish));

    std::mt19937 rng(4);
    for (int i = 0; i < 200; ++i)
    {
        Tdag t = testkit::random_tdag(rng);
        ASSERT_TRUE(iso_equal(saturate(red_core(t)), red_core(t)));
    }
}

TEST(IsoEqual, IgnoresNamesButNotColors)
{
    Tdag a = parse_tdag("root r\nnode r color=red\nnode x color=red label=*A\narc r f x color=red\n");
    Tdag renamed = parse_tdag("root top\nnode leaf color=red label=*A\nnode top color=red\narc top f leaf color=red\n");
    EXPECT_TRUE(iso_equal(a, renamed));
    EXPECT_FALSE(iso_equal(a, a.recolored(std::vector<std::pair<ElementRef, Color>>{{ArcId{0}, Color::Yellow}})));
}
