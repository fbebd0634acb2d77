#include "oracles.hpp"

#include "tricolor/analyzer.hpp"
#include "tricolor/tdag_text.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace tricolor;

namespace
{

Grammar grammar(const std::string& name) { return load_grammar(std::string(TRICOLOR_DATA_DIR) + "/" + name); }
Tdag fixture(const std::string& name) { return load_tdag(std::string(TRICOLOR_DATA_DIR) + "/" + name); }

std::string analysis_error(const std::string& sentence, const Grammar& g)
{
    try
    {
        analyze(tokenize(sentence), g);
    }
    catch (const AnalysisError& e)
    {
        return e.what();
    }
    ADD_FAILURE() << "analyzed: " << sentence;
    return {};
}

} // namespace

TEST(Tokenize, SplitsWordsAndDropsFinalPunctuation)
{
    EXPECT_EQ(tokenize("John wished to walk."), (std::vector<std::string>{"John", "wished", "to", "walk"}));
    EXPECT_EQ(tokenize("  The Boston   office called "),
              (std::vector<std::string>{"The", "Boston", "office", "called"}));
    EXPECT_TRUE(tokenize("").empty());
}

TEST(Analyze, JohnWishedToWalkYieldsTheControlReentrancy)
{
    Analysis a = analyze(tokenize("John wished to walk"), grammar("en.patr"));
    EXPECT_TRUE(iso_equal(a.tdag, fixture("wish_en.tdag"))) << serialize_tdag(a.tdag);
    const Tdag& t = a.tdag;
    NodeId wish = t.arc(*t.find_arc(t.root(), "pred")).to;
    NodeId john = t.arc(*t.find_arc(wish, "agent")).to;
    NodeId walk = t.arc(*t.find_arc(wish, "theme")).to;
    EXPECT_EQ(t.arc(*t.find_arc(walk, "agent")).to, john);
    EXPECT_EQ(a.parse_count, 1u);
}

TEST(Analyze, BostonOfficeIsAllRed)
{
    Grammar en = grammar("en.patr");
    Analysis a = analyze(tokenize("The Boston office called"), en);
    for (const Node& n : a.tdag.nodes())
        EXPECT_EQ(n.color, Color::Red);
    // Contextual processing only adds to the analysis.
    EXPECT_TRUE(subsumes(a.tdag, saturate(fixture("boston.tdag"))));
    EXPECT_EQ(surface(a.tree, en), "The Boston office called");
    EXPECT_EQ(a.tdag.element_count(), 17u);
}

TEST(Analyze, JapaneseSentence)
{
    Analysis a = analyze(tokenize("Boston deno jimusho ha yobi mashita"), grammar("ja.patr"));
    const Tdag expected = parse_tdag("root top\nnode top color=red\nnode call color=red\nnode cc color=red label=*CALL\n"
                                     "node office color=red\nnode oc color=red label=*OFFICE\n"
                                     "node boston color=red\nnode bc color=red label=*BOSTON\n"
                                     "arc top pred call color=red\narc call concept cc color=red\n"
                                     "arc call agent office color=red\narc office concept oc color=red\n"
                                     "arc office mod boston color=red\narc boston concept bc color=red\n");
    EXPECT_TRUE(iso_equal(a.tdag, expected)) << serialize_tdag(a.tdag);
}

TEST(Analyze, Failures)
{
    Grammar en = grammar("en.patr");
    EXPECT_NE(analysis_error("John sang", en).find("sang"), std::string::npos);
    EXPECT_NE(analysis_error("walk John", en).find("no complete S analysis"), std::string::npos);
    EXPECT_FALSE(analysis_error("", en).empty());
}

TEST(Analyze, AmbiguityPrefersEarlierRulesAndCountsParses)
{
    // "old men and women": the adjective scopes over one noun or both.
    Grammar g = parse_grammar("start NP\n"
                              "rule adj-np NP -> ADJ NP\n"
                              "  <$0 pred> = <$2 pred>\n"
                              "  <$0 pred mod> = <ADJ pred>\n"
                              "rule coord NP -> NP CONJP\n"
                              "  <$0 pred> = <CONJP pred>\n"
                              "  <$0 pred first> = <$1 pred>\n"
                              "rule conjp CONJP -> CONJ NP\n"
                              "  <CONJP pred second> = <NP pred>\n"
                              "  <CONJP pred> = <CONJ pred>\n"
                              "rule old ADJ -> \"old\"\n"
                              "  <ADJ pred> = *OLD\n"
                              "rule and CONJ -> \"and\"\n"
                              "  <CONJ pred> = *AND\n"
                              "rule men NP -> \"men\"\n"
                              "  <NP pred> = *MAN\n"
                              "rule women NP -> \"women\"\n"
                              "  <NP pred> = *WOMAN\n");
    const std::vector<std::string> tokens = tokenize("old men and women");
    Analysis a = analyze(tokens, g);

    // Every tree of the grammar whose words are the input.
    std::vector<DerivationTree> parses;
    for (const DerivationTree& tree : testkit::all_trees(g, 5))
    {
        if (surface(tree, g) == "old men and women")
            parses.push_back(tree);
    }
    ASSERT_EQ(parses.size(), 2u);
    EXPECT_EQ(a.parse_count, parses.size());
    std::sort(parses.begin(), parses.end(),
              [](const auto& x, const auto& y) { return preorder_rules(x) < preorder_rules(y); });
    EXPECT_EQ(a.tree, parses.front());
    EXPECT_EQ(bracketed(a.tree, g), "(NP (ADJ old) (NP (NP men) (CONJP (CONJ and) (NP women))))");
}
