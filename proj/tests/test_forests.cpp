#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fscheme/errors.hpp"
#include "fscheme/forests.hpp"
#include "oracles.hpp"

using namespace fscheme;

namespace {

const ForestLetter kLetters[] = {{Generator::x0, false}, {Generator::x0, true},  {Generator::x1, false},
                                 {Generator::x1, true},  {Generator::xb1, false}, {Generator::xb1, true},
                                 {Generator::x2, false}, {Generator::x2, true}};

std::set<std::string> encodings(const std::vector<MarkedForest>& forests)
{
    std::set<std::string> out;
    for (const auto& f : forests) out.insert(f.encode());
    return out;
}

}  // namespace

TEST(MarkedForest, Encoding)
{
    const auto f = MarkedForest::decode("(..);.*;(..)");
    EXPECT_EQ(f.trees.size(), 3U);
    EXPECT_EQ(f.mark, 1U);
    EXPECT_EQ(f.leaves(), 5U);
    EXPECT_EQ(f.encode(), "(..);.*;(..)");
    EXPECT_THROW(MarkedForest::decode("(..);."), ParseError);
    EXPECT_THROW(MarkedForest::decode(".*;.*"), ParseError);
    EXPECT_THROW(MarkedForest::decode(".*;"), ParseError);
}

TEST(ForestLetter, Parse)
{
    EXPECT_EQ(ForestLetter::parse("xb1^-1").name(), "xb1^-1");
    EXPECT_EQ(ForestLetter::parse("x2").generator, Generator::x2);
    EXPECT_THROW(ForestLetter::parse("x3"), ParseError);
}

TEST(Act, Examples)
{
    const auto f = MarkedForest::decode(".;.*");
    EXPECT_EQ(act({Generator::x0, false}, f, 1)->encode(), ".*;.");
    EXPECT_FALSE(act({Generator::x1, false}, f, 1).has_value());
    EXPECT_FALSE(act({Generator::x0, true}, f, 1).has_value());
    EXPECT_EQ(act({Generator::xb1, true}, f, 1)->encode(), "(..)*");
    EXPECT_FALSE(act({Generator::xb1, true}, f, 0).has_value());

    const auto g = MarkedForest::decode("(.(..))*;.");
    EXPECT_EQ(act({Generator::x1, false}, g, 2)->encode(), ".*;(..);.");
    EXPECT_EQ(act({Generator::xb1, false}, g, 2)->encode(), ".;(..)*;.");
    EXPECT_FALSE(act({Generator::x1, true}, g, 2).has_value());
    EXPECT_EQ(act({Generator::x1, true}, g, 3)->encode(), "((.(..)).)*");
}

TEST(Act, InversesAndInvariants)
{
    for (int k = 0; k <= 3; ++k)
        for (std::size_t n = 1; n <= 6; ++n)
            for (const auto& f : enumerate_bb(n, k))
                for (const auto& a : kLetters) {
                    const auto g = act(a, f, k);
                    if (!g) continue;
                    EXPECT_EQ(g->leaves(), n);
                    for (const auto& t : g->trees) EXPECT_LE(t.height(), k);
                    const auto back = act(a.inverted(), *g, k);
                    ASSERT_TRUE(back.has_value()) << a.name() << " " << f.encode();
                    EXPECT_EQ(*back, f);
                }
}

TEST(Act, X2NeedsNontrivialRightNeighbour)
{
    for (int k = 0; k <= 3; ++k)
        for (std::size_t n = 1; n <= 6; ++n)
            for (const auto& f : enumerate_bb(n, k)) {
                const bool expected = f.mark + 1 < f.trees.size() && !f.trees[f.mark + 1].is_leaf();
                EXPECT_EQ(act({Generator::x2, false}, f, k).has_value(), expected) << f.encode();
            }
}

TEST(EnumerateBB, MatchesBruteForce)
{
    for (int k = 0; k <= 3; ++k)
        for (std::size_t n = 1; n <= 7; ++n) {
            const auto got = enumerate_bb(n, k);
            const auto expected = oracle::marked_forests(n, k);
            EXPECT_EQ(got.size(), expected.size());
            EXPECT_EQ(encodings(got), encodings(expected)) << "n=" << n << " k=" << k;
            EXPECT_EQ(encodings(got).size(), got.size());
        }
}

TEST(EnumerateBB, SmallCases)
{
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(enumerate_bb(n, 0).size(), n);
    EXPECT_EQ(enumerate_bb(2, 1).size(), 3U);
    EXPECT_THROW(enumerate_bb(0, 1), PreconditionError);
    EXPECT_THROW(enumerate_bb(2, -1), PreconditionError);
    EXPECT_THROW(enumerate_bb(8, 3, 100), BudgetExceeded);
}

TEST(EnumerateBB, UnboundedCapGivesCatalan)
{
    for (std::size_t n = 1; n <= 7; ++n) {
        const auto forests = enumerate_bb(n, static_cast<int>(n) - 1);
        const auto unmarked = std::count_if(forests.begin(), forests.end(), [](const auto& f) { return f.mark == 0; });
        EXPECT_EQ(BigInt(static_cast<long>(unmarked)), oracle::catalan(n));
    }
    EXPECT_EQ(oracle::catalan(3), 5);
}

TEST(BBAutomaton, TwoLeavesOverX1Xb1)
{
    const auto y = bb_automaton(2, 1, GenAlphabet::parse("x1,xb1"));
    ASSERT_EQ(y.size(), 3U);
    const auto caret = *y.find("(..)*");
    const auto left = *y.find(".*;.");
    const auto right = *y.find(".;.*");
    EXPECT_EQ(y.target(caret, 0), left);
    EXPECT_EQ(y.target(caret, 2), right);
    EXPECT_EQ(y.target(left, 1), caret);
    EXPECT_EQ(y.target(right, 3), caret);
    EXPECT_EQ(y.degree(left), 1U);
    EXPECT_EQ(y.degree(right), 1U);
    EXPECT_EQ(y.degree(caret), 2U);
}

TEST(BBAutomaton, NuX1CountsTrivialMarkedTrees)
{
    const auto alphabet = GenAlphabet::parse("x0,x1");
    for (int k = 0; k <= 3; ++k)
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto y = bb_automaton(n, k, alphabet);
            std::size_t trivial = 0;
            for (const auto& key : y.keys()) trivial += MarkedForest::decode(key).marked().is_leaf();
            EXPECT_EQ(boundary_report(y).nu[2], trivial);
        }
}

TEST(BBAutomaton, UnknownLetter)
{
    EXPECT_THROW(bb_automaton(2, 1, GenAlphabet::abstract({"a"})), ParseError);
}

TEST(Y0, Members)
{
    EXPECT_TRUE(find_y0(5, 0).empty());
    const auto y0 = encodings(find_y0(5, 1));
    EXPECT_TRUE(y0.count("(..);.*;(..)"));
    EXPECT_EQ(y0.size(), 1U);
}

TEST(Y0, IsolatedUnderX1AndAcceptsX0)
{
    const auto sym = GenAlphabet::parse("x1,xb1");
    const auto full = GenAlphabet::parse("x0,x1,xb1");
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = 1; n <= 8; ++n) {
            const auto members = find_y0(n, k);
            if (members.empty()) continue;
            const auto a = bb_automaton(n, k, sym);
            const auto b = bb_automaton(n, k, full);
            for (const auto& f : members) {
                EXPECT_EQ(a.degree(*a.find(f.encode())), 0U);
                const auto v = *b.find(f.encode());
                EXPECT_TRUE(b.accepts(v, 0));
                EXPECT_TRUE(b.accepts(v, 1));
                EXPECT_EQ(b.degree(v), 2U);
            }
        }
}
