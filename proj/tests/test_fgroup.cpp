#include <gtest/gtest.h>

#include <random>

#include "fscheme/errors.hpp"
#include "fscheme/fgroup.hpp"

using namespace fscheme;

namespace {

FElement random_element(std::mt19937_64& rng, int length)
{
    static const FElement gens[] = {generator_x(0), generator_x(1)};
    FElement g;
    for (int i = 0; i < length; ++i) {
        const FElement& a = gens[rng() % 2];
        g = multiply(g, rng() % 2 ? a : invert(a));
    }
    return g;
}

}  // namespace

TEST(FGroup, BasePairs)
{
    EXPECT_EQ(generator_x(0).encode(), "((..).)|(.(..))");
    EXPECT_EQ(generator_x(1).encode(), "(.((..).))|(.(.(..)))");
    EXPECT_TRUE(FElement().is_identity());
    EXPECT_EQ(FElement().encode(), ".|.");
}

TEST(FGroup, ReducesOnConstruction)
{
    const auto t = TreeShape::decode("((..)(..))");
    EXPECT_TRUE(FElement(t, t).is_identity());
    EXPECT_THROW(FElement(t, TreeShape::decode("(..)")), PreconditionError);
    EXPECT_EQ(FElement::decode("((..)(..))|((..)(..))"), FElement());
}

TEST(FGroup, InfinitePresentationRelations)
{
    for (unsigned i = 0; i <= 6; ++i)
        for (unsigned j = i + 1; j <= 6; ++j)
            EXPECT_EQ(multiply(generator_x(j), generator_x(i)), multiply(generator_x(i), generator_x(j + 1)))
                << "i=" << i << " j=" << j;
}

TEST(FGroup, GroupAxiomsOnRandomElements)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_element(rng, 6), b = random_element(rng, 6), c = random_element(rng, 6);
        EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
        EXPECT_TRUE(multiply(a, invert(a)).is_identity());
        EXPECT_TRUE(multiply(invert(a), a).is_identity());
        EXPECT_EQ(multiply(a, FElement()), a);
        EXPECT_EQ(FElement::decode(a.encode()), a);
    }
}

TEST(FGroup, Powers)
{
    const auto x0 = generator_x(0);
    EXPECT_EQ(power(x0, 0), FElement());
    EXPECT_EQ(power(x0, 3), multiply(multiply(x0, x0), x0));
    EXPECT_EQ(power(x0, -2), invert(multiply(x0, x0)));
}

TEST(FGroup, RelatorsEvaluateToIdentity)
{
    for (const auto& w : two_generator_relators()) EXPECT_TRUE(evaluate_word(w, standard_assignment()).is_identity()) << format_word(w);
    for (const auto& w : symmetric_relators()) EXPECT_TRUE(evaluate_word(w, standard_assignment()).is_identity()) << format_word(w);
}

TEST(FGroup, ConjugationIdentities)
{
    const auto& s = standard_assignment();
    EXPECT_EQ(evaluate_word(parse_word("x0^-1 x1 x0"), s), generator_x(2));
    EXPECT_EQ(evaluate_word(parse_word("x0 x1 x0^-1"), s), evaluate_word(parse_word("x0 xb1"), s));
    EXPECT_EQ(generator_xbar1(), multiply(generator_x(1), invert(generator_x(0))));
}

TEST(FGroup, AutomorphismCheck)
{
    const auto report = check_automorphism();
    EXPECT_TRUE(report.relators_preserved);
    EXPECT_TRUE(report.involutive);
    EXPECT_TRUE(report.commutator_image_nontrivial);
    EXPECT_EQ(format_word(apply_automorphism(parse_word("x0 x1"))), "x0^-1 x1 x0^-1");
    EXPECT_THROW(apply_automorphism(parse_word("x2")), ParseError);
}

TEST(FGroup, Words)
{
    const auto w = parse_word("x0 x1^-1  xb1");
    ASSERT_EQ(w.size(), 3U);
    EXPECT_TRUE(w[1].inverse);
    EXPECT_EQ(format_word(inverse_word(w)), "xb1^-1 x1 x0^-1");
    EXPECT_EQ(format_word(commutator_word(parse_word("x0"), parse_word("x1"))), "x0^-1 x1^-1 x0 x1");
    EXPECT_EQ(format_word(conjugate_word(parse_word("x1"), parse_word("x0"))), "x0^-1 x1 x0");
    EXPECT_TRUE(parse_word("").empty());
    EXPECT_THROW(evaluate_word(parse_word("y"), standard_assignment()), PreconditionError);
    EXPECT_THROW(parse_word("x0^2"), ParseError);
}

TEST(FGroup, CommutatorIsNontrivial)
{
    const auto c = evaluate_word(commutator_word(parse_word("x0"), parse_word("x1")), standard_assignment());
    EXPECT_FALSE(c.is_identity());
}
