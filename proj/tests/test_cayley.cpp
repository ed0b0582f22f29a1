#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "fscheme/automaton.hpp"
#include "fscheme/errors.hpp"

using namespace fscheme;

namespace {

// Elements reachable by words of length <= r, by brute force over all words.
std::set<std::string> words_up_to(unsigned r, const GenAlphabet& alphabet)
{
    std::set<std::string> seen;
    std::vector<FElement> frontier{FElement()};
    seen.insert(FElement().encode());
    for (unsigned step = 0; step < r; ++step) {
        std::vector<FElement> next;
        for (const auto& g : frontier)
            for (LetterId l = 0; l < alphabet.letter_count(); ++l) next.push_back(multiply(g, alphabet.letter_value(l)));
        for (const auto& g : next) seen.insert(g.encode());
        frontier = std::move(next);
    }
    return seen;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("fscheme_test_" + name);
}

}  // namespace

TEST(Alphabet, ParseMultiset)
{
    const auto a = GenAlphabet::parse("x1,xb1,x0,x0");
    EXPECT_EQ(a.symbols(), (std::vector<std::string>{"x1", "xb1", "x0", "x0_2"}));
    EXPECT_EQ(a.base(3), "x0");
    EXPECT_EQ(a.spec(), "x1,xb1,x0,x0");
    EXPECT_EQ(*a.value(2), *a.value(3));
    EXPECT_EQ(a.letter_name(7), "x0_2^-1");
    EXPECT_EQ(a.find_letter("xb1^-1"), LetterId{3});
    EXPECT_FALSE(a.find_letter("x9").has_value());
}

TEST(Alphabet, RejectsBadSpecs)
{
    for (const char* bad : {"", "x0,q", "x0,,x1", "x3"}) EXPECT_THROW(GenAlphabet::parse(bad), ParseError) << bad;
    EXPECT_THROW(GenAlphabet::abstract({"a", "a"}), ParseError);
}

TEST(Cayley, RadiusZeroIsSingleton)
{
    const auto y = ball(0, GenAlphabet::parse("x0,x1"));
    ASSERT_EQ(y.size(), 1U);
    const auto r = boundary_report(y);
    EXPECT_EQ(r.cheeger_boundary, 4U);
    EXPECT_EQ(r.density, 0);
    EXPECT_EQ(r.isoperimetric, 4);
    EXPECT_EQ(r.outer_boundary, 4U);
}

TEST(Cayley, RadiusOneSizes)
{
    EXPECT_EQ(ball(1, GenAlphabet::parse("x0,x1")).size(), 5U);
    EXPECT_EQ(ball(1, GenAlphabet::parse("x1,xb1,x0,x0")).size(), 7U);
}

TEST(Cayley, BallsMatchWordEnumeration)
{
    for (const char* spec : {"x0,x1", "x0,x1,xb1", "x0,x1,x2"})
        for (unsigned r = 0; r <= 3; ++r) {
            const auto alphabet = GenAlphabet::parse(spec);
            const auto y = ball(r, alphabet);
            const auto expected = words_up_to(r, alphabet);
            EXPECT_EQ(std::set<std::string>(y.keys().begin(), y.keys().end()), expected) << spec << " r=" << r;
            EXPECT_EQ(*y.outer_boundary(), words_up_to(r + 1, alphabet).size() - expected.size());
            for (std::size_t v = 0; v < y.size(); ++v)
                for (LetterId l = 0; l < alphabet.letter_count(); ++l) {
                    const auto g = multiply(FElement::decode(y.key(v)), alphabet.letter_value(l)).encode();
                    const auto w = y.find(g);
                    EXPECT_EQ(y.target(v, l), w ? *w : kOutside);
                }
        }
}

TEST(Cayley, DensityIdentityAndSymmetry)
{
    for (const char* spec : {"x0,x1", "x0,x1,xb1", "x1,xb1,x0,x0"})
        for (unsigned r = 0; r <= 3; ++r) {
            const auto alphabet = GenAlphabet::parse(spec);
            const auto rep = boundary_report(ball(r, alphabet));
            EXPECT_EQ(rep.density + rep.isoperimetric, Rational(static_cast<long>(alphabet.letter_count())));
            for (LetterId l = 0; l < alphabet.letter_count(); l += 2) EXPECT_EQ(rep.nu[l], rep.nu[l + 1]);
        }
}

TEST(Cayley, InducedSubgraph)
{
    const auto alphabet = GenAlphabet::parse("x0,x1");
    const auto b1 = ball(1, alphabet);
    EXPECT_EQ(induced_subgraph(b1.keys(), alphabet), b1);

    const std::vector<std::string> single{FElement().encode()};
    const auto one = induced_subgraph(single, alphabet);
    EXPECT_EQ(one.degree(0), 0U);

    const std::vector<std::string> pair{FElement().encode(), generator_x(0).encode()};
    const auto two = induced_subgraph(pair, alphabet);
    EXPECT_EQ(two.degree(0) + two.degree(1), 2U);
    EXPECT_EQ(two.target(0, 0), 1U);
    EXPECT_EQ(two.target(1, 1), 0U);
    EXPECT_THROW(induced_subgraph(std::vector<std::string>{"(.|."}, alphabet), ParseError);
}

TEST(Cayley, RestrictTo)
{
    const auto y = ball(2, GenAlphabet::parse("x0,x1"));
    std::vector<std::size_t> all(y.size());
    for (std::size_t v = 0; v < y.size(); ++v) all[v] = v;
    const auto same = y.restrict_to(all);
    EXPECT_EQ(boundary_report(same).cheeger_boundary, boundary_report(y).cheeger_boundary);
    EXPECT_FALSE(same.outer_boundary().has_value());
}

TEST(AutomatonFile, RoundTrip)
{
    for (const char* spec : {"x0,x1", "x1,xb1,x0,x0"}) {
        const auto y = ball(2, GenAlphabet::parse(spec));
        const auto path = temp_file("ball.json");
        save_automaton(y, path);
        EXPECT_EQ(load_automaton(path), y);
        std::filesystem::remove(path);
    }
}

TEST(AutomatonFile, AbstractRoundTrip)
{
    const nlohmann::json doc = {{"alphabet", {"a", "b"}}, {"vertices", {"u", "v"}}, {"edges", {{"u", "a", "v"}, {"v", "b", "v"}}}};
    const auto y = automaton_from_json(doc);
    EXPECT_EQ(y.target(0, 0), 1U);
    EXPECT_EQ(y.target(1, 1), 0U);
    EXPECT_EQ(y.target(1, 2), 1U);
    EXPECT_EQ(y.target(1, 3), 1U);
    EXPECT_EQ(y.target(1, 0), kOutside);
    EXPECT_EQ(automaton_from_json(automaton_to_json(y)), y);
}

TEST(AutomatonFile, SerreViolation)
{
    const nlohmann::json doc = {{"alphabet", {"a"}},
                                {"vertices", {"u", "v"}},
                                {"edge_mode", "directed"},
                                {"edges", {{"u", "a", "v"}}}};
    EXPECT_THROW(automaton_from_json(doc), SerreViolation);
    const nlohmann::json conflict = {{"alphabet", {"a"}}, {"vertices", {"u", "v", "w"}}, {"edges", {{"u", "a", "v"}, {"w", "a", "v"}}}};
    EXPECT_THROW(automaton_from_json(conflict), SerreViolation);
}

TEST(AutomatonFile, DuplicateSlotAndKey)
{
    const nlohmann::json slot = {{"alphabet", {"a"}}, {"vertices", {"u", "v", "w"}}, {"edges", {{"u", "a", "v"}, {"u", "a", "w"}}}};
    EXPECT_THROW(automaton_from_json(slot), DuplicateSlot);
    const nlohmann::json key = {{"alphabet", {"a"}}, {"vertices", {"u", "u"}}, {"edges", nlohmann::json::array()}};
    EXPECT_THROW(automaton_from_json(key), DuplicateSlot);
}

TEST(AutomatonFile, CayleyEdgesMustMatch)
{
    auto doc = automaton_to_json(ball(1, GenAlphabet::parse("x0,x1")));
    doc["edges"].erase(doc["edges"].begin());
    EXPECT_THROW(automaton_from_json(doc), ParseError);
    EXPECT_THROW(automaton_from_json(nlohmann::json::parse("{\"alphabet\": 3}")), ParseError);
}

TEST(Report, JsonAndCsv)
{
    const auto alphabet = GenAlphabet::parse("x0,x1");
    const auto rep = boundary_report(ball(1, alphabet));
    const auto doc = report_to_json(rep, alphabet);
    EXPECT_EQ(doc["vertices"], 5);
    EXPECT_EQ(parse_rational(doc["delta"].get<std::string>()) + parse_rational(doc["iota"].get<std::string>()), 4);
    EXPECT_EQ(report_to_csv(rep, alphabet).rfind("letter,nu\n", 0), 0U);
    EXPECT_THROW(boundary_report(Automaton(alphabet, {}, {})), PreconditionError);
}

TEST(Rational, Formatting)
{
    EXPECT_EQ(to_fraction_string(Rational(6, 4)), "3/2");
    EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
    EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("a/b"), ParseError);
    EXPECT_EQ(to_decimal(Rational(1, 3), 5), "0.33333");
}
