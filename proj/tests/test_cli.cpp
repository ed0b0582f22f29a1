#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fscheme/automaton.hpp"
#include "fscheme/rational.hpp"

using namespace fscheme;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome tool(const std::string& args)
{
    const std::string command = std::string(FSCHEME_TOOL) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (const std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string temp(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("fscheme_cli_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') {
                quoted = !quoted;
            } else if (c == ',' && !quoted) {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell.push_back(c);
            }
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const char* kChain = R"({"alphabet": ["a", "b"], "vertices": ["s", "u", "v", "w"],
  "edges": [["s","a","u"], ["u","a","v"], ["v","a","s"], ["u","b","v"], ["v","b","w"], ["w","b","u"], ["w","a","w"]]})";

}  // namespace

TEST(Cli, BallWritesLoadableFile)
{
    const auto path = temp("ball.json");
    ASSERT_EQ(tool("ball -r 1 -a x0,x1 --out " + path).code, 0);
    const auto y = load_automaton(path);
    EXPECT_EQ(y.size(), 5U);
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    EXPECT_TRUE(doc.contains("timestamp"));
    EXPECT_EQ(doc["report"]["vertices"], 5);
    std::filesystem::remove(path);
}

TEST(Cli, BallRadiusZeroAndBadAlphabet)
{
    const auto out = tool("ball -r 0 --no-timestamp");
    ASSERT_EQ(out.code, 0);
    EXPECT_EQ(nlohmann::json::parse(out.out)["vertices"].size(), 1U);
    EXPECT_EQ(tool("ball -r 1 -a x0,x7").code, 2);
    EXPECT_EQ(tool("ball").code, 2);
    EXPECT_EQ(tool("frobnicate").code, 2);
}

TEST(Cli, Reproducible)
{
    const auto a = tool("ball -r 2 -a x0,x1,xb1 --no-timestamp");
    const auto b = tool("ball -r 2 -a x0,x1,xb1 --no-timestamp");
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(nlohmann::json::parse(a.out).contains("timestamp"));
}

TEST(Cli, BBCount)
{
    auto out = tool("bb -n 2 -k 1 --no-timestamp");
    ASSERT_EQ(out.code, 0);
    EXPECT_EQ(nlohmann::json::parse(out.out)["size"], "3");
    out = tool("bb -n 9 -k 0 --no-timestamp");
    EXPECT_EQ(nlohmann::json::parse(out.out)["size"], "9");
    out = tool("bb -n 3 -k 1 --format csv");
    EXPECT_EQ(csv_rows(out.out).size(), 2U);
}

TEST(Cli, BBEnumerate)
{
    const auto out = tool("bb -n 4 -k 2 --mode enumerate --no-timestamp");
    ASSERT_EQ(out.code, 0);
    const auto y = automaton_from_json(nlohmann::json::parse(out.out));
    EXPECT_EQ(y.find(".*;.;.;.").has_value(), true);
    EXPECT_EQ(tool("bb -n 8 -k 3 --mode enumerate --budget 50").code, 3);
    EXPECT_EQ(tool("bb -n 3 -k -1").code, 2);
}

TEST(Cli, SweepCsv)
{
    const auto out = tool("sweep --k-min 1 --k-max 6 --n-min 200 --n-max 200 -a x0,x1 -a x0,x1,xb1 --format csv");
    ASSERT_EQ(out.code, 0);
    const auto rows = csv_rows(out.out);
    ASSERT_EQ(rows.size(), 13U);
    const auto& header = rows[0];
    auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    ASSERT_LT(col("trimmed"), header.size());
    ASSERT_LT(col("nu_x1^-1"), header.size());
    Rational last = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const long m2 = row[col("alphabet")] == "x0,x1" ? 4 : 6;
        EXPECT_EQ(parse_rational(row[col("delta")]) + parse_rational(row[col("iota")]), m2);
        if (m2 == 4) {
            const auto delta = parse_rational(row[col("delta")]);
            EXPECT_GT(delta, last);
            last = delta;
            EXPECT_TRUE(row[col("trimmed")].empty());
        }
    }
}

TEST(Cli, SweepThreadsDoNotChangeOutput)
{
    const std::string args = "sweep --k-min 0 --k-max 5 --n-min 1 --n-max 40 --n-step 3 -a x0,x1,x2 --no-timestamp";
    const auto one = tool(args);
    const auto many = tool(args + " --threads 4");
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(one.out, many.out);
    const auto doc = nlohmann::json::parse(one.out);
    EXPECT_EQ(doc["rows"].size(), 6U * 14U);
    EXPECT_EQ(tool("sweep --k-min 3 --k-max 1").code, 2);
}

TEST(Cli, EvacBall)
{
    const auto path = temp("evac_ball.json");
    ASSERT_EQ(tool("ball -r 1 --out " + path).code, 0);
    const auto out = tool("evac " + path + " --no-timestamp");
    ASSERT_EQ(out.code, 0);
    const auto doc = nlohmann::json::parse(out.out);
    EXPECT_TRUE(doc["exists"].get<bool>());
    EXPECT_EQ(doc["paths"].size(), 5U);
    EXPECT_EQ(tool("evac " + path + " --format csv").code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, EvacWitness)
{
    const auto path = temp("chain.json");
    write(path, kChain);
    auto out = tool("evac " + path + " --no-timestamp");
    ASSERT_EQ(out.code, 0);
    auto doc = nlohmann::json::parse(out.out);
    EXPECT_FALSE(doc["exists"].get<bool>());
    EXPECT_EQ(doc["witness"]["Z"], nlohmann::json({"u", "v", "w"}));
    EXPECT_EQ(doc["witness"]["cheeger"], 2);
    out = tool("evac " + path + " -K 2 --no-timestamp");
    EXPECT_TRUE(nlohmann::json::parse(out.out)["exists"].get<bool>());
    EXPECT_EQ(tool(std::string("evac ") + temp("missing.json")).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, Certify)
{
    const auto automaton = temp("line.json");
    write(automaton, R"({"alphabet": ["x"], "vertices": ["p0","p1","p2","p3","p4"],
      "edges": [["p0","x","p1"], ["p1","x","p2"], ["p2","x","p3"], ["p3","x","p4"]]})");
    const auto good = temp("good.json");
    write(good, R"({"C": "1", "eps": "2/5",
      "flow": [["p0","x","p1","3/5"], ["p1","x","p2","1/5"], ["p2","x","p3","-1/5"], ["p3","x","p4","-3/5"]],
      "boundary_inflows": {"p0": "1", "p4": "1"}})");
    const auto zero = temp("zero.json");
    write(zero, R"({"C": "1", "eps": "1/10", "flow": [], "boundary_inflows": {}})");

    auto out = tool("certify " + automaton + " " + good + " --no-timestamp");
    ASSERT_EQ(out.code, 0);
    auto doc = nlohmann::json::parse(out.out);
    EXPECT_TRUE(doc["accepted"].get<bool>());
    EXPECT_EQ(doc["bound"], "2/5");
    EXPECT_TRUE(doc["inequality_holds"].get<bool>());

    out = tool("certify " + automaton + " " + zero + " --no-timestamp");
    EXPECT_EQ(out.code, 3);
    EXPECT_FALSE(nlohmann::json::parse(out.out)["accepted"].get<bool>());
    for (const auto& p : {automaton, good, zero}) std::filesystem::remove(p);
}

TEST(Cli, Selftest)
{
    const auto out = tool("selftest");
    EXPECT_EQ(out.code, 0);
    EXPECT_EQ(out.out.find("FAIL"), std::string::npos);
}
