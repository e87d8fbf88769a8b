#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "report.hpp"

using namespace vfix;
using report::Json;

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(VFIX_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Report, ClaimIds)
{
    EXPECT_EQ(report::claim_ids().size(), 7u);
}

TEST(Report, ByteIdenticalAcrossRuns)
{
    report::Options o;
    o.curve = "d=2;t=0x2";
    o.seed = 7;
    for (const char* claim : {"lemma-3.5", "lemma-3.7", "section-2-roundtrip", "group-structure", "lemma-3.2"})
        EXPECT_EQ(report::verify(claim, o).dump(), report::verify(claim, o).dump()) << claim;
}

TEST(Report, SeedIsRecordedAndUsed)
{
    report::Options a, b;
    a.seed = 1;
    b.seed = 2;
    Json ja = report::verify("lemma-3.7", a), jb = report::verify("lemma-3.7", b);
    EXPECT_EQ(ja["seed"], 1);
    EXPECT_NE(ja["points_checked"], jb["points_checked"]);
}

TEST(Report, UsageErrors)
{
    report::Options o;
    EXPECT_THROW(report::verify("lemma-9.9", o), report::UsageError);
    EXPECT_THROW(report::verify("lemma-3.1", o), report::UsageError);  // needs a curve
    EXPECT_THROW(report::parse_curve("d=2;t=0x1"), report::UsageError);
    EXPECT_THROW(report::parse_curve("garbage"), report::UsageError);
}

TEST(Report, LibraryErrorsBecomeFailingReports)
{
    report::Options o;
    o.curve = "d=8;t=0x2";
    o.cap = 3;  // GF(2^24) is above the field cap
    Json j = report::verify("lemma-3.1", o);
    EXPECT_FALSE(j["pass"]);
    EXPECT_FALSE(j["diagnostics"].empty());
}

TEST(Report, CurveInfo)
{
    Json j = report::curve_info(report::parse_curve("d=2;t=0x2"));
    EXPECT_EQ(j["command"], "curve-info");
    EXPECT_EQ(j["jacobian_order"], 16);
    EXPECT_EQ(j["zeta"]["L"], Json({1, -2, 9, -8, 16}));
    EXPECT_TRUE(j["ordinary"]);
}

TEST(Report, MonodromyCommand)
{
    auto mod = report::parse_module(nlohmann::json::parse(R"({"q": 2, "n": 8, "matrix": [[["0x1", "0x1"]]]})"));
    Json j = report::monodromy(mod, 8, 4096);
    EXPECT_EQ(j["profile"], Json({1, 2, 4, 4, 8, 8, 8, 8}));
    EXPECT_TRUE(j["pass"]);
    auto id = report::parse_module(nlohmann::json::parse(R"({"q": 4, "n": 3, "matrix": [[["0x1"], ["0x0"]], [["0x0"], ["0x1"]]]})"));
    Json k = report::monodromy(id, 3, 4096);
    EXPECT_EQ(k["profile"], Json({1, 1, 1}));
    EXPECT_THROW(report::parse_module(nlohmann::json::parse(R"({"q": 3, "n": 1, "matrix": [[["0x1"]]]})")), report::UsageError);
    EXPECT_THROW(report::parse_module(nlohmann::json::parse(R"({"q": 2, "n": 1, "matrix": [[["0x0"]]]})")), report::UsageError);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("verify --claim lemma-3.7 --seed 3"), 0);
    EXPECT_EQ(run_cli("verify --claim nonsense --curve 'd=2;t=0x2'"), 2);
    EXPECT_EQ(run_cli("verify --claim lemma-3.1"), 2);
    EXPECT_EQ(run_cli("curve-info --curve 'd=2;t=0x0'"), 2);
    EXPECT_EQ(run_cli("--no-such-flag"), 2);
    EXPECT_EQ(run_cli("verify --claim lemma-3.1 --curve 'd=8;t=0x2' --cap 3"), 1);
}

TEST(Cli, JsonFileIsByteIdentical)
{
    const std::string a = ::testing::TempDir() + "vfix_a.json", b = ::testing::TempDir() + "vfix_b.json";
    ASSERT_EQ(run_cli("verify --claim group-structure --curve 'd=2;t=0x2' --json " + a), 0);
    ASSERT_EQ(run_cli("verify --claim group-structure --curve 'd=2;t=0x2' --json " + b), 0);
    const std::string ja = slurp(a);
    EXPECT_FALSE(ja.empty());
    EXPECT_EQ(ja, slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}
