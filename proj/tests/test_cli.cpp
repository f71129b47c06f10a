#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(NILCDGA_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json run_json(const std::string& args, int expected_code = 0) {
    auto r = run(args);
    EXPECT_EQ(r.code, expected_code) << r.out;
    return nlohmann::json::parse(r.out);
}

std::string data(const char* name) { return std::string(NILCDGA_TEST_DATA) + "/" + name; }

} // namespace

TEST(Cli, BettiOfM) {
    auto j = run_json("betti --preset M");
    EXPECT_EQ(j["subcommand"], "betti");
    EXPECT_EQ(j["result"]["betti"], nlohmann::json({1, 6, 17, 30, 36, 30, 17, 6, 1}));
    EXPECT_TRUE(j.contains("checks"));
    EXPECT_TRUE(j.contains("input"));
}

TEST(Cli, GMasseyExample) {
    auto j = run_json("gmassey --preset M --action rho --invariant -a \"b1^b2\" -x \"2 a1^c2 - a2^c1 + a1^c1 + a2^c2\" "
                      "-x \"c1^c2\" -x \"a1^c1 + a2^c1 + a2^c2\"");
    EXPECT_EQ(j["result"]["verdict"], "nontrivial-certified");
    EXPECT_EQ(j["result"]["top_value"], "-4/3");
    EXPECT_EQ(j["result"]["w_dimension"], 0);
}

TEST(Cli, QuadrupleAndBracketExpansion) {
    auto q = run_json("massey4-certify --preset M --invariant -a tau2 -a theta -a theta -a tau3 --sigma sigma");
    EXPECT_EQ(q["result"]["sigma_psi_top_value"], "-1/3");
    EXPECT_EQ(q["result"]["verdict"], "nontrivial-certified");
    auto l = run_json("lemma25 --preset M --invariant -a theta -x tau1 -x tau2 -x tau3");
    for (const auto& c : l["checks"])
        EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(Cli, OutputIsByteStable) {
    auto a = run("invariants --preset M");
    auto b = run("invariants --preset M");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("betti").code, 2);
    EXPECT_EQ(run("betti --preset M --file x.cdga").code, 2);
    EXPECT_EQ(run("betti --preset M --no-such-flag").code, 2);
    EXPECT_EQ(run("betti --preset nope").code, 2);
    EXPECT_EQ(run("gmassey --preset M --invariant -a a1 -x tau1 -x tau2 -x tau3").code, 2);
    EXPECT_EQ(run("bundle --ring hurwitz").code, 2);
    auto r = run("betti --file " + data("syntax_error.cdga"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
    auto d2 = run("betti --file " + data("bad_d_squared.cdga"));
    EXPECT_EQ(d2.code, 2);
    EXPECT_NE(d2.out.find("line 7"), std::string::npos) << d2.out;
}

TEST(Cli, HelpExitsZero) {
    auto r = run("gmassey --help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--invariant"), std::string::npos);
}

TEST(Cli, NegativeVerdictsExitOne) {
    auto j = run_json("check --file " + data("broken_action.cdga"), 1);
    EXPECT_FALSE(j["checks"][1]["pass"].get<bool>());
    EXPECT_EQ(run_json("check --preset M")["checks"].size(), 3u);
}

TEST(Cli, BundleAndCoordinates) {
    auto e = run_json("bundle --ring eisenstein");
    EXPECT_EQ(e["result"]["invariant"], 3);
    EXPECT_EQ(e["result"]["versus_other_ring"], "distinct");
    auto c = run_json("coordinate-verify");
    for (const auto& x : c["checks"])
        EXPECT_TRUE(x["pass"].get<bool>()) << x["name"];
}

TEST(Cli, TextFormatAndOutputFile) {
    auto r = run("euler-quotient --preset M --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("quotient_euler_formula: 54"), std::string::npos);
    std::string path = testing::TempDir() + "nilcdga_betti.json";
    EXPECT_EQ(run("betti --preset N -o " + path).code, 0);
    FILE* f = fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    std::string s;
    std::array<char, 1024> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0)
        s.append(buf.data(), n);
    fclose(f);
    EXPECT_EQ(nlohmann::json::parse(s)["result"]["betti"], nlohmann::json({1, 4, 8, 10, 8, 4, 1}));
}

TEST(Cli, VerifySuite) {
    auto j = run_json("verify --suite paper");
    EXPECT_EQ(j["result"]["criteria"].size(), 13u);
    EXPECT_TRUE(j["result"]["passed"].get<bool>());
    EXPECT_EQ(run("verify --suite other").code, 2);
}
