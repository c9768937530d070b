#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace
{

struct Run {
    int rc = -1;
    std::string out;
};

Run run(const std::string &args, bool merge_stderr = false)
{
    const std::string cmd = std::string(CUSPBASE_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

} // namespace

TEST(CliDims, TabulatedRows)
{
    auto r = run("dims --level 2 --weights 2..18");
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("S 2: 0 0 0 1 1 2 2 3 3\n"), std::string::npos) << r.out;
    r = run("dims --level 9 --weights 2..16");
    EXPECT_NE(r.out.find("S 9: 0 1 3 5 7 9 11 13\n"), std::string::npos) << r.out;
    r = run("dims --level 1 --weights 2..2");
    EXPECT_NE(r.out.find("S 1: 0\n"), std::string::npos) << r.out;
    EXPECT_EQ(lines(run("dims --level all --weights 4..8").out).size(), 22u);
}

TEST(CliDims, UsageErrors)
{
    EXPECT_EQ(run("dims --level 2 --weights 3..9").rc, 2);
    EXPECT_EQ(run("dims --level x").rc, 2);
    EXPECT_EQ(run("dims").rc, 2);
    EXPECT_EQ(run("").rc, 2);
    EXPECT_EQ(run("frobnicate").rc, 2);
}

TEST(CliBasis, TextRows)
{
    auto r = run("basis --level 2 --weight 8 --space cusp");
    EXPECT_EQ(r.rc, 0);
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0].rfind("# cuspbase-format 1 basis level=2 weight=8 space=cusp", 0), 0u);
    EXPECT_EQ(l[1].rfind("1 1: 0 1 -8 12 64 -210 -96 1016", 0), 0u) << l[1];

    r = run("basis --level 3 --weight 2 --space cusp");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(lines(r.out).size(), 1u);

    l = lines(run("basis --level 7 --weight 6 --space cusp").out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[1].rfind("1 1:", 0), 0u);
    EXPECT_EQ(l[2].rfind("2 2:", 0), 0u);
    EXPECT_EQ(l[3].rfind("3 3:", 0), 0u);
}

TEST(CliBasis, RationalCoefficientsAreExact)
{
    const auto r = run("basis --level 7 --weight 6 --space full --prec 8");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out.find('.'), std::string::npos);
}

TEST(CliBasis, JsonLines)
{
    const auto r = run("basis --level 5 --weight 4 --space full --format jsonl --prec 8");
    EXPECT_EQ(r.rc, 0);
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    const auto head = nlohmann::json::parse(l[0]);
    EXPECT_EQ(head.at("format"), "cuspbase-format 1");
    EXPECT_EQ(head.at("dimension"), 3);
    long last = -1;
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto row = nlohmann::json::parse(l[i]);
        EXPECT_EQ(row.at("level"), 5);
        EXPECT_EQ(row.at("weight"), 4);
        EXPECT_EQ(row.at("space"), "full");
        EXPECT_EQ(row.at("index"), i);
        EXPECT_GT(row.at("valuation").get<long>(), last);
        last = row.at("valuation").get<long>();
        EXPECT_EQ(row.at("coeffs").size(), 8u);
        EXPECT_TRUE(row.at("coeffs")[0].is_string());
    }
}

TEST(CliBasis, Deterministic)
{
    EXPECT_EQ(run("basis --level 10 --weight 6 --format jsonl").out, run("basis --level 10 --weight 6 --format jsonl").out);
}

TEST(CliBasis, PrecisionFromEnvironment)
{
    setenv("CUSPBASE_PREC", "6", 1);
    const auto r = run("basis --level 2 --weight 8");
    unsetenv("CUSPBASE_PREC");
    EXPECT_NE(r.out.find("prec=6"), std::string::npos);
    EXPECT_NE(r.out.find("1 1: 0 1 -8 12 64 -210\n"), std::string::npos) << r.out;
}

TEST(CliBasis, Errors)
{
    EXPECT_EQ(run("basis --level 2 --weight 7").rc, 2);
    EXPECT_EQ(run("basis --level 2 --weight 8 --prec 2").rc, 2);
    EXPECT_EQ(run("basis --level 11 --weight 4").rc, 2);
    EXPECT_EQ(run("basis --level 2 --weight 8 --space half").rc, 2);
}

TEST(CliBasis, RawLadderFamily)
{
    const auto r = run("basis --level 10 --weight 8 --raw");
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find(" raw"), std::string::npos);
}

TEST(CliExpand, Examples)
{
    auto r = run("expand --eta \"4:8,2:-4\" --prec 10");
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("q + 4*q^3 + 6*q^5 + 8*q^7 + "), std::string::npos) << r.out;
    r = run("expand --expr 1");
    EXPECT_NE(r.out.find("\n1 + O(q^20)\n"), std::string::npos) << r.out;
    r = run("expand --wpa 2,0,2 --prec 8 --scale -3");
    EXPECT_NE(r.out.find("\n1 + 24*q + "), std::string::npos) << r.out;
}

TEST(CliExpand, SyntaxErrorShowsCaret)
{
    const auto r = run("expand --expr \"E[2,4,0]+*2\"", true);
    EXPECT_EQ(r.rc, 2);
    const auto l = lines(r.out);
    ASSERT_GE(l.size(), 3u);
    EXPECT_EQ(l[2].find('^'), l[1].find("*2"));
    EXPECT_EQ(run("expand --eta 1:24 --expr 1").rc, 2);
    EXPECT_EQ(run("expand --wpa 0,0,3").rc, 2);
}

TEST(CliVerify, CatalogSuiteLevelTwo)
{
    const auto r = run("verify --level 2 --suite paper");
    EXPECT_EQ(r.rc, 0);
    for (const auto &l : lines(r.out)) {
        if (l[0] != '#') {
            EXPECT_EQ(l.rfind("PASS ", 0), 0u) << l;
        }
    }
}

TEST(CliVerify, CorruptedCatalogFails)
{
    const auto dumped = run("catalog --dump");
    ASSERT_EQ(dumped.rc, 0);
    auto j = nlohmann::ordered_json::parse(dumped.out);
    for (auto &lv : j["levels"]) {
        if (lv["level"] == 2) {
            // delta(2) is printed as q + 8q^2 + 28q^3 + ...: change the q^2 term.
            auto &e = lv["printed"][0]["expansion"];
            const std::string s = e.get<std::string>();
            const auto at = s.find("8q^2");
            ASSERT_NE(at, std::string::npos) << s;
            e = s.substr(0, at) + "9q^2" + s.substr(at + 4);
        }
    }
    const auto path = std::filesystem::temp_directory_path() / "cuspbase_corrupt.json";
    std::ofstream(path) << j.dump(2);
    const auto r = run("verify --level 2 --suite paper --catalog " + path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(r.rc, 1);
    EXPECT_NE(r.out.find("FAIL n2.printed.delta first mismatch at q^2: expected 9, got 8"), std::string::npos)
        << r.out;
}

TEST(CliCatalog, DumpLoadsBack)
{
    const auto dumped = run("catalog --dump");
    const auto path = std::filesystem::temp_directory_path() / "cuspbase_roundtrip.json";
    std::ofstream(path) << dumped.out;
    const auto again = run("catalog --dump --catalog " + path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(again.rc, 0);
    EXPECT_EQ(again.out, dumped.out);
    EXPECT_EQ(run("verify --level 2 --catalog /nonexistent.json").rc, 2);
}
