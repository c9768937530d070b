#include <gtest/gtest.h>

#include <oracles.hpp>

using namespace cuspbase;

namespace
{

const CheckResult *find(const Report &r, const std::string &id)
{
    for (const auto &c : r) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

} // namespace

TEST(CompareExpansion, ReportsFirstDisagreement)
{
    const auto s = QSeries::from_coefficients({1, -8, 24, 0}, Exponent(0), Exponent(4));
    EXPECT_FALSE(compare_expansion(s, parse_expansion("1-8q+24q^2+O(q^4)")).has_value());
    const auto m = compare_expansion(s, parse_expansion("1-8q+25q^2+O(q^4)"));
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->exponent, Exponent(2));
    EXPECT_EQ(m->expected, 25);
    EXPECT_EQ(m->actual, 24);
    // An unlisted exponent below the bound is a zero.
    EXPECT_EQ(compare_expansion(s, parse_expansion("1-8q+O(q^4)"))->exponent, Exponent(2));
}

TEST(CatalogSuite, AllLevelsPass)
{
    const auto r = run_verify(builtin_catalog(), builtin_catalog().levels(), Suite::catalog);
    for (const auto &c : r) {
        EXPECT_NE(c.status, Status::fail) << format_line(c);
    }
    std::size_t info = 0;
    for (const auto &c : r) {
        info += c.status == Status::info;
    }
    EXPECT_EQ(info, 3u);
}

TEST(CatalogSuite, InformationalReadings)
{
    const auto r4 = catalog_checks(builtin_catalog(), 4);
    const auto *disp = find(r4, "n4.printed.e2_0.level4_display");
    ASSERT_NE(disp, nullptr);
    EXPECT_EQ(disp->status, Status::info);
    EXPECT_NE(disp->detail.find("q^3"), std::string::npos);
    const auto r9 = catalog_checks(builtin_catalog(), 9);
    EXPECT_EQ(find(r9, "n9.identity.e2_0.wpa")->status, Status::pass);
    EXPECT_EQ(find(r9, "n9.identity.e2_0.wpa_displayed_sign")->status, Status::info);
}

TEST(CatalogSuite, CorruptedPrintedTermFailsAtThatExponent)
{
    Catalog cat = builtin_catalog();
    auto &pe = cat.level(2).printed.front();
    auto &term = pe.expansion.terms[2];
    term.second += 1;
    const auto r = catalog_checks(cat, 2);
    const auto *c = find(r, "n2.printed." + pe.id);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->status, Status::fail);
    EXPECT_NE(c->detail.find("first mismatch at q^" + term.first.str() + ":"), std::string::npos) << c->detail;
}

TEST(CatalogSuite, CorruptedFormulaConstantFails)
{
    Catalog cat = builtin_catalog();
    auto &f = cat.level(5).generators.at({2, 0});
    f = NamedForm(render(oracle::corrupted(f.expr, 0)));
    EXPECT_FALSE(all_passed(catalog_checks(cat, 5)));
}

TEST(CatalogSuite, CorruptedTableEntryFails)
{
    Catalog cat = builtin_catalog();
    cat.level(10).dimension_table[3].second += 1;
    const auto report = catalog_checks(cat, 10);
    const auto *c = find(report, "n10.dims.table");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->status, Status::fail);
}

TEST(StructureSuite, SingleLevelPasses)
{
    const auto r = structure_checks(builtin_catalog(), 5, 50, 8);
    EXPECT_TRUE(all_passed(r));
    EXPECT_NE(find(r, "n5.structure.decomposition"), nullptr);
}

TEST(RunVerify, ParallelAndSerialAgree)
{
    const auto &cat = builtin_catalog();
    const std::vector<long> lv{3, 1, 8};
    const auto a = run_verify(cat, lv, Suite::catalog, true);
    const auto b = run_verify(cat, lv, Suite::catalog, false);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(format_line(a[i]), format_line(b[i]));
    }
    EXPECT_EQ(a.front().id.rfind("n3.", 0), 0u);
}

TEST(RunVerify, LibraryErrorsBecomeFailLines)
{
    Catalog cat = builtin_catalog();
    cat.level(3).printed.front().form = NamedForm("E[6,3,9]");
    const auto r = catalog_checks(cat, 3);
    bool saw = false;
    for (const auto &c : r) {
        saw = saw || (c.status == Status::fail && c.detail.rfind("error:", 0) == 0);
    }
    EXPECT_TRUE(saw);
}
