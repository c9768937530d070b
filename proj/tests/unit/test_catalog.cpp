#include <gtest/gtest.h>

#include <oracles.hpp>

using namespace cuspbase;

TEST(Expansion, ParseAndRender)
{
    const auto e = parse_expansion("1-8q+24*q^2+(13/2)q^3+O(q^5)");
    ASSERT_EQ(e.terms.size(), 4u);
    EXPECT_EQ(e.terms[3].first, Exponent(3));
    EXPECT_EQ(e.terms[3].second, make_rational(13, 2));
    EXPECT_EQ(e.bound, Exponent(5));
    EXPECT_EQ(parse_expansion(render_expansion(e)).terms, e.terms);
    EXPECT_THROW(parse_expansion("1+q^2+q+O(q^3)"), syntax_error);
}

TEST(Catalog, CoversLevelsOneToTen)
{
    const auto &cat = builtin_catalog();
    EXPECT_EQ(cat.levels(), (std::vector<long>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
    EXPECT_THROW(cat.level(11), unsupported_level);
    EXPECT_NO_THROW(validate_catalog(cat));
}

TEST(Catalog, LevelProfiles)
{
    struct Row {
        long n, rho, nu, k0;
    };
    const std::vector<Row> rows{{1, 12, 1, 6}, {2, 4, 1, 4}, {3, 6, 2, 3}, {4, 2, 1, 3}, {5, 4, 2, 2},
                                {6, 2, 2, 2},  {7, 6, 4, 3}, {8, 2, 2, 2}, {9, 2, 2, 2}, {10, 4, 6, 2}};
    for (const auto &r : rows) {
        const auto p = level_profile(r.n);
        EXPECT_EQ(p.delta_weight, r.rho) << r.n;
        EXPECT_EQ(p.delta_valuation, r.nu) << r.n;
        EXPECT_EQ(p.k0, r.k0) << r.n;
    }
}

TEST(Catalog, GeneratorsAndSeedsAreUnitary)
{
    const auto &cat = builtin_catalog();
    Evaluator ev(cat);
    for (long n : cat.levels()) {
        const auto &lc = cat.level(n);
        for (const auto &[k, f] : lc.generators) {
            const auto s = ev.generator(n, k.first, k.second, Exponent(20));
            EXPECT_EQ(s.valuation(), Exponent(k.second)) << f.text;
            EXPECT_EQ(s.leading_coefficient(), 1) << f.text;
            EXPECT_EQ(ev.weight_of(f.expr), Rational(k.first)) << f.text;
        }
        for (const auto &[k, f] : lc.seeds) {
            const auto s = ev.seed(n, k.first, k.second, Exponent(20));
            EXPECT_EQ(s.valuation(), Exponent(k.second)) << f.text;
            EXPECT_EQ(s.leading_coefficient(), 1) << f.text;
        }
    }
}

TEST(Catalog, ReconstructedSeedsAreEtaCuspForms)
{
    const auto &cat = builtin_catalog();
    std::size_t seen = 0;
    for (long n : cat.levels()) {
        for (const auto &[k, f] : cat.level(n).seeds) {
            if (!f.reconstructed) {
                continue;
            }
            ++seen;
            const auto *eta = std::get_if<expr::Eta>(&f.expr.node().value);
            ASSERT_NE(eta, nullptr) << f.text;
            EXPECT_TRUE(oracle::is_cusp_form_on(eta->quotient.terms(), n)) << f.text;
            EXPECT_EQ(eta_profile(eta->quotient).weight, k.first);
        }
    }
    EXPECT_EQ(seen, 2u);
}

TEST(Catalog, KnownCuspEtaProductsPassCuspOrderTest)
{
    for (long n = 1; n <= 10; ++n) {
        for (const auto &t : known_cusp_eta_products(n)) {
            EXPECT_TRUE(oracle::is_cusp_form_on(parse_eta_quotient(t).terms(), n)) << n << " " << t;
        }
    }
    // Weight 3 with a quadratic character: rejected.
    EXPECT_FALSE(oracle::is_cusp_form_on(parse_eta_quotient("1:3,7:3").terms(), 7));
}

TEST(Evaluator, RejectsBadReferences)
{
    Evaluator ev(builtin_catalog());
    EXPECT_THROW(ev.evaluate("E[2,4,9]", Exponent(5)), unknown_atom);
    EXPECT_THROW(ev.evaluate("F[4,11,1]", Exponent(5)), unsupported_level);
}

TEST(Evaluator, DetectsWeightAndLevelMismatches)
{
    Catalog cat = builtin_catalog();
    cat.level(2).generators[{4, 0}] = NamedForm("E4(1)*E[2,2,0]");
    EXPECT_THROW(validate_catalog(cat), weight_mismatch);
    cat = builtin_catalog();
    cat.level(2).generators[{4, 0}] = NamedForm("E4(3)");
    EXPECT_THROW(validate_catalog(cat), level_mismatch);
}

TEST(Evaluator, CyclicReferencesAreCaught)
{
    Catalog cat = builtin_catalog();
    cat.level(2).generators[{4, 0}] = NamedForm("E[2,2,0]*E[2,2,0]+E[4,2,0]-E[4,2,0]");
    Evaluator ev(cat);
    EXPECT_THROW(ev.generator(2, 4, 0, Exponent(5)), invalid_atom);
}

TEST(CatalogIo, JsonRoundTrip)
{
    const auto &cat = builtin_catalog();
    const auto j = catalog_to_json(cat);
    EXPECT_EQ(j.at("format"), "cuspbase-catalog 1");
    const auto back = catalog_from_json(j);
    EXPECT_EQ(catalog_to_json(back).dump(), j.dump());
    auto broken = j;
    broken["format"] = "other";
    EXPECT_THROW(catalog_from_json(broken), invalid_atom);
    broken = j;
    broken["levels"][0].erase("delta");
    EXPECT_THROW(catalog_from_json(broken), invalid_atom);
}

TEST(CatalogIdentities, PerLevelListing)
{
    EXPECT_FALSE(catalog_identities(5).empty());
    for (const auto &i : catalog_identities(9)) {
        EXPECT_FALSE(i.id.empty());
    }
}
