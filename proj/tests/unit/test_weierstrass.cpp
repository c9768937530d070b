#include <gtest/gtest.h>

#include <oracles.hpp>

using namespace cuspbase;

namespace
{

std::vector<Rational> grid2(const QSeries &s, std::size_t len)
{
    return s.coefficients(Exponent(0), Exponent::from_halves(static_cast<long>(len)), 2);
}

} // namespace

TEST(Wpa, AgreesWithLatticeSumOracle)
{
    for (long n = 1; n <= 10; ++n) {
        for (int b = 0; b <= 1; ++b) {
            for (long a = 0; a <= 2 * n; ++a) {
                if (b == 0 && (a == 0 || a == 2 * n)) {
                    continue;
                }
                const std::size_t len = 80;
                const auto got = wpa_expand(TorsionPoint{a, b, n}, Exponent::from_halves(static_cast<long>(len)));
                ASSERT_EQ(grid2(got, len), oracle::wpa(a, b, n, len)) << "wpa(" << a << "," << b << "," << n << ")";
            }
        }
    }
}

TEST(Wpa, TwoTorsionValuesSatisfyTheCubic)
{
    // The 2-torsion values e1, e2, e3 of wp/pi^2 for the lattice (1, N tau)
    // satisfy e1 + e2 + e3 = 0, sum e_i^2 = (2/3) E4(N tau) and
    // e1 e2 e3 = (2/27) E6(N tau).
    for (long n = 1; n <= 6; ++n) {
        const Exponent P(30);
        const auto e1 = wpa_expand(TorsionPoint{0, 1, n}, P);
        const auto e2 = wpa_expand(TorsionPoint{n, 0, n}, P);
        const auto e3 = wpa_expand(TorsionPoint{n, 1, n}, P);
        EXPECT_TRUE((e1 + e2 + e3).truncated(P).is_zero()) << n;
        const auto e4 = eisenstein_expand(EisensteinAtom{4, n}, P);
        const auto e6 = eisenstein_expand(EisensteinAtom{6, n}, P);
        EXPECT_FALSE(first_difference(e1 * e1 + e2 * e2 + e3 * e3, Rational(2, 3) * e4, P).has_value()) << n;
        EXPECT_FALSE(first_difference(e1 * e2 * e3, Rational(2, 27) * e6, P).has_value()) << n;
    }
}

TEST(Wpa, LevelTwoCombination)
{
    // -3 wp(tau; 1, 2 tau)/pi^2 is the weight-2 combination of level 2.
    const Exponent P(40);
    const auto s = Rational(-3) * wpa_expand(TorsionPoint{2, 0, 2}, P);
    EXPECT_FALSE(first_difference(s, weight2_level_combo(2, P), P).has_value());
}

TEST(Wpa, RejectsLatticePointsAndBadArguments)
{
    EXPECT_THROW(wpa_expand(TorsionPoint{0, 0, 3}, Exponent(4)), lattice_point);
    EXPECT_THROW(wpa_expand(TorsionPoint{6, 0, 3}, Exponent(4)), lattice_point);
    EXPECT_THROW(wpa_expand(TorsionPoint{7, 0, 3}, Exponent(4)), invalid_atom);
    EXPECT_THROW(wpa_expand(TorsionPoint{1, 2, 3}, Exponent(4)), invalid_atom);
    EXPECT_THROW(wpa_expand(TorsionPoint{1, 0, 0}, Exponent(4)), invalid_atom);
}

TEST(Wpa, OddTranslateLivesOnHalfGrid)
{
    const auto s = wpa_expand(TorsionPoint{1, 0, 2}, Exponent(5));
    EXPECT_EQ(s.grid(), 2);
    EXPECT_NE(s.coeff(Exponent::from_halves(1)), 0);
}
