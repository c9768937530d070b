#include <random>

#include <gtest/gtest.h>

#include <cuspbase/qseries.hpp>

using namespace cuspbase;

namespace
{

// Random series with small integer-ish rational coefficients.
QSeries random_series(std::mt19937 &rng, long lead, long len, int grid = 1)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> c(static_cast<std::size_t>(len));
    for (auto &x : c) {
        x = make_rational(num(rng), den(rng));
    }
    c[0] = make_rational(num(rng) == 0 ? 1 : 3, den(rng));
    const long step = grid == 2 ? 1 : 2;
    return QSeries::from_coefficients(c, Exponent(lead), Exponent::from_halves(2 * lead + step * len), grid);
}

} // namespace

TEST(Rational, ParseAndRender)
{
    EXPECT_EQ(parse_rational("-13/2"), make_rational(-13, 2));
    EXPECT_EQ(parse_rational("4/8"), make_rational(1, 2));
    EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
    EXPECT_EQ(to_string(Rational(7)), "7");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
    EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Exponent, HalfIntegerArithmetic)
{
    const Exponent a = Exponent::from_halves(3);
    EXPECT_EQ(a.str(), "3/2");
    EXPECT_FALSE(a.is_integer());
    EXPECT_EQ(a.floor(), 1);
    EXPECT_EQ(a.ceil(), 2);
    EXPECT_EQ(a + a, Exponent(3));
    EXPECT_EQ(a * 4, Exponent(6));
    EXPECT_LT(Exponent(100000), Exponent::infinity());
    EXPECT_EQ(Exponent::infinity() + a, Exponent::infinity());
}

TEST(QSeries, Factories)
{
    const auto z = QSeries::zero(Exponent(5));
    EXPECT_TRUE(z.is_zero());
    EXPECT_THROW(z.valuation(), zero_within_precision);
    EXPECT_TRUE(QSeries::one().is_exact());
    const auto m = QSeries::monomial(Rational(3), Exponent::from_halves(1), Exponent(4));
    EXPECT_EQ(m.grid(), 2);
    EXPECT_EQ(m.valuation(), Exponent::from_halves(1));
    EXPECT_EQ(m.leading_coefficient(), 3);
    EXPECT_THROW(QSeries::from_coefficients({1}, Exponent::from_halves(1), Exponent(3), 1), off_grid);
}

TEST(QSeries, CoefficientAccessGuards)
{
    const auto s = QSeries::from_coefficients({1, 2, 3}, Exponent(0), Exponent(3));
    EXPECT_EQ(s.coeff(Exponent(2)), 3);
    EXPECT_THROW(s.coeff(Exponent(3)), precision_exceeded);
    EXPECT_THROW(s.coeff(Exponent::from_halves(1)), off_grid);
    EXPECT_EQ(s.coeff(Exponent(-4)), 0);
}

TEST(QSeries, ProductPrecisionRule)
{
    // a = q + O(q^5), b = 1 + q + O(q^3): min(5 + 0, 3 + 1) = 4.
    const auto a = QSeries::from_coefficients({1}, Exponent(1), Exponent(5));
    const auto b = QSeries::from_coefficients({1, 1}, Exponent(0), Exponent(3));
    EXPECT_EQ((a * b).prec(), Exponent(4));
    EXPECT_EQ((a + b).prec(), Exponent(3));
}

TEST(QSeries, RingAxiomsOnRandomSeries)
{
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_series(rng, trial % 3, 12);
        const auto b = random_series(rng, 0, 10);
        const auto c = random_series(rng, 1, 11);
        const Exponent P(9);
        EXPECT_EQ((a + b).truncated(P), (b + a).truncated(P));
        EXPECT_EQ((a * b).truncated(P), (b * a).truncated(P));
        EXPECT_EQ(((a * b) * c).truncated(P), (a * (b * c)).truncated(P));
        EXPECT_EQ((a * (b + c)).truncated(P), (a * b + a * c).truncated(P));
        EXPECT_FALSE(first_difference(a - a, QSeries::zero(a.prec()), a.prec()).has_value());
    }
}

TEST(QSeries, ValuationIsAdditive)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_series(rng, trial % 4, 8, 2);
        const auto b = random_series(rng, trial % 5, 8, 1);
        EXPECT_EQ((a * b).valuation(), a.valuation() + b.valuation());
        EXPECT_EQ((a * b).leading_coefficient(), a.leading_coefficient() * b.leading_coefficient());
    }
}

TEST(QSeries, InverseOfUnit)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, 0, 15);
        const auto inv = invert(a);
        EXPECT_EQ(inv.prec(), a.prec());
        EXPECT_FALSE(first_difference(a * inv, QSeries::one(), a.prec()).has_value());
    }
    EXPECT_THROW(invert(QSeries::monomial(1, Exponent(1), Exponent(5))), not_a_unit);
}

TEST(QSeries, PowerMatchesRepeatedProduct)
{
    std::mt19937 rng(3);
    const auto a = random_series(rng, 1, 10);
    QSeries acc = QSeries::one();
    for (unsigned long n = 0; n <= 5; ++n) {
        EXPECT_EQ(pow(a, n).truncated(Exponent(12)), acc.truncated(Exponent(12)));
        acc = acc * a;
    }
}

TEST(QSeries, SubstituteScalesExponents)
{
    const auto s = QSeries::from_coefficients({1, -1, 2}, Exponent(0), Exponent(3));
    const auto t = substitute_q_power(s, 3);
    EXPECT_EQ(t.prec(), Exponent(9));
    EXPECT_EQ(t.coeff(Exponent(3)), -1);
    EXPECT_EQ(t.coeff(Exponent(4)), 0);
    EXPECT_EQ(t.coeff(Exponent(6)), 2);
}

TEST(QSeries, HalfGridMixing)
{
    const auto h = QSeries::monomial(1, Exponent::from_halves(1), Exponent(6));
    const auto sq = h * h;
    EXPECT_EQ(sq.valuation(), Exponent(1));
    EXPECT_EQ(sq.coefficients(Exponent(0), Exponent(3), 1), (std::vector<Rational>{0, 1, 0}));
    EXPECT_THROW(h.coefficients(Exponent(0), Exponent(3), 1), off_grid);
}

TEST(QSeries, FirstDifference)
{
    const auto a = QSeries::from_coefficients({1, 2, 3, 4}, Exponent(0), Exponent(4));
    const auto b = QSeries::from_coefficients({1, 2, 5, 4}, Exponent(0), Exponent(4));
    EXPECT_EQ(first_difference(a, b, Exponent(4)), Exponent(2));
    EXPECT_FALSE(first_difference(a, b, Exponent(2)).has_value());
}

TEST(QSeries, Rendering)
{
    const auto s = QSeries::from_coefficients({1, -8, 0, make_rational(13, 2)}, Exponent(0), Exponent(5));
    EXPECT_EQ(to_string(s), "1 - 8*q + 13/2*q^3 + O(q^5)");
}
