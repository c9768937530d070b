#ifndef CUSPBASE_EISENSTEIN_HPP
#define CUSPBASE_EISENSTEIN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <cuspbase/errors.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/qseries.hpp>
#include <cuspbase/rational.hpp>

namespace cuspbase
{

// E_weight(scale * tau). E_2 is deliberately not representable: it only enters
// through weight2_level_combo().
struct EisensteinAtom {
    int weight = 4;
    long scale = 1;
};

namespace detail
{

// sigma_k(n) for 1 <= n < len by direct divisor enumeration; index 0 unused.
inline std::vector<Integer> divisor_sums(unsigned long k, std::size_t len)
{
    std::vector<Integer> out(len);
    for (std::size_t n = 1; n < len; ++n) {
        Integer acc = 0;
        Integer p;
        for (std::size_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) {
                continue;
            }
            mpz_ui_pow_ui(p.get_mpz_t(), d, k);
            acc += p;
            if (d * d != n) {
                mpz_ui_pow_ui(p.get_mpz_t(), n / d, k);
                acc += p;
            }
        }
        out[n] = acc;
    }
    return out;
}

inline std::size_t coefficient_count(Exponent prec)
{
    if (prec.is_infinite()) {
        throw std::invalid_argument("Eisenstein expansion needs a finite precision");
    }
    return prec <= Exponent(0) ? 0 : static_cast<std::size_t>(prec.ceil());
}

// 1 + c * sum sigma_k(n) q^n
inline QSeries divisor_series(long c, unsigned long k, Exponent prec)
{
    const auto len = coefficient_count(prec);
    const auto sig = divisor_sums(k, len);
    std::vector<Rational> coeffs(len);
    if (len > 0) {
        coeffs[0] = 1;
    }
    for (std::size_t n = 1; n < len; ++n) {
        coeffs[n] = Rational(sig[n] * c);
    }
    return QSeries::from_coefficients(std::move(coeffs), 0, prec);
}

} // namespace detail

// E_4 = 1 + 240 sum sigma_3(n) q^n, E_6 = 1 - 504 sum sigma_5(n) q^n.
inline QSeries eisenstein_expand(int weight, Exponent prec)
{
    switch (weight) {
        case 4:
            return detail::divisor_series(240, 3, prec);
        case 6:
            return detail::divisor_series(-504, 5, prec);
        default:
            throw invalid_atom("Eisenstein atoms have weight 4 or 6, got " + std::to_string(weight));
    }
}

inline QSeries eisenstein_expand(const EisensteinAtom &atom, Exponent prec)
{
    if (atom.scale < 1) {
        throw invalid_atom("Eisenstein scale must be positive");
    }
    const long d = atom.scale;
    const Exponent inner = Exponent((prec.ceil() + d - 1) / d);
    return substitute_q_power(eisenstein_expand(atom.weight, inner), d).truncated(prec);
}

// (N E_2(N tau) - E_2(tau)) / (N - 1) with E_2 = 1 - 24 sum sigma_1(n) q^n:
// the holomorphic weight-2 combination of level N, constant term 1.
inline QSeries weight2_level_combo(long level, Exponent prec)
{
    if (level < 2) {
        throw invalid_atom("weight-2 combination needs level >= 2");
    }
    const auto len = detail::coefficient_count(prec);
    const auto sig = detail::divisor_sums(1, len);
    std::vector<Rational> coeffs(len);
    if (len > 0) {
        coeffs[0] = 1;
    }
    const Rational inv = make_rational(1, level - 1);
    for (std::size_t n = 1; n < len; ++n) {
        Integer c = 24 * sig[n];
        if (n % static_cast<std::size_t>(level) == 0) {
            c -= 24 * level * sig[n / static_cast<std::size_t>(level)];
        }
        coeffs[n] = Rational(c) * inv;
    }
    return QSeries::from_coefficients(std::move(coeffs), 0, prec);
}

} // namespace cuspbase

#endif
