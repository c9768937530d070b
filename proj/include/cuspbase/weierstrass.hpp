#ifndef CUSPBASE_WEIERSTRASS_HPP
#define CUSPBASE_WEIERSTRASS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <cuspbase/errors.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/qseries.hpp>
#include <cuspbase/rational.hpp>

namespace cuspbase
{

// The point z = (a tau + b)/2 on the lattice Z + level*tau Z.
struct TorsionPoint {
    long a = 0;
    int b = 0;
    long level = 1;

    void validate() const
    {
        if (level < 1) {
            throw invalid_atom("torsion point level must be positive");
        }
        if (b != 0 && b != 1) {
            throw invalid_atom("torsion point b must be 0 or 1");
        }
        if (a < 0 || a > 2 * level) {
            throw invalid_atom("torsion point a must lie in [0, 2*level]");
        }
        if (b == 0 && (a == 0 || a == 2 * level)) {
            throw lattice_point("z = " + std::to_string(a) + "tau/2 is a lattice point of (1, "
                                + std::to_string(level) + "tau)");
        }
    }
};

namespace detail
{

// Adds weight * x/(1-x)^2 for x = sign * q^(h/2), as sum_m m x^m, into a
// grid-2 accumulator of the given length. h == 0 is only legal for x = -1.
inline void add_lambert(std::vector<Rational> &acc, long h, int sign, long weight)
{
    if (h == 0) {
        if (sign != -1) {
            throw lattice_point("Lambert term degenerates at x = 1");
        }
        acc[0] += make_rational(-weight, 4);
        return;
    }
    const long len = static_cast<long>(acc.size());
    for (long m = 1; h * m < len; ++m) {
        const long c = (sign < 0 && (m & 1)) ? -m : m;
        acc[static_cast<std::size_t>(h * m)] += weight * c;
    }
}

} // namespace detail

// Normalized Weierstrass function at a torsion point:
//
//   wpa = -4 [ 1/12 + u/(1-u)^2
//              + sum_{n>=1} ( Q^n u/(1-Q^n u)^2 + Q^n u^-1/(1-Q^n u^-1)^2 - 2 Q^n/(1-Q^n)^2 ) ]
//
// with Q = q^level and u = (-1)^b q^(a/2); this is wp(z; 1, level*tau)/pi^2.
// Odd a gives a half-integer grid.
inline QSeries wpa_expand(const TorsionPoint &p, Exponent prec)
{
    p.validate();
    if (prec.is_infinite()) {
        throw std::invalid_argument("wpa_expand needs a finite precision");
    }
    if (prec <= Exponent(0)) {
        return QSeries::zero(prec);
    }
    const long len = prec.halves();
    const int sign = p.b == 0 ? 1 : -1;
    const long step = 2 * p.level; // Q in half units
    std::vector<Rational> acc(static_cast<std::size_t>(len));
    acc[0] += make_rational(1, 12);
    detail::add_lambert(acc, p.a, sign, 1);
    for (long n = 1; n * step - p.a < len; ++n) {
        if (n * step + p.a < len) {
            detail::add_lambert(acc, n * step + p.a, sign, 1);
        }
        detail::add_lambert(acc, n * step - p.a, sign, 1);
        if (n * step < len) {
            detail::add_lambert(acc, n * step, 1, -2);
        }
    }
    for (auto &c : acc) {
        c *= -4;
    }
    return QSeries::from_coefficients(std::move(acc), 0, prec, 2);
}

} // namespace cuspbase

#endif
