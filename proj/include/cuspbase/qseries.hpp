#ifndef CUSPBASE_QSERIES_HPP
#define CUSPBASE_QSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <cuspbase/errors.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/rational.hpp>

namespace cuspbase
{

// A truncated formal series sum_e c_e q^e with exact rational coefficients.
//
// Exponents live on a grid of step 1/grid (grid is 1 or 2). Coefficients are
// stored densely from the lead exponent up to the last nonzero one; exponents
// past the stored range but below prec() are known to be zero, exponents at or
// beyond prec() are unknown. Exact series (polynomials) have an infinite
// precision frontier.
//
// Invariants kept by every constructor and operation:
//  - the first and last stored coefficients are nonzero (empty means zero);
//  - a zero series has lead == prec;
//  - a grid-2 series has at least one nonzero coefficient at a half-integer
//    exponent, otherwise it is stored on grid 1.
class QSeries
{
public:
    // Exact zero.
    QSeries() = default;

    static QSeries zero(Exponent prec)
    {
        QSeries s;
        s.m_prec = prec;
        s.m_lead = prec;
        return s;
    }
    static QSeries one()
    {
        return constant(Rational(1));
    }
    static QSeries constant(const Rational &c)
    {
        return monomial(c, 0);
    }
    static QSeries monomial(const Rational &c, Exponent e, Exponent prec = Exponent::infinity())
    {
        return from_coefficients({c}, e, prec, e.is_integer() ? 1 : 2);
    }
    // coeffs[i] is the coefficient of q^(lead + i/grid).
    static QSeries from_coefficients(std::vector<Rational> coeffs, Exponent lead, Exponent prec, int grid = 1)
    {
        if (grid != 1 && grid != 2) {
            throw std::invalid_argument("q-series grid must be 1 or 2");
        }
        if (grid == 1 && !lead.is_integer()) {
            throw off_grid("lead exponent " + lead.str() + " is not on the integer grid");
        }
        QSeries s;
        s.m_grid = grid;
        s.m_lead = lead;
        s.m_prec = prec;
        s.m_coeffs = std::move(coeffs);
        s.normalize();
        return s;
    }

    int grid() const
    {
        return m_grid;
    }
    Exponent prec() const
    {
        return m_prec;
    }
    bool is_zero() const
    {
        return m_coeffs.empty();
    }
    bool is_exact() const
    {
        return m_prec.is_infinite();
    }
    // Exponent of the first nonzero coefficient.
    Exponent valuation() const
    {
        if (is_zero()) {
            throw zero_within_precision("series has no nonzero coefficient below q^" + m_prec.str());
        }
        return m_lead;
    }
    const Rational &leading_coefficient() const
    {
        if (is_zero()) {
            throw zero_within_precision("series has no nonzero coefficient below q^" + m_prec.str());
        }
        return m_coeffs.front();
    }

    Rational coeff(Exponent e) const
    {
        if (e >= m_prec) {
            throw precision_exceeded("coefficient of q^" + e.str() + " is beyond the precision frontier q^"
                                     + m_prec.str());
        }
        if (m_grid == 1 && !e.is_integer()) {
            throw off_grid("q^" + e.str() + " is not on the integer grid of this series");
        }
        if (is_zero() || e < m_lead) {
            return Rational(0);
        }
        const auto idx = static_cast<std::size_t>((e.halves() - m_lead.halves()) / step());
        return idx < m_coeffs.size() ? m_coeffs[idx] : Rational(0);
    }

    // Dense coefficients for exponents from, from + 1/grid, ..., below to, on
    // the requested grid (which must be at least as fine as the series' own).
    std::vector<Rational> coefficients(Exponent from, Exponent to, int grid = 0) const
    {
        if (grid == 0) {
            grid = m_grid;
        }
        if (grid < m_grid) {
            throw off_grid("cannot sample a half-integer series on the integer grid");
        }
        if (to > m_prec) {
            throw precision_exceeded("requested coefficients up to q^" + to.str() + " beyond precision q^"
                                     + m_prec.str());
        }
        const long st = 2 / grid;
        std::vector<Rational> out;
        if (to <= from) {
            return out;
        }
        out.resize(static_cast<std::size_t>((to.halves() - from.halves() + st - 1) / st));
        if (is_zero()) {
            return out;
        }
        const long own = step();
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            const long h = m_lead.halves() + static_cast<long>(i) * own;
            if (h < from.halves() || h >= to.halves()) {
                continue;
            }
            if ((h - from.halves()) % st != 0) {
                throw off_grid("series has terms off the requested grid");
            }
            out[static_cast<std::size_t>((h - from.halves()) / st)] = m_coeffs[i];
        }
        return out;
    }

    // Nonzero terms in increasing exponent order.
    std::vector<std::pair<Exponent, Rational>> terms() const
    {
        std::vector<std::pair<Exponent, Rational>> out;
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            if (sgn(m_coeffs[i]) != 0) {
                out.emplace_back(Exponent::from_halves(m_lead.halves() + static_cast<long>(i) * step()), m_coeffs[i]);
            }
        }
        return out;
    }

    QSeries truncated(Exponent prec) const
    {
        QSeries s(*this);
        s.m_prec = std::min(m_prec, prec);
        s.normalize();
        return s;
    }

    bool operator==(const QSeries &o) const
    {
        return m_grid == o.m_grid && m_lead == o.m_lead && m_prec == o.m_prec && m_coeffs == o.m_coeffs;
    }

    friend QSeries add(const QSeries &a, const QSeries &b);
    friend QSeries mul(const QSeries &a, const QSeries &b);
    friend QSeries scale(const Rational &r, const QSeries &s);
    friend QSeries invert(const QSeries &s, Exponent cap);
    friend QSeries substitute_q_power(const QSeries &s, long d);

private:
    long step() const
    {
        return 2 / m_grid;
    }
    Exponent stored_end() const
    {
        return Exponent::from_halves(m_lead.halves() + static_cast<long>(m_coeffs.size()) * step());
    }

    void normalize()
    {
        if (!m_prec.is_infinite() && !m_coeffs.empty()) {
            const long room = m_prec.halves() - m_lead.halves();
            const long keep = room <= 0 ? 0 : (room + step() - 1) / step();
            if (static_cast<long>(m_coeffs.size()) > keep) {
                m_coeffs.resize(static_cast<std::size_t>(keep));
            }
        }
        while (!m_coeffs.empty() && sgn(m_coeffs.back()) == 0) {
            m_coeffs.pop_back();
        }
        std::size_t first = 0;
        while (first < m_coeffs.size() && sgn(m_coeffs[first]) == 0) {
            ++first;
        }
        if (first == m_coeffs.size()) {
            m_coeffs.clear();
            m_grid = 1;
            m_lead = m_prec;
            return;
        }
        if (first > 0) {
            m_coeffs.erase(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(first));
            m_lead = Exponent::from_halves(m_lead.halves() + static_cast<long>(first) * step());
        }
        if (m_grid == 2 && m_lead.is_integer()) {
            for (std::size_t i = 1; i < m_coeffs.size(); i += 2) {
                if (sgn(m_coeffs[i]) != 0) {
                    return;
                }
            }
            std::vector<Rational> down;
            down.reserve(m_coeffs.size() / 2 + 1);
            for (std::size_t i = 0; i < m_coeffs.size(); i += 2) {
                down.push_back(std::move(m_coeffs[i]));
            }
            m_coeffs = std::move(down);
            m_grid = 1;
        }
    }

    int m_grid = 1;
    Exponent m_lead = Exponent::infinity();
    Exponent m_prec = Exponent::infinity();
    std::vector<Rational> m_coeffs;
};

namespace detail
{

// lcm of the denominators, and the integer numerators over it.
inline std::pair<Integer, std::vector<Integer>> clear_denominators(std::span<const Rational> cs)
{
    Integer den = 1;
    for (const auto &c : cs) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<Integer> nums(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        nums[i] = cs[i].get_num() * (den / cs[i].get_den());
    }
    return {den, std::move(nums)};
}

// Truncated schoolbook convolution: out[k] = sum_{i+j=k} a[i] b[j] for k < len.
inline std::vector<Integer> convolve(std::span<const Integer> a, std::span<const Integer> b, std::size_t len)
{
    std::vector<Integer> out(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        const std::size_t jmax = std::min(b.size(), len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (sgn(b[j]) != 0) {
                mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
            }
        }
    }
    return out;
}

inline Exponent min_exp(Exponent a, Exponent b)
{
    return a < b ? a : b;
}

} // namespace detail

inline QSeries add(const QSeries &a, const QSeries &b)
{
    const int grid = std::max(a.m_grid, b.m_grid);
    const long st = 2 / grid;
    const Exponent prec = detail::min_exp(a.m_prec, b.m_prec);
    const Exponent lead = detail::min_exp(a.m_lead, b.m_lead);
    const Exponent end = detail::min_exp(prec, std::max(a.is_zero() ? lead : a.stored_end(),
                                                         b.is_zero() ? lead : b.stored_end()));
    if (lead >= end) {
        return QSeries::zero(prec);
    }
    std::vector<Rational> out(static_cast<std::size_t>((end.halves() - lead.halves() + st - 1) / st));
    for (const QSeries *s : {&a, &b}) {
        for (std::size_t i = 0; i < s->m_coeffs.size(); ++i) {
            const long h = s->m_lead.halves() + static_cast<long>(i) * s->step();
            if (h >= end.halves()) {
                break;
            }
            out[static_cast<std::size_t>((h - lead.halves()) / st)] += s->m_coeffs[i];
        }
    }
    return QSeries::from_coefficients(std::move(out), lead, prec, grid);
}

inline QSeries scale(const Rational &r, const QSeries &s)
{
    QSeries out(s);
    for (auto &c : out.m_coeffs) {
        c *= r;
    }
    out.normalize();
    return out;
}

inline QSeries negate(const QSeries &s)
{
    return scale(Rational(-1), s);
}

inline QSeries sub(const QSeries &a, const QSeries &b)
{
    return add(a, negate(b));
}

// Exact product. The precision frontier is the smaller of each operand's
// frontier shifted by the other's valuation. Coefficients are cleared to
// integers and convolved with a schoolbook loop.
inline QSeries mul(const QSeries &a, const QSeries &b)
{
    const Exponent prec = detail::min_exp(a.m_prec + b.m_lead, b.m_prec + a.m_lead);
    if (a.is_zero() || b.is_zero()) {
        return QSeries::zero(prec);
    }
    const int grid = std::max(a.m_grid, b.m_grid);
    const long st = 2 / grid;
    auto spread = [grid](const QSeries &s) {
        auto [den, nums] = detail::clear_denominators(s.m_coeffs);
        if (s.m_grid == grid) {
            return std::make_pair(den, std::move(nums));
        }
        std::vector<Integer> wide(2 * nums.size() - 1);
        for (std::size_t i = 0; i < nums.size(); ++i) {
            wide[2 * i] = std::move(nums[i]);
        }
        return std::make_pair(den, std::move(wide));
    };
    auto [da, na] = spread(a);
    auto [db, nb] = spread(b);
    const Exponent lead = a.m_lead + b.m_lead;
    std::size_t len = na.size() + nb.size() - 1;
    if (!prec.is_infinite()) {
        const long room = (prec.halves() - lead.halves() + st - 1) / st;
        len = std::min(len, static_cast<std::size_t>(std::max(room, 0L)));
    }
    auto conv = detail::convolve(na, nb, len);
    const Integer den = da * db;
    std::vector<Rational> out(conv.size());
    for (std::size_t i = 0; i < conv.size(); ++i) {
        if (sgn(conv[i]) != 0) {
            out[i] = make_rational(conv[i], den);
        }
    }
    return QSeries::from_coefficients(std::move(out), lead, prec, grid);
}

// Repeated squaring; pow(s, 0) is the exact constant one.
inline QSeries pow(const QSeries &s, unsigned long n)
{
    QSeries result = QSeries::one();
    QSeries base = s;
    while (n != 0) {
        if (n & 1UL) {
            result = mul(result, base);
        }
        n >>= 1;
        if (n != 0) {
            base = mul(base, base);
        }
    }
    return result;
}

// Multiplicative inverse of a series with valuation 0. The result is known up
// to min(s.prec(), cap); at least one of the two must be finite.
inline QSeries invert(const QSeries &s, Exponent cap = Exponent::infinity())
{
    if (s.is_zero() || s.m_lead != Exponent(0)) {
        throw not_a_unit("only series with valuation 0 are invertible");
    }
    const Exponent prec = detail::min_exp(s.m_prec, cap);
    if (prec.is_infinite()) {
        throw std::invalid_argument("inverting an exact series requires a finite precision cap");
    }
    const long st = s.step();
    const auto len = static_cast<std::size_t>(std::max((prec.halves() + st - 1) / st, 0L));
    const auto &a = s.m_coeffs;
    auto [den, num] = detail::clear_denominators(a);
    std::vector<Rational> out(len);
    if (abs(num[0]) == 1) {
        // 1/s = den * (1/num) and 1/num has integer coefficients.
        const Integer sign = num[0];
        std::vector<Integer> inv(len);
        if (len > 0) {
            inv[0] = sign;
        }
        for (std::size_t n = 1; n < len; ++n) {
            Integer acc = 0;
            const std::size_t kmax = std::min(n, num.size() - 1);
            for (std::size_t k = 1; k <= kmax; ++k) {
                mpz_addmul(acc.get_mpz_t(), num[k].get_mpz_t(), inv[n - k].get_mpz_t());
            }
            inv[n] = -acc * sign;
        }
        for (std::size_t i = 0; i < len; ++i) {
            out[i] = Rational(inv[i] * den);
        }
    } else {
        const Rational inv0 = 1 / a[0];
        if (len > 0) {
            out[0] = inv0;
        }
        for (std::size_t n = 1; n < len; ++n) {
            Rational acc = 0;
            const std::size_t kmax = std::min(n, a.size() - 1);
            for (std::size_t k = 1; k <= kmax; ++k) {
                acc += a[k] * out[n - k];
            }
            out[n] = -acc * inv0;
        }
    }
    return QSeries::from_coefficients(std::move(out), 0, prec, s.m_grid);
}

// f(tau) -> f(d tau): every exponent and the precision frontier scale by d.
inline QSeries substitute_q_power(const QSeries &s, long d)
{
    if (d < 1) {
        throw std::invalid_argument("substitute_q_power needs a positive integer");
    }
    if (s.is_zero()) {
        return QSeries::zero(s.m_prec * d);
    }
    std::vector<Rational> out((s.m_coeffs.size() - 1) * static_cast<std::size_t>(d) + 1);
    for (std::size_t i = 0; i < s.m_coeffs.size(); ++i) {
        out[i * static_cast<std::size_t>(d)] = s.m_coeffs[i];
    }
    return QSeries::from_coefficients(std::move(out), s.m_lead * d, s.m_prec * d, s.m_grid);
}

inline Exponent valuation(const QSeries &s)
{
    return s.valuation();
}

inline Rational coeff(const QSeries &s, Exponent e)
{
    return s.coeff(e);
}

inline QSeries operator+(const QSeries &a, const QSeries &b)
{
    return add(a, b);
}
inline QSeries operator-(const QSeries &a, const QSeries &b)
{
    return sub(a, b);
}
inline QSeries operator-(const QSeries &a)
{
    return negate(a);
}
inline QSeries operator*(const QSeries &a, const QSeries &b)
{
    return mul(a, b);
}
inline QSeries operator*(const Rational &r, const QSeries &s)
{
    return scale(r, s);
}

// First exponent below `upto` (and below both frontiers) where a and b differ.
inline std::optional<Exponent> first_difference(const QSeries &a, const QSeries &b,
                                                Exponent upto = Exponent::infinity())
{
    const Exponent end = std::min({upto, a.prec(), b.prec()});
    const auto d = sub(a, b).truncated(end);
    if (d.is_zero()) {
        return std::nullopt;
    }
    return d.valuation();
}

// Sage-like rendering: "1 + 24*q + 24*q^2 + O(q^8)".
inline std::string to_string(const QSeries &s)
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : s.terms()) {
        const bool neg = sgn(c) < 0;
        const Rational mag = abs(c);
        if (first) {
            os << (neg ? "-" : "");
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == 1;
        if (e == Exponent(0)) {
            os << to_string(mag);
            continue;
        }
        if (!unit) {
            os << to_string(mag) << '*';
        }
        os << 'q';
        if (e != Exponent(1)) {
            os << '^' << (e.is_integer() ? e.str() : "(" + e.str() + ")");
        }
    }
    if (!s.is_exact()) {
        os << (first ? "" : " + ") << "O(q^" << (s.prec().is_integer() ? s.prec().str() : "(" + s.prec().str() + ")")
           << ')';
    } else if (first) {
        os << '0';
    }
    return os.str();
}

inline std::ostream &operator<<(std::ostream &os, const QSeries &s)
{
    return os << to_string(s);
}

} // namespace cuspbase

#endif
