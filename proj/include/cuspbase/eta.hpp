#ifndef CUSPBASE_ETA_HPP
#define CUSPBASE_ETA_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <cuspbase/errors.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/qseries.hpp>
#include <cuspbase/rational.hpp>

namespace cuspbase
{

// prod_m eta(m tau)^{r_m}. Terms keep the order they were written in so that
// the text form survives a round trip; scales are unique and exponents nonzero.
class EtaQuotient
{
public:
    using term = std::pair<long, long>; // (scale m, exponent r_m)

    EtaQuotient() = default;
    explicit EtaQuotient(std::vector<term> terms) : m_terms(std::move(terms))
    {
        for (std::size_t i = 0; i < m_terms.size(); ++i) {
            if (m_terms[i].first < 1) {
                throw invalid_atom("eta scale must be a positive integer");
            }
            if (m_terms[i].second == 0) {
                throw invalid_atom("eta exponent must be nonzero");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (m_terms[j].first == m_terms[i].first) {
                    throw invalid_atom("duplicate eta scale " + std::to_string(m_terms[i].first));
                }
            }
        }
    }

    const std::vector<term> &terms() const
    {
        return m_terms;
    }

    // Juxtaposition of two quotients; shared scales add their exponents.
    EtaQuotient operator*(const EtaQuotient &o) const
    {
        std::vector<term> out = m_terms;
        for (const auto &[m, r] : o.m_terms) {
            auto it = std::find_if(out.begin(), out.end(), [m = m](const term &t) { return t.first == m; });
            if (it == out.end()) {
                out.emplace_back(m, r);
            } else if ((it->second += r) == 0) {
                out.erase(it);
            }
        }
        return EtaQuotient(std::move(out));
    }

    bool operator==(const EtaQuotient &o) const
    {
        auto a = m_terms;
        auto b = o.m_terms;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    std::string str() const
    {
        std::string out;
        for (const auto &[m, r] : m_terms) {
            if (!out.empty()) {
                out += ',';
            }
            out += std::to_string(m) + ':' + std::to_string(r);
        }
        return out;
    }

private:
    std::vector<term> m_terms;
};

// "m:r" pairs joined by commas, e.g. "2:16,1:-8". Whitespace is ignored.
inline EtaQuotient parse_eta_quotient(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    std::vector<EtaQuotient::term> terms;
    if (s.empty()) {
        return EtaQuotient{};
    }
    std::size_t pos = 0;
    auto read_int = [&](bool allow_sign) {
        const std::size_t start = pos;
        if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            ++pos;
        }
        const std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
        if (pos == digits || pos - digits > 12) {
            throw syntax_error("expected an integer in eta quotient '" + s + "'", start);
        }
        return std::stol(s.substr(start, pos - start));
    };
    while (true) {
        const long m = read_int(false);
        if (pos >= s.size() || s[pos] != ':') {
            throw syntax_error("expected ':' in eta quotient '" + s + "'", pos);
        }
        ++pos;
        const long r = read_int(true);
        terms.emplace_back(m, r);
        if (pos == s.size()) {
            break;
        }
        if (s[pos] != ',') {
            throw syntax_error("expected ',' in eta quotient '" + s + "'", pos);
        }
        ++pos;
    }
    return EtaQuotient(std::move(terms));
}

struct EtaProfile {
    Rational weight;    // (1/2) sum r_m
    Rational valuation; // (1/24) sum m r_m, the order at infinity
};

inline EtaProfile eta_profile(const EtaQuotient &e)
{
    long sum_r = 0;
    long sum_mr = 0;
    for (const auto &[m, r] : e.terms()) {
        sum_r += r;
        sum_mr += m * r;
    }
    return {make_rational(sum_r, 2), make_rational(sum_mr, 24)};
}

namespace detail
{

using ZPoly = std::vector<Integer>;

// prod_{k>=1} (1 - q^{m k}) truncated to len coefficients, by Euler's
// pentagonal number theorem.
inline ZPoly euler_product(long m, std::size_t len)
{
    ZPoly out(len);
    const auto n = static_cast<long>(len);
    for (long j = 0;; ++j) {
        bool any = false;
        for (long jj : {j, -j}) {
            if (j == 0 && jj != 0) {
                continue;
            }
            const long e = m * (jj * (3 * jj - 1) / 2);
            if (e < n) {
                out[static_cast<std::size_t>(e)] = (jj % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any) {
            break;
        }
    }
    return out;
}

inline ZPoly mul_trunc(const ZPoly &a, const ZPoly &b, std::size_t len)
{
    return convolve(a, b, len);
}

inline ZPoly pow_trunc(ZPoly base, unsigned long n, std::size_t len)
{
    ZPoly result(len);
    if (len > 0) {
        result[0] = 1;
    }
    while (n != 0) {
        if (n & 1UL) {
            result = mul_trunc(result, base, len);
        }
        n >>= 1;
        if (n != 0) {
            base = mul_trunc(base, base, len);
        }
    }
    return result;
}

// Inverse of an integer series with constant term 1.
inline ZPoly inv_trunc(const ZPoly &a, std::size_t len)
{
    ZPoly out(len);
    if (len == 0) {
        return out;
    }
    out[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        Integer acc = 0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k) {
            if (sgn(a[k]) != 0) {
                mpz_addmul(acc.get_mpz_t(), a[k].get_mpz_t(), out[n - k].get_mpz_t());
            }
        }
        out[n] = -acc;
    }
    return out;
}

} // namespace detail

// q^{sum m r_m / 24} prod_m prod_{k>=1} (1 - q^{m k})^{r_m}, truncated at prec.
//
// Positive and negative powers are accumulated separately as integer series;
// the negative part (constant term 1) is inverted once at the end. The leading
// exponent may be a half-integer (grid 2); other fractional valuations are
// rejected.
inline QSeries eta_expand(const EtaQuotient &e, Exponent prec)
{
    const auto prof = eta_profile(e);
    const Rational twice_val = 2 * prof.valuation;
    if (!is_integral(twice_val)) {
        throw fractional_valuation("eta quotient " + e.str() + " has valuation " + to_string(prof.valuation)
                                   + ", not a multiple of 1/2");
    }
    const Exponent lead = Exponent::from_halves(twice_val.get_num().get_si());
    if (prec.is_infinite()) {
        throw std::invalid_argument("eta_expand needs a finite precision");
    }
    if (prec <= lead) {
        return QSeries::zero(prec);
    }
    const auto len = static_cast<std::size_t>((prec - lead).ceil());
    detail::ZPoly num(len), den(len);
    num[0] = 1;
    den[0] = 1;
    for (const auto &[m, r] : e.terms()) {
        if (static_cast<std::size_t>(m) >= len) {
            continue;
        }
        const auto factor = detail::pow_trunc(detail::euler_product(m, len), static_cast<unsigned long>(r > 0 ? r : -r), len);
        auto &target = r > 0 ? num : den;
        target = detail::mul_trunc(target, factor, len);
    }
    const auto body = detail::mul_trunc(num, detail::inv_trunc(den, len), len);
    std::vector<Rational> coeffs(body.size());
    std::vector<Rational> spaced;
    for (std::size_t i = 0; i < body.size(); ++i) {
        coeffs[i] = Rational(body[i]);
    }
    if (lead.is_integer()) {
        return QSeries::from_coefficients(std::move(coeffs), lead, prec, 1);
    }
    spaced.resize(2 * coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        spaced[2 * i] = std::move(coeffs[i]);
    }
    return QSeries::from_coefficients(std::move(spaced), lead, prec, 2);
}

} // namespace cuspbase

#endif
