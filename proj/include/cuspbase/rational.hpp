#ifndef CUSPBASE_RATIONAL_HPP
#define CUSPBASE_RATIONAL_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cuspbase
{

// Exact rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) after every arithmetic operation; only direct construction from
// a numerator/denominator pair needs an explicit canonicalize(), which
// make_rational() takes care of.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer &num, const Integer &den = 1)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rational &r)
{
    return r.get_den() == 1;
}

// "p" or "p/q"; lossless and free of decimal points.
inline std::string to_string(const Rational &r)
{
    return r.get_str(10);
}

// Accepts an optional sign, digits and an optional "/digits" part. Leading and
// trailing whitespace is not accepted.
inline Rational parse_rational(std::string_view text)
{
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            ++j;
        }
        return j;
    };
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        ++i;
    }
    const auto num_end = digits(i);
    if (num_end == i) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    std::string num_text(text.substr(0, num_end));
    if (num_text.front() == '+') {
        num_text.erase(0, 1);
    }
    Integer num(num_text, 10);
    Integer den = 1;
    if (num_end < text.size()) {
        if (text[num_end] != '/') {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        const auto den_end = digits(num_end + 1);
        if (den_end == num_end + 1 || den_end != text.size()) {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        den = Integer(std::string(text.substr(num_end + 1)), 10);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
    }
    return make_rational(num, den);
}

} // namespace cuspbase

#endif
