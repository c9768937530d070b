#ifndef CUSPBASE_EXPONENT_HPP
#define CUSPBASE_EXPONENT_HPP

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace cuspbase
{

// An exponent of q on the half-integer lattice (1/2)Z, plus a +infinity used
// as the precision frontier of exact (non-truncated) series.
class Exponent
{
    static constexpr long inf_halves = std::numeric_limits<long>::max() / 4;

public:
    constexpr Exponent() = default;
    // Implicit on purpose: integer exponents read naturally as coeff(s, 3).
    constexpr Exponent(long n) : m_halves(2 * n) {}

    static constexpr Exponent from_halves(long h)
    {
        Exponent e;
        e.m_halves = h;
        return e;
    }
    static constexpr Exponent infinity()
    {
        return from_halves(inf_halves);
    }

    constexpr long halves() const
    {
        return m_halves;
    }
    constexpr bool is_infinite() const
    {
        return m_halves >= inf_halves;
    }
    constexpr bool is_integer() const
    {
        return m_halves % 2 == 0;
    }
    // Integer part rounded toward -infinity / +infinity.
    constexpr long floor() const
    {
        return m_halves >= 0 ? m_halves / 2 : -((-m_halves + 1) / 2);
    }
    constexpr long ceil() const
    {
        return m_halves >= 0 ? (m_halves + 1) / 2 : -((-m_halves) / 2);
    }

    constexpr auto operator<=>(const Exponent &) const = default;

    constexpr Exponent operator+(Exponent o) const
    {
        if (is_infinite() || o.is_infinite()) {
            return infinity();
        }
        return from_halves(m_halves + o.m_halves);
    }
    constexpr Exponent operator-(Exponent o) const
    {
        if (o.is_infinite()) {
            throw std::domain_error("subtracting an infinite exponent");
        }
        if (is_infinite()) {
            return infinity();
        }
        return from_halves(m_halves - o.m_halves);
    }
    constexpr Exponent operator*(long d) const
    {
        if (is_infinite()) {
            return infinity();
        }
        return from_halves(m_halves * d);
    }

    std::string str() const
    {
        if (is_infinite()) {
            return "inf";
        }
        if (is_integer()) {
            return std::to_string(m_halves / 2);
        }
        return std::to_string(m_halves) + "/2";
    }

private:
    long m_halves = 0;
};

} // namespace cuspbase

#endif
