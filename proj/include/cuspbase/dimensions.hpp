#ifndef CUSPBASE_DIMENSIONS_HPP
#define CUSPBASE_DIMENSIONS_HPP

#include <numeric>
#include <string>
#include <vector>

#include <cuspbase/errors.hpp>

namespace cuspbase
{

// Arithmetic invariants of Gamma0(N).
struct Gamma0Invariants {
    long level = 1;
    long index = 1;  // [SL2(Z) : Gamma0(N)]
    long e2 = 0;     // elliptic points of order 2
    long e3 = 0;     // elliptic points of order 3
    long cusps = 0;
    long genus = 0;
};

namespace detail
{

inline std::vector<long> prime_divisors(long n)
{
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

inline long euler_phi(long n)
{
    long out = n;
    for (long p : prime_divisors(n)) {
        out = out / p * (p - 1);
    }
    return out;
}

// Kronecker symbol (-4/p) and (-3/p) for a prime p.
inline long chi_minus4(long p)
{
    if (p == 2) {
        return 0;
    }
    return p % 4 == 1 ? 1 : -1;
}
inline long chi_minus3(long p)
{
    if (p == 3) {
        return 0;
    }
    return p % 3 == 1 ? 1 : -1;
}

} // namespace detail

inline Gamma0Invariants gamma0_invariants(long level)
{
    if (level < 1) {
        throw unsupported_level("level must be a positive integer");
    }
    Gamma0Invariants g;
    g.level = level;
    const auto primes = detail::prime_divisors(level);
    g.index = level;
    for (long p : primes) {
        g.index = g.index / p * (p + 1);
    }
    g.e2 = 0;
    if (level % 4 != 0) {
        g.e2 = 1;
        for (long p : primes) {
            g.e2 *= 1 + detail::chi_minus4(p);
        }
    }
    g.e3 = 0;
    if (level % 9 != 0) {
        g.e3 = 1;
        for (long p : primes) {
            g.e3 *= 1 + detail::chi_minus3(p);
        }
    }
    g.cusps = 0;
    for (long d = 1; d <= level; ++d) {
        if (level % d == 0) {
            g.cusps += detail::euler_phi(std::gcd(d, level / d));
        }
    }
    // g = 1 + mu/12 - e2/4 - e3/3 - c/2, evaluated over the common denominator 12.
    const long twelve_g = 12 + g.index - 3 * g.e2 - 4 * g.e3 - 6 * g.cusps;
    if (twelve_g % 12 != 0) {
        throw invariant_violation("non-integral genus for level " + std::to_string(level));
    }
    g.genus = twelve_g / 12;
    return g;
}

namespace detail
{

inline void require_even_weight(long weight)
{
    if (weight % 2 != 0) {
        throw odd_weight("weight " + std::to_string(weight) + " is odd");
    }
    if (weight < 0) {
        throw odd_weight("weight " + std::to_string(weight) + " is negative");
    }
}

} // namespace detail

// dim M_w(Gamma0(N)) for even w >= 0 (w = 0 gives the constants).
inline long dim_M(long level, long weight)
{
    detail::require_even_weight(weight);
    const auto g = gamma0_invariants(level);
    if (weight == 0) {
        return 1;
    }
    if (weight == 2) {
        return g.genus + g.cusps - 1;
    }
    return (weight - 1) * (g.genus - 1) + (weight / 4) * g.e2 + (weight / 3) * g.e3 + (weight / 2) * g.cusps;
}

inline long dim_S(long level, long weight)
{
    detail::require_even_weight(weight);
    const auto g = gamma0_invariants(level);
    if (weight == 0) {
        return 0;
    }
    if (weight == 2) {
        return g.genus;
    }
    return dim_M(level, weight) - g.cusps;
}

// floor(w * mu / 12) + 1 leading coefficients determine a form in M_w(Gamma0(N)).
inline long sturm_bound(long level, long weight)
{
    detail::require_even_weight(weight);
    return weight * gamma0_invariants(level).index / 12 + 1;
}

// Default evaluation depth: twice the Sturm bound plus four coefficients.
inline long default_precision(long level, long weight)
{
    return 2 * sturm_bound(level, weight) + 4;
}

} // namespace cuspbase

#endif
