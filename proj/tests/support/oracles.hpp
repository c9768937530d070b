#ifndef CUSPBASE_TESTS_ORACLES_HPP
#define CUSPBASE_TESTS_ORACLES_HPP

// Slow reference computations that share no code path with the library's
// expanders, plus helpers that walk catalog expressions.

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <cuspbase/cuspbase.hpp>

namespace oracle
{

using cuspbase::Integer;
using cuspbase::Rational;

// prod_m prod_{n>=1} (1 - q^{m n})^{r_m}, one factor at a time: each
// (1 - x) multiplies directly, each 1/(1 - x) is a convolution with the
// geometric series 1 + x + x^2 + ...
inline std::vector<Integer> eta_product(const std::vector<std::pair<long, long>> &terms, std::size_t len)
{
    std::vector<Integer> acc(len);
    acc[0] = 1;
    for (const auto &[m, r] : terms) {
        for (std::size_t step = static_cast<std::size_t>(m); step < len; step += static_cast<std::size_t>(m)) {
            std::vector<Integer> factor(len);
            if (r > 0) {
                factor[0] = 1;
                factor[step] = -1;
            } else {
                for (std::size_t j = 0; j < len; j += step) {
                    factor[j] = 1;
                }
            }
            for (long rep = 0; rep < std::abs(r); ++rep) {
                std::vector<Integer> next(len);
                for (std::size_t i = 0; i < len; ++i) {
                    if (acc[i] == 0) {
                        continue;
                    }
                    for (std::size_t j = 0; i + j < len; ++j) {
                        if (factor[j] != 0) {
                            next[i + j] += acc[i] * factor[j];
                        }
                    }
                }
                acc = std::move(next);
            }
        }
    }
    return acc;
}

// Order at infinity of an eta quotient, in halves (must be a half-integer).
inline long eta_valuation_halves(const std::vector<std::pair<long, long>> &terms)
{
    long s = 0;
    for (const auto &[m, r] : terms) {
        s += m * r;
    }
    return s / 12;
}

// sigma_k(n) by trial division over every d <= n.
inline Integer sigma(unsigned long k, unsigned long n)
{
    Integer acc = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), d, k);
            acc += p;
        }
    }
    return acc;
}

// Coefficients of E_w(tau) for w = 2, 4, 6.
inline std::vector<Rational> eisenstein(int weight, std::size_t len)
{
    const long c = weight == 2 ? -24 : weight == 4 ? 240 : -504;
    std::vector<Rational> out(len);
    out[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        out[n] = Rational(c * sigma(static_cast<unsigned long>(weight - 1), n));
    }
    return out;
}

// x/(1-x)^2 for x = sign * q^(h/2) on a half-integer grid of len slots,
// by long division of x by the polynomial 1 - 2x + x^2.
inline std::vector<Rational> lambert_term(long h, int sign, std::size_t len)
{
    std::vector<Rational> out(len);
    if (h == 0) {
        const Rational x(sign);
        out[0] = x / ((1 - x) * (1 - x));
        return out;
    }
    std::vector<Rational> num(len);
    std::vector<Rational> den(len);
    if (static_cast<std::size_t>(h) < len) {
        num[static_cast<std::size_t>(h)] = sign;
        den[static_cast<std::size_t>(h)] = -2 * sign;
    }
    if (static_cast<std::size_t>(2 * h) < len) {
        den[static_cast<std::size_t>(2 * h)] = 1;
    }
    den[0] = 1;
    for (std::size_t i = 0; i < len; ++i) {
        Rational c = num[i];
        for (std::size_t j = 1; j <= i; ++j) {
            c -= den[j] * out[i - j];
        }
        out[i] = c;
    }
    return out;
}

// wp(z; 1, N tau)/pi^2 at z = (a tau + b)/2 as a grid-2 coefficient list of
// len slots, summing the Lambert terms over the lattice one by one.
inline std::vector<Rational> wpa(long a, int b, long level, std::size_t len)
{
    const int sign = b == 0 ? 1 : -1;
    std::vector<Rational> acc(len);
    acc[0] += Rational(1, 12);
    auto add = [&](const std::vector<Rational> &t, long mult) {
        for (std::size_t i = 0; i < len; ++i) {
            acc[i] += mult * t[i];
        }
    };
    add(lambert_term(a, sign, len), 1);
    for (long n = 1; 2 * n * level - a < static_cast<long>(len) || 2 * n * level < static_cast<long>(len); ++n) {
        add(lambert_term(2 * n * level + a, sign, len), 1);
        add(lambert_term(2 * n * level - a, sign, len), 1);
        add(lambert_term(2 * n * level, 1, len), -2);
    }
    for (auto &c : acc) {
        c *= -4;
    }
    return acc;
}

// Order of vanishing of prod eta(d tau)^{r_d} at the cusp 1/c of Gamma0(N).
inline Rational cusp_order(const std::vector<std::pair<long, long>> &terms, long level, long c)
{
    Rational acc = 0;
    for (const auto &[d, r] : terms) {
        const long g = std::gcd(c, d);
        acc += Rational(g * g * r, d);
    }
    return acc * Rational(level, 24 * std::gcd(c, level / c) * c);
}

// Whether an eta quotient with the given scales is a holomorphic cusp form
// on Gamma0(N) with trivial character.
inline bool is_cusp_form_on(const std::vector<std::pair<long, long>> &terms, long level)
{
    long sr = 0;
    long s1 = 0;
    long s2 = 0;
    Integer prod = 1;
    Integer inv = 1;
    for (const auto &[d, r] : terms) {
        if (level % d != 0) {
            return false;
        }
        sr += r;
        s1 += d * r;
        s2 += (level / d) * r;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(std::abs(r)));
        (r > 0 ? prod : inv) *= p;
    }
    if (sr % 2 != 0 || s1 % 24 != 0 || s2 % 24 != 0) {
        return false;
    }
    Integer s = prod * inv;
    if ((sr / 2) % 2 != 0) {
        return false; // (-1)^k s is negative, never a square
    }
    if (mpz_perfect_square_p(s.get_mpz_t()) == 0) {
        return false;
    }
    for (long c = 1; c <= level; ++c) {
        if (level % c == 0 && cusp_order(terms, level, c) <= 0) {
            return false;
        }
    }
    return true;
}

// Visits every leaf of an expression tree.
template <typename Fn>
void for_each_leaf(const cuspbase::FormExpr &e, Fn &&fn)
{
    namespace ex = cuspbase::expr;
    std::visit(
        [&](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ex::Binary>) {
                for_each_leaf(v.lhs, fn);
                for_each_leaf(v.rhs, fn);
            } else if constexpr (std::is_same_v<T, ex::Negate> || std::is_same_v<T, ex::Rescale>) {
                for_each_leaf(v.operand, fn);
            } else if constexpr (std::is_same_v<T, ex::Power>) {
                for_each_leaf(v.base, fn);
            } else if constexpr (std::is_same_v<T, ex::Group>) {
                for_each_leaf(v.inner, fn);
            } else {
                fn(v);
            }
        },
        e.node().value);
}

// Number of literal coefficients (constants and explicit series entries).
inline std::size_t coefficient_count(const cuspbase::FormExpr &e)
{
    namespace ex = cuspbase::expr;
    std::size_t n = 0;
    for_each_leaf(e, [&](const auto &v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ex::Constant>) {
            ++n;
        } else if constexpr (std::is_same_v<T, ex::Series>) {
            n += v.coeffs.size();
        }
    });
    return n;
}

// Copy of e with its index-th literal coefficient increased by delta.
inline cuspbase::FormExpr corrupt_at(const cuspbase::FormExpr &e, std::size_t &index, const Rational &delta)
{
    namespace ex = cuspbase::expr;
    using cuspbase::FormExpr;
    using cuspbase::make_expr;
    return std::visit(
        [&](const auto &v) -> FormExpr {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ex::Constant>) {
                if (index-- == 0) {
                    return make_expr(ex::Constant{v.value + delta});
                }
                return e;
            } else if constexpr (std::is_same_v<T, ex::Series>) {
                if (index < v.coeffs.size()) {
                    auto copy = v;
                    copy.coeffs[index] += delta;
                    index = static_cast<std::size_t>(-1) / 2;
                    return make_expr(copy);
                }
                index -= v.coeffs.size();
                return e;
            } else if constexpr (std::is_same_v<T, ex::Binary>) {
                auto l = corrupt_at(v.lhs, index, delta);
                auto r = corrupt_at(v.rhs, index, delta);
                return make_expr(ex::Binary{v.op, l, r});
            } else if constexpr (std::is_same_v<T, ex::Negate>) {
                return make_expr(ex::Negate{corrupt_at(v.operand, index, delta)});
            } else if constexpr (std::is_same_v<T, ex::Rescale>) {
                return make_expr(ex::Rescale{corrupt_at(v.operand, index, delta), v.factor});
            } else if constexpr (std::is_same_v<T, ex::Power>) {
                return make_expr(ex::Power{corrupt_at(v.base, index, delta), v.exponent});
            } else if constexpr (std::is_same_v<T, ex::Group>) {
                return make_expr(ex::Group{corrupt_at(v.inner, index, delta)});
            } else {
                return e;
            }
        },
        e.node().value);
}

inline cuspbase::FormExpr corrupted(const cuspbase::FormExpr &e, std::size_t index, const Rational &delta = Rational(1))
{
    return corrupt_at(e, index, delta);
}

// Every expression stored in a catalog, labelled.
inline std::vector<std::pair<std::string, cuspbase::FormExpr>> catalog_expressions(const cuspbase::Catalog &cat)
{
    std::vector<std::pair<std::string, cuspbase::FormExpr>> out;
    for (long n : cat.levels()) {
        const auto &lc = cat.level(n);
        const std::string tag = "n" + std::to_string(n) + ".";
        out.emplace_back(tag + "delta", lc.delta.expr);
        for (const auto &[k, f] : lc.generators) {
            out.emplace_back(tag + "E" + std::to_string(k.first) + "_" + std::to_string(k.second), f.expr);
        }
        for (const auto &[k, f] : lc.seeds) {
            out.emplace_back(tag + "F" + std::to_string(k.first) + "_" + std::to_string(k.second), f.expr);
        }
        for (const auto &p : lc.printed) {
            out.emplace_back(tag + "printed." + p.id, p.form.expr);
        }
        for (const auto &i : lc.identities) {
            out.emplace_back(tag + "lhs." + i.id, i.lhs.expr);
            out.emplace_back(tag + "rhs." + i.id, i.rhs.expr);
        }
    }
    return out;
}

} // namespace oracle

#endif
