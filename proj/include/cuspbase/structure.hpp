#ifndef CUSPBASE_STRUCTURE_HPP
#define CUSPBASE_STRUCTURE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <cuspbase/basis.hpp>
#include <cuspbase/catalog.hpp>
#include <cuspbase/dimensions.hpp>
#include <cuspbase/errors.hpp>
#include <cuspbase/qseries.hpp>

namespace cuspbase
{

enum class Status { pass, fail, info };

struct CheckResult {
    Status status = Status::pass;
    std::string id;
    std::string detail;
};

using Report = std::vector<CheckResult>;

inline std::string to_string(Status s)
{
    switch (s) {
        case Status::pass:
            return "PASS";
        case Status::fail:
            return "FAIL";
        default:
            return "INFO";
    }
}

inline std::string format_line(const CheckResult &r)
{
    return to_string(r.status) + " " + r.id + (r.detail.empty() ? "" : " " + r.detail);
}

inline bool all_passed(const Report &r)
{
    for (const auto &c : r) {
        if (c.status == Status::fail) {
            return false;
        }
    }
    return true;
}

inline CheckResult make_check(bool ok, std::string id, std::string detail)
{
    return CheckResult{ok ? Status::pass : Status::fail, std::move(id), std::move(detail)};
}

// dim S_(2k+rho) - dim S_2k = nu for k >= 2 and nu - 1 for k = 1.
inline Report dimension_step_checks(long level, long k_max, const Catalog &catalog = builtin_catalog())
{
    const auto p = level_profile(level, catalog);
    Report out;
    for (long k = 1; k <= k_max; ++k) {
        const long diff = dim_S(level, 2 * k + p.delta_weight) - dim_S(level, 2 * k);
        const long want = k == 1 ? p.delta_valuation - 1 : p.delta_valuation;
        out.push_back(make_check(diff == want, "n" + std::to_string(level) + ".dim_step.k" + std::to_string(k),
                                 "dim S_" + std::to_string(2 * k + p.delta_weight) + " - dim S_"
                                     + std::to_string(2 * k) + " = " + std::to_string(diff) + ", expected "
                                     + std::to_string(want)));
    }
    return out;
}

struct LadderDimensionReport {
    long k0 = 1;
    // differences[i] = dim S_2k - dim M_2(k-k0) for k = k0 + 1 + i.
    std::vector<long> differences;
    Report checks;
};

// The seed-ladder dimension identity dim S_2k = dim M_2(k-k0) + dim S_2k0 - 1
// over one period k0 < k <= k0 + 6, and 6-periodicity of the difference for
// the following `periods` periods.
inline LadderDimensionReport ladder_dimension_check(long level, long k0, long periods = 4)
{
    LadderDimensionReport rep;
    rep.k0 = k0;
    const long target = dim_S(level, 2 * k0) - 1;
    const std::string base = "n" + std::to_string(level) + ".ladder_dim.k0_" + std::to_string(k0);
    for (long k = k0 + 1; k <= k0 + 6 * (periods + 1); ++k) {
        rep.differences.push_back(dim_S(level, 2 * k) - dim_M(level, 2 * (k - k0)));
    }
    for (long i = 0; i < 6; ++i) {
        const long k = k0 + 1 + i;
        const long d = rep.differences[static_cast<std::size_t>(i)];
        rep.checks.push_back(make_check(d == target, base + ".k" + std::to_string(k),
                                        "dim S_" + std::to_string(2 * k) + " - dim M_" + std::to_string(2 * (k - k0))
                                            + " = " + std::to_string(d) + ", dim S_" + std::to_string(2 * k0)
                                            + " - 1 = " + std::to_string(target)));
    }
    std::optional<long> broken;
    for (std::size_t i = 6; i < rep.differences.size(); ++i) {
        if (rep.differences[i] != rep.differences[i - 6]) {
            broken = k0 + 1 + static_cast<long>(i);
            break;
        }
    }
    rep.checks.push_back(make_check(!broken, base + ".periodic",
                                    broken ? "difference breaks 6-periodicity at k = " + std::to_string(*broken)
                                           : "difference is 6-periodic for k <= "
                                                 + std::to_string(k0 + 6 * (periods + 1))));
    return rep;
}

// For k >= rho/2 + 2 the s-th cusp basis element has valuation s, s <= nu.
inline Report valuation_law_check(BasisEngine &engine, long k_last)
{
    const auto &p = engine.profile();
    const long n = engine.level();
    Report out;
    for (long k = p.delta_weight / 2 + 2; k <= k_last; ++k) {
        const auto b = engine.s_basis(k);
        const auto vals = b.valuations();
        bool ok = static_cast<long>(vals.size()) >= p.delta_valuation;
        std::string detail = "weight " + std::to_string(2 * k) + " valuations";
        for (long s = 1; s <= p.delta_valuation && ok; ++s) {
            ok = vals[static_cast<std::size_t>(s - 1)] == s
                 && b.elements[static_cast<std::size_t>(s - 1)].leading_coefficient() == 1;
        }
        for (std::size_t i = 0; i < vals.size() && i < static_cast<std::size_t>(p.delta_valuation); ++i) {
            detail += (i ? "," : " ") + std::to_string(vals[i]);
        }
        out.push_back(make_check(ok, "n" + std::to_string(n) + ".valuation_law.k" + std::to_string(k), detail));
    }
    return out;
}

// Multiplication by the structuring form maps S_2k into S_(2k+rho), onto
// the elements of valuation > nu.
inline Report delta_ladder_check(BasisEngine &engine, long k_max)
{
    const auto &p = engine.profile();
    const long n = engine.level();
    Report out;
    for (long k = 1; k <= k_max; ++k) {
        const long up = k + p.delta_weight / 2;
        const long prec = engine.default_prec(up);
        const auto src = engine.s_basis(k, prec);
        const auto dst = engine.s_basis(up);
        const QSeries d = engine.evaluator().delta(n, Exponent(prec));
        std::string problem;
        for (std::size_t i = 0; i < src.size() && problem.empty(); ++i) {
            const QSeries f = (d * src.elements[i]).truncated(Exponent(prec));
            if (f.valuation() <= Exponent(p.delta_valuation)) {
                problem = "element " + std::to_string(i + 1) + " has valuation " + f.valuation().str();
                break;
            }
            const auto m = verify_membership(f, dst);
            if (!m.in_span) {
                problem = "element " + std::to_string(i + 1) + " leaves the span at q^" + m.first_mismatch->str();
            }
        }
        out.push_back(make_check(problem.empty(), "n" + std::to_string(n) + ".delta_ladder.k" + std::to_string(k),
                                 problem.empty() ? std::to_string(src.size()) + " products land in S_"
                                                       + std::to_string(2 * up)
                                                 : problem));
    }
    return out;
}

struct DecompositionComponent {
    std::string description;
    long dim = 0;
    std::vector<QSeries> elements;
};

struct Decomposition {
    long level = 1;
    long k = 2;
    long q = 0;
    long r = 2;
    std::vector<DecompositionComponent> components;
    long total_dim = 0;
    // Set when materialized: whether the union reduces to the cusp basis.
    std::optional<bool> matches_basis;
};

// S_2k = D^q S_2r (+) sum_{n<q} D^n <F^(s) E^(k-(n+1)rho/2-2)>_{s<=nu}, where
// k = q rho/2 + r with 2 <= r <= rho/2 + 1, D the structuring form, F^(s)
// the first nu cusp basis elements of weight rho + 4 and E the weight-2
// generator. Level 1 has no weight-2 generator; there the n-th piece is the
// first basis element of S_(2k - n rho).
inline Decomposition structure_decompose(BasisEngine &engine, long k, bool materialize = false)
{
    if (k < 2) {
        throw odd_weight("decomposition needs weight >= 4");
    }
    const auto &p = engine.profile();
    const long n = engine.level();
    const long half = p.delta_weight / 2;
    Decomposition dec;
    dec.level = n;
    dec.k = k;
    dec.q = (k - 2) / half;
    dec.r = k - dec.q * half;
    const long prec = engine.default_prec(k);
    const Exponent P(prec);
    const bool has_e2 = engine.entry().generators.count({2, 0}) != 0;

    DecompositionComponent head;
    head.description = "delta^" + std::to_string(dec.q) + " * S_" + std::to_string(2 * dec.r);
    head.dim = dim_S(n, 2 * dec.r);
    if (materialize) {
        const QSeries dq = pow(engine.evaluator().delta(n, P), static_cast<unsigned long>(dec.q));
        for (const auto &b : engine.s_basis(dec.r, prec).elements) {
            head.elements.push_back((dq * b).truncated(P));
        }
    }
    dec.components.push_back(std::move(head));

    for (long j = 0; j < dec.q; ++j) {
        DecompositionComponent piece;
        piece.dim = p.delta_valuation;
        const long epow = k - (j + 1) * half - 2;
        if (has_e2) {
            piece.description = "delta^" + std::to_string(j) + " * F_" + std::to_string(p.delta_weight + 4)
                                + "^(1.." + std::to_string(p.delta_valuation) + ") * E2^" + std::to_string(epow);
        } else {
            piece.description = "delta^" + std::to_string(j) + " * S_" + std::to_string(2 * k - j * p.delta_weight)
                                + "^(1.." + std::to_string(p.delta_valuation) + ")";
        }
        if (materialize) {
            const QSeries dj = pow(engine.evaluator().delta(n, P), static_cast<unsigned long>(j));
            std::vector<QSeries> firsts;
            QSeries tail = QSeries::one();
            if (has_e2) {
                firsts = engine.s_basis(half + 2, prec).elements;
                tail = pow(engine.evaluator().generator(n, 2, 0, P), static_cast<unsigned long>(epow));
            } else {
                firsts = engine.s_basis(k - j * half, prec).elements;
            }
            if (static_cast<long>(firsts.size()) < p.delta_valuation) {
                throw invariant_violation("too few seed elements for the decomposition at level " + std::to_string(n));
            }
            for (long s = 0; s < p.delta_valuation; ++s) {
                piece.elements.push_back((dj * firsts[static_cast<std::size_t>(s)] * tail).truncated(P));
            }
        }
        dec.components.push_back(std::move(piece));
    }
    for (const auto &c : dec.components) {
        dec.total_dim += c.dim;
    }
    const long expected = dim_S(n, 2 * k);
    if (dec.total_dim != expected) {
        throw invariant_violation("decomposition of S_" + std::to_string(2 * k) + " at level " + std::to_string(n)
                                  + " sums to " + std::to_string(dec.total_dim) + ", dim S = "
                                  + std::to_string(expected));
    }
    if (materialize) {
        std::vector<QSeries> all;
        for (const auto &c : dec.components) {
            all.insert(all.end(), c.elements.begin(), c.elements.end());
        }
        try {
            const auto b = echelonize(all, static_cast<std::size_t>(expected), n, 2 * k, SpaceKind::cusp, prec);
            dec.matches_basis = b.elements == engine.s_basis(k, prec).elements;
        } catch (const rank_error &) {
            dec.matches_basis = false;
        }
    }
    return dec;
}

// Classical eta products that are cusp forms on Gamma0(N), used as
// independent membership probes for the cusp bases.
inline std::vector<std::string> known_cusp_eta_products(long level)
{
    switch (level) {
        case 1:
            return {"1:24"};
        case 2:
            return {"1:8,2:8"};
        case 3:
            return {"1:6,3:6"};
        case 4:
            return {"2:12"};
        case 5:
            return {"1:4,5:4"};
        case 6:
            return {"1:2,2:2,3:2,6:2"};
        case 7:
            return {"1:6,7:6"};
        case 8:
            return {"2:4,4:4"};
        case 9:
            return {"3:8"};
        case 10:
            return {"1:4,5:4", "2:4,10:4"};
        default:
            return {};
    }
}

} // namespace cuspbase

#endif
