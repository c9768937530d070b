#ifndef CUSPBASE_BASIS_HPP
#define CUSPBASE_BASIS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <cuspbase/catalog.hpp>
#include <cuspbase/dimensions.hpp>
#include <cuspbase/errors.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/qseries.hpp>
#include <cuspbase/rational.hpp>

namespace cuspbase
{

enum class SpaceKind { full, cusp };

inline std::string to_string(SpaceKind k)
{
    return k == SpaceKind::full ? "full" : "cusp";
}

// Ordered unitary basis with strictly increasing valuations, fully reduced.
struct EchelonBasis {
    long level = 1;
    long weight = 0;
    SpaceKind kind = SpaceKind::full;
    Exponent prec = Exponent(0);
    std::vector<QSeries> elements;

    std::size_t size() const
    {
        return elements.size();
    }
    bool empty() const
    {
        return elements.empty();
    }
    std::vector<long> valuations() const
    {
        std::vector<long> out;
        for (const auto &e : elements) {
            out.push_back(e.valuation().floor());
        }
        return out;
    }
};

// Smallest precision accepted for bases of weight w: one past the Sturm bound.
inline long minimum_precision(long level, long weight)
{
    return sturm_bound(level, weight) + 1;
}

// Row reduction over Q that keeps its rows normalized (pivot 1) and mutually
// reduced after every insertion. Rows are dense coefficient vectors for
// exponents 0 .. length-1.
class Echelonizer
{
public:
    explicit Echelonizer(long length) : m_len(length) {}

    long length() const
    {
        return m_len;
    }
    std::size_t rank() const
    {
        return m_rows.size();
    }

    // Returns false when s is dependent on the rows inserted so far.
    bool insert(const QSeries &s)
    {
        if (s.prec() < Exponent(m_len)) {
            throw insufficient_precision("row known to q^" + s.prec().str() + ", need q^" + std::to_string(m_len));
        }
        auto row = s.coefficients(Exponent(0), Exponent(m_len), 1);
        for (std::size_t i = 0; i < m_rows.size(); ++i) {
            const auto p = static_cast<std::size_t>(m_pivots[i]);
            if (sgn(row[p]) != 0) {
                const Rational c = row[p];
                axpy(row, -c, m_rows[i]);
            }
        }
        long pivot = -1;
        for (long j = 0; j < m_len; ++j) {
            if (sgn(row[static_cast<std::size_t>(j)]) != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot < 0) {
            return false;
        }
        const Rational inv = 1 / row[static_cast<std::size_t>(pivot)];
        for (auto &c : row) {
            if (sgn(c) != 0) {
                c *= inv;
            }
        }
        for (auto &r : m_rows) {
            const Rational c = r[static_cast<std::size_t>(pivot)];
            if (sgn(c) != 0) {
                axpy(r, -c, row);
            }
        }
        const auto at = std::upper_bound(m_pivots.begin(), m_pivots.end(), pivot) - m_pivots.begin();
        m_pivots.insert(m_pivots.begin() + at, pivot);
        m_rows.insert(m_rows.begin() + at, std::move(row));
        return true;
    }

    std::vector<QSeries> rows() const
    {
        std::vector<QSeries> out;
        for (const auto &r : m_rows) {
            out.push_back(QSeries::from_coefficients(r, 0, Exponent(m_len)));
        }
        return out;
    }

private:
    static void axpy(std::vector<Rational> &y, const Rational &a, const std::vector<Rational> &x)
    {
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (sgn(x[j]) != 0) {
                y[j] += a * x[j];
            }
        }
    }

    long m_len;
    std::vector<std::vector<Rational>> m_rows;
    std::vector<long> m_pivots;
};

// Canonical reduced echelon basis of the span of forms, checked against the
// expected dimension.
inline EchelonBasis echelonize(const std::vector<QSeries> &forms, std::size_t expected_dim, long level, long weight,
                               SpaceKind kind, long prec)
{
    const long need = minimum_precision(level, weight);
    if (prec < need) {
        throw insufficient_precision("precision " + std::to_string(prec) + " is below " + std::to_string(need)
                                     + " for level " + std::to_string(level) + " weight " + std::to_string(weight));
    }
    Echelonizer ech(prec);
    for (const auto &f : forms) {
        ech.insert(f);
    }
    if (ech.rank() < expected_dim) {
        throw rank_deficient("spanning set has rank " + std::to_string(ech.rank()) + ", expected "
                                 + std::to_string(expected_dim),
                             ech.rank(), expected_dim);
    }
    if (ech.rank() > expected_dim) {
        throw rank_excess("spanning set has rank " + std::to_string(ech.rank()) + ", expected "
                              + std::to_string(expected_dim),
                          ech.rank(), expected_dim);
    }
    return EchelonBasis{level, weight, kind, Exponent(prec), ech.rows()};
}

// Throws invariant_violation unless b has the defining shape of a basis.
inline void validate_basis(const EchelonBasis &b, std::optional<std::size_t> expected_dim = std::nullopt)
{
    auto fail = [&](const std::string &what) {
        throw invariant_violation("basis level " + std::to_string(b.level) + " weight " + std::to_string(b.weight)
                                  + " " + to_string(b.kind) + ": " + what);
    };
    if (expected_dim && b.size() != *expected_dim) {
        fail("has " + std::to_string(b.size()) + " elements, expected " + std::to_string(*expected_dim));
    }
    std::vector<Exponent> pivots;
    for (const auto &e : b.elements) {
        if (e.is_zero()) {
            fail("contains a zero element");
        }
        if (e.grid() != 1) {
            fail("contains a half-integral series");
        }
        if (e.leading_coefficient() != 1) {
            fail("element is not unitary");
        }
        if (!pivots.empty() && e.valuation() <= pivots.back()) {
            fail("valuations are not strictly increasing");
        }
        if (b.kind == SpaceKind::cusp && e.valuation() < Exponent(1)) {
            fail("cusp basis element has a constant term");
        }
        pivots.push_back(e.valuation());
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i != j && pivots[j] < b.elements[i].prec() && sgn(b.elements[i].coeff(pivots[j])) != 0) {
                fail("element " + std::to_string(i) + " is not reduced at q^" + pivots[j].str());
            }
        }
    }
}

struct Membership {
    bool in_span = false;
    std::vector<Rational> coordinates;
    // Lowest exponent left unexplained by the basis when not in the span.
    std::optional<Exponent> first_mismatch;
};

// Expresses f in terms of b by pivot substitution.
inline Membership verify_membership(const QSeries &f, const EchelonBasis &b)
{
    const long need = sturm_bound(b.level, b.weight);
    if (f.prec() < Exponent(need)) {
        throw insufficient_precision("series known to q^" + f.prec().str() + ", membership needs q^"
                                     + std::to_string(need));
    }
    const Exponent wp = std::min(f.prec(), b.prec);
    QSeries residual = f.truncated(wp);
    Membership m;
    for (const auto &e : b.elements) {
        const Exponent pivot = e.valuation();
        const Rational c = pivot < wp ? residual.coeff(pivot) : Rational(0);
        if (sgn(c) != 0) {
            residual = residual - c * e.truncated(wp);
        }
        m.coordinates.push_back(c);
    }
    if (residual.is_zero()) {
        m.in_span = true;
    } else {
        m.first_mismatch = residual.valuation();
        m.coordinates.clear();
    }
    return m;
}

// Builds full and cuspidal bases of one level from its catalog entry; results
// are cached. Safe to share between threads.
class BasisEngine
{
public:
    explicit BasisEngine(long level, const Catalog &catalog = builtin_catalog())
        : m_level(level), m_catalog(&catalog), m_entry(&catalog.level(level)), m_profile(level_profile(level, catalog)),
          m_eval(catalog)
    {
    }

    long level() const
    {
        return m_level;
    }
    const LevelProfile &profile() const
    {
        return m_profile;
    }
    const LevelCatalog &entry() const
    {
        return *m_entry;
    }
    Evaluator &evaluator()
    {
        return m_eval;
    }

    long default_prec(long k) const
    {
        return default_precision(m_level, 2 * k);
    }

    // Basis of M_2k(Gamma0(N)).
    EchelonBasis m_basis(long k, std::optional<long> prec = std::nullopt)
    {
        require_k(k, 0);
        const long p = prec.value_or(default_prec(k));
        require_prec(k, p);
        if (auto hit = cached(SpaceKind::full, k, p)) {
            return *hit;
        }
        auto b = build_m_basis(k, p);
        return store(SpaceKind::full, k, p, std::move(b));
    }

    // Basis of S_2k(Gamma0(N)) through the seed ladder.
    EchelonBasis s_basis(long k, std::optional<long> prec = std::nullopt)
    {
        require_k(k, 1);
        const long p = prec.value_or(default_prec(k));
        require_prec(k, p);
        if (auto hit = cached(SpaceKind::cusp, k, p)) {
            return *hit;
        }
        const auto dim = static_cast<std::size_t>(dim_S(m_level, 2 * k));
        EchelonBasis b;
        if (dim == 0) {
            b = EchelonBasis{m_level, 2 * k, SpaceKind::cusp, Exponent(p), {}};
        } else {
            b = echelonize(ladder_family(k, p), dim, m_level, 2 * k, SpaceKind::cusp, p);
        }
        return store(SpaceKind::cusp, k, p, std::move(b));
    }

    // The unreduced ladder products spanning S_2k, in ladder order.
    std::vector<QSeries> ladder_family(long k, long prec)
    {
        require_k(k, 1);
        const Exponent P(prec);
        const auto &rule = m_entry->rule_for(k);
        std::vector<QSeries> out;
        if (k < rule.k0) {
            for (const auto &[key, f] : m_entry->seeds) {
                if (key.first == 2 * k) {
                    out.push_back(m_eval.seed(m_level, key.first, key.second, P));
                }
            }
            return out;
        }
        const long n = static_cast<long>(rule.seeds.size());
        const long lhs = dim_S(m_level, 2 * k);
        const long rhs = dim_M(m_level, 2 * (k - rule.k0)) + n - 1;
        if (lhs != rhs) {
            throw ladder_condition_failed("level " + std::to_string(m_level) + " weight " + std::to_string(2 * k)
                                          + ": dim S = " + std::to_string(lhs) + " but dim M_"
                                          + std::to_string(2 * (k - rule.k0)) + " + " + std::to_string(n - 1)
                                          + " = " + std::to_string(rhs));
        }
        const int w0 = static_cast<int>(2 * rule.k0);
        if (n > 1) {
            const QSeries e = pow(m_eval.generator(m_level, 2, 0, P), static_cast<unsigned long>(k - rule.k0));
            for (long i = 0; i + 1 < n; ++i) {
                out.push_back((m_eval.seed(m_level, w0, rule.seeds[static_cast<std::size_t>(i)], P) * e).truncated(P));
            }
        }
        const QSeries last = m_eval.seed(m_level, w0, rule.seeds.back(), P);
        for (const auto &b : m_basis(k - rule.k0, prec).elements) {
            out.push_back((last * b).truncated(P));
        }
        return out;
    }

    // Low-weight building blocks of M_w(Gamma0(N)) for w in {2, 4, 6}.
    std::vector<QSeries> atoms(long weight, long prec)
    {
        const Exponent P(prec);
        std::vector<QSeries> out;
        for (const auto &[key, f] : m_entry->generators) {
            if (key.first == weight) {
                out.push_back(m_eval.generator(m_level, key.first, key.second, P));
            }
        }
        for (const auto &[key, f] : m_entry->seeds) {
            if (key.first == weight) {
                out.push_back(m_eval.seed(m_level, key.first, key.second, P));
            }
        }
        std::vector<long> divisors;
        for (long d = 1; d <= m_level; ++d) {
            if (m_level % d == 0) {
                divisors.push_back(d);
            }
        }
        for (long d : divisors) {
            if (weight == 4 || weight == 6) {
                out.push_back(eisenstein_expand(EisensteinAtom{static_cast<int>(weight), d}, P));
            }
        }
        for (long d : divisors) {
            for (long e : divisors) {
                if (m_level % (d * e) != 0) {
                    continue;
                }
                if (weight == 2 && d >= 2) {
                    out.push_back(substitute_q_power(weight2_level_combo(d, Exponent((prec + e - 1) / e)), e)
                                      .truncated(P));
                }
                if (m_catalog->has_level(d) && level_profile(d, *m_catalog).delta_weight == weight) {
                    out.push_back(substitute_q_power(m_eval.delta(d, Exponent((prec + e - 1) / e)), e).truncated(P));
                }
            }
        }
        return out;
    }

private:
    static void require_k(long k, long min)
    {
        if (k < min) {
            throw odd_weight("weight " + std::to_string(2 * k) + " is out of range");
        }
    }

    void require_prec(long k, long p) const
    {
        const long need = minimum_precision(m_level, 2 * k);
        if (p < need) {
            throw insufficient_precision("precision " + std::to_string(p) + " is below " + std::to_string(need)
                                         + " for level " + std::to_string(m_level) + " weight "
                                         + std::to_string(2 * k));
        }
    }

    std::optional<EchelonBasis> cached(SpaceKind kind, long k, long p)
    {
        std::lock_guard lock(m_mutex);
        auto it = m_cache.find({kind == SpaceKind::full ? 0 : 1, k, p});
        if (it == m_cache.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    EchelonBasis store(SpaceKind kind, long k, long p, EchelonBasis b)
    {
        std::lock_guard lock(m_mutex);
        return m_cache.emplace(std::make_tuple(kind == SpaceKind::full ? 0 : 1, k, p), std::move(b)).first->second;
    }

    // E_w for level 1: E4^(w/4) or E4^((w-6)/4) E6, with E_0 = 1.
    QSeries level1_eisenstein(long w, Exponent P)
    {
        const QSeries e4 = m_eval.generator(1, 4, 0, P);
        if (w % 4 == 0) {
            return pow(e4, static_cast<unsigned long>(w / 4)).truncated(P);
        }
        return (pow(e4, static_cast<unsigned long>((w - 6) / 4)) * m_eval.generator(1, 6, 0, P)).truncated(P);
    }

    EchelonBasis build_m_basis(long k, long p)
    {
        const Exponent P(p);
        const auto dim = static_cast<std::size_t>(dim_M(m_level, 2 * k));
        if (k == 0) {
            return echelonize({QSeries::one().truncated(P)}, 1, m_level, 0, SpaceKind::full, p);
        }
        std::vector<QSeries> family;
        if (m_level == 1) {
            const QSeries d = m_eval.delta(1, P);
            for (long n = 0; 12 * n <= 2 * k; ++n) {
                const long w = 2 * k - 12 * n;
                if (w == 2) {
                    continue;
                }
                family.push_back((pow(d, static_cast<unsigned long>(n)) * level1_eisenstein(w, P)).truncated(P));
            }
            return echelonize(family, dim, m_level, 2 * k, SpaceKind::full, p);
        }
        if (m_level == 4) {
            const QSeries e0 = m_eval.generator(4, 2, 0, P);
            const QSeries e1 = m_eval.generator(4, 2, 1, P);
            for (long a = k; a >= 0; --a) {
                family.push_back((pow(e0, static_cast<unsigned long>(a)) * pow(e1, static_cast<unsigned long>(k - a)))
                                     .truncated(P));
            }
            return echelonize(family, dim, m_level, 2 * k, SpaceKind::full, p);
        }
        // Products of lower-weight bases with atoms of weight 2, 4 and 6,
        // offered until the expected dimension is reached.
        Echelonizer ech(p);
        auto offer = [&](const QSeries &s) {
            if (ech.rank() < dim) {
                ech.insert(s.truncated(P));
            }
        };
        if (2 * k <= 6) {
            for (const auto &a : atoms(2 * k, p)) {
                offer(a);
            }
        }
        for (long j = 1; j <= 3 && ech.rank() < dim; ++j) {
            if (k - j < 1) {
                break;
            }
            const auto lower = m_basis(k - j, p);
            const auto as = atoms(2 * j, p);
            for (const auto &b : lower.elements) {
                for (const auto &a : as) {
                    if (ech.rank() >= dim) {
                        break;
                    }
                    offer((a * b).truncated(P));
                }
            }
        }
        if (ech.rank() < dim) {
            throw incomplete_span("level " + std::to_string(m_level) + " weight " + std::to_string(2 * k)
                                      + ": atom products reach rank " + std::to_string(ech.rank()) + " of "
                                      + std::to_string(dim),
                                  ech.rank(), dim);
        }
        EchelonBasis b{m_level, 2 * k, SpaceKind::full, P, ech.rows()};
        return b;
    }

    long m_level;
    const Catalog *m_catalog;
    const LevelCatalog *m_entry;
    LevelProfile m_profile;
    Evaluator m_eval;
    std::mutex m_mutex;
    std::map<std::tuple<int, long, long>, EchelonBasis> m_cache;
};

inline EchelonBasis m_basis(long level, long k, std::optional<long> prec = std::nullopt)
{
    BasisEngine engine(level);
    return engine.m_basis(k, prec);
}

inline EchelonBasis s_basis(long level, long k, std::optional<long> prec = std::nullopt)
{
    BasisEngine engine(level);
    return engine.s_basis(k, prec);
}

} // namespace cuspbase

#endif
