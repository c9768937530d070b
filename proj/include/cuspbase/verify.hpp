#ifndef CUSPBASE_VERIFY_HPP
#define CUSPBASE_VERIFY_HPP

#include <cstddef>
#include <exception>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <cuspbase/basis.hpp>
#include <cuspbase/catalog.hpp>
#include <cuspbase/dimensions.hpp>
#include <cuspbase/structure.hpp>

namespace cuspbase
{

enum class Suite { catalog, structure, all };

struct ExpansionMismatch {
    Exponent exponent;
    Rational expected;
    Rational actual;
};

// First exponent below the expansion's bound where s disagrees with it.
inline std::optional<ExpansionMismatch> compare_expansion(const QSeries &s, const Expansion &e)
{
    const long step = s.grid() == 2 ? 1 : 2;
    std::size_t t = 0;
    const long start = std::min(0L, e.terms.empty() ? 0L : e.terms.front().first.halves());
    for (long h = start - ((start % step) + step) % step; h < e.bound.halves(); h += step) {
        const Exponent x = Exponent::from_halves(h);
        while (t < e.terms.size() && e.terms[t].first < x) {
            // A listed term off the series' grid cannot match.
            return ExpansionMismatch{e.terms[t].first, e.terms[t].second, Rational(0)};
        }
        Rational want(0);
        if (t < e.terms.size() && e.terms[t].first == x) {
            want = e.terms[t].second;
            ++t;
        }
        const Rational got = s.coeff(x);
        if (got != want) {
            return ExpansionMismatch{x, want, got};
        }
    }
    return std::nullopt;
}

namespace detail
{

inline std::string level_tag(long n)
{
    return "n" + std::to_string(n);
}

inline std::string key_name(char kind, const FormKey &k, long n)
{
    return std::string(1, kind) + "[" + std::to_string(k.first) + "," + std::to_string(n) + ","
           + std::to_string(k.second) + "]";
}

// Runs fn, turning a library error into a FAIL line.
template <typename Fn>
void guarded(Report &out, const std::string &id, Fn &&fn)
{
    try {
        fn();
    } catch (const std::exception &e) {
        out.push_back(CheckResult{Status::fail, id, std::string("error: ") + e.what()});
    }
}

inline std::string mismatch_text(const ExpansionMismatch &m)
{
    return "first mismatch at q^" + m.exponent.str() + ": expected " + to_string(m.expected) + ", got "
           + to_string(m.actual);
}

} // namespace detail

inline CheckResult check_printed(Evaluator &ev, long level, const PrintedExpansion &pe)
{
    const std::string id = detail::level_tag(level) + ".printed." + pe.id;
    const QSeries s = ev.evaluate(pe.form.expr, pe.expansion.bound);
    const auto m = compare_expansion(s, pe.expansion);
    const Status bad = pe.informational ? Status::info : Status::fail;
    if (m) {
        return CheckResult{bad, id, detail::mismatch_text(*m) + (pe.note.empty() ? "" : " (" + pe.note + ")")};
    }
    return CheckResult{pe.informational ? Status::info : Status::pass, id,
                       pe.form.text + " matches " + std::to_string(pe.expansion.terms.size()) + " terms below q^"
                           + pe.expansion.bound.str()};
}

inline CheckResult check_identity(Evaluator &ev, long level, const Identity &idn)
{
    const std::string id = detail::level_tag(level) + ".identity." + idn.id;
    const auto w = ev.weight_of(idn.lhs.expr);
    const long weight = w && is_integral(*w) && sgn(*w) >= 0 ? w->get_num().get_si() : 2;
    const long depth = default_precision(level, weight + weight % 2);
    const QSeries a = ev.evaluate(idn.lhs.expr, Exponent(depth));
    const QSeries b = ev.evaluate(idn.rhs.expr, Exponent(depth));
    const auto d = first_difference(a, b, Exponent(depth));
    const Status bad = idn.informational ? Status::info : Status::fail;
    if (d) {
        return CheckResult{bad, id,
                           "first mismatch at q^" + d->str() + ": " + to_string(a.coeff(*d)) + " vs "
                               + to_string(b.coeff(*d)) + (idn.note.empty() ? "" : " (" + idn.note + ")")};
    }
    return CheckResult{idn.informational ? Status::info : Status::pass, id,
                       idn.lhs.text + " = " + idn.rhs.text + " below q^" + std::to_string(depth) + " (Sturm bound "
                           + std::to_string(sturm_bound(level, weight + weight % 2)) + ")"};
}

// Checks the tabulated data of one level: dimension table, displayed
// expansions, identities, unitarity of generators and seeds, ladder starts and
// membership of known cusp forms.
inline Report catalog_checks(const Catalog &catalog, long level)
{
    const auto &lc = catalog.level(level);
    const std::string tag = detail::level_tag(level);
    Evaluator ev(catalog);
    Report out;

    detail::guarded(out, tag + ".dims.table", [&] {
        std::string bad;
        for (const auto &[w, d] : lc.dimension_table) {
            const long got = dim_S(level, w);
            if (got != d && bad.empty()) {
                bad = "weight " + std::to_string(w) + ": tabulated " + std::to_string(d) + ", formula "
                      + std::to_string(got);
            }
        }
        out.push_back(make_check(bad.empty(), tag + ".dims.table",
                                 bad.empty() ? std::to_string(lc.dimension_table.size()) + " tabulated values match"
                                             : bad));
    });
    detail::guarded(out, tag + ".dims.cusp_gap", [&] {
        const long c = gamma0_invariants(level).cusps;
        std::optional<long> bad;
        for (long w = 4; w <= 60 && !bad; w += 2) {
            if (dim_M(level, w) - dim_S(level, w) != c) {
                bad = w;
            }
        }
        out.push_back(make_check(!bad, tag + ".dims.cusp_gap",
                                 bad ? "dim M - dim S differs from the cusp count at weight " + std::to_string(*bad)
                                     : "dim M - dim S = " + std::to_string(c) + " for weights 4..60"));
    });

    for (const auto &pe : lc.printed) {
        detail::guarded(out, tag + ".printed." + pe.id, [&] { out.push_back(check_printed(ev, level, pe)); });
    }
    for (const auto &idn : lc.identities) {
        detail::guarded(out, tag + ".identity." + idn.id, [&] { out.push_back(check_identity(ev, level, idn)); });
    }

    auto unitary = [&](char kind, const FormKey &key, bool seed) {
        const std::string id = tag + (seed ? ".seed." : ".generator.") + detail::key_name(kind, key, level);
        detail::guarded(out, id, [&] {
            const Exponent P(default_precision(level, key.first));
            const QSeries s = seed ? ev.seed(level, key.first, key.second, P) : ev.generator(level, key.first, key.second, P);
            const bool ok = !s.is_zero() && s.valuation() == Exponent(key.second) && s.leading_coefficient() == 1;
            std::string detail = s.is_zero() ? "vanishes below q^" + P.str()
                                             : "valuation " + s.valuation().str() + ", leading coefficient "
                                                   + to_string(s.leading_coefficient());
            const auto &table = seed ? lc.seeds : lc.generators;
            if (table.at(key).reconstructed) {
                detail += " (reconstructed)";
            }
            out.push_back(make_check(ok, id, detail));
        });
    };
    for (const auto &[key, f] : lc.generators) {
        unitary('E', key, false);
    }
    for (const auto &[key, f] : lc.seeds) {
        unitary('F', key, true);
    }

    for (const auto &rule : lc.ladder) {
        const std::string id = tag + ".ladder.start.k0_" + std::to_string(rule.k0) + "_mod" + std::to_string(rule.modulus)
                               + "_" + std::to_string(rule.residue);
        detail::guarded(out, id, [&] {
            const long d = dim_S(level, 2 * rule.k0);
            out.push_back(make_check(d == static_cast<long>(rule.seeds.size()), id,
                                     "dim S_" + std::to_string(2 * rule.k0) + " = " + std::to_string(d) + ", "
                                         + std::to_string(rule.seeds.size()) + " seeds"));
        });
    }

    // Membership of classical eta cusp forms in the ladder-built cusp spaces
    // ties the seeds to independent data.
    detail::guarded(out, tag + ".cusp_eta", [&] {
        BasisEngine engine(level, catalog);
        for (const auto &text : known_cusp_eta_products(level)) {
            const auto q = parse_eta_quotient(text);
            const auto prof = eta_profile(q);
            const long w = prof.weight.get_num().get_si();
            const std::string id = tag + ".cusp_eta." + q.str();
            detail::guarded(out, id, [&] {
                const auto b = engine.s_basis(w / 2);
                const auto m = verify_membership(eta_expand(q, b.prec), b);
                out.push_back(make_check(m.in_span, id,
                                         m.in_span ? "lies in the weight-" + std::to_string(w) + " cusp basis"
                                                   : "leaves the weight-" + std::to_string(w)
                                                         + " cusp basis at q^" + m.first_mismatch->str()));
            });
        }
    });
    return out;
}

namespace detail
{

inline CheckResult summarize(const std::string &id, const Report &parts, const std::string &ok_detail)
{
    for (const auto &p : parts) {
        if (p.status == Status::fail) {
            return CheckResult{Status::fail, id, p.id + ": " + p.detail};
        }
    }
    return CheckResult{Status::pass, id, ok_detail};
}

} // namespace detail

// Structural statements checked over ranges of weights.
inline Report structure_checks(const Catalog &catalog, long level, long k_dims = 50, long k_bases = 12)
{
    const std::string tag = detail::level_tag(level);
    Report out;
    detail::guarded(out, tag + ".structure.dim_step", [&] {
        const auto p = level_profile(level, catalog);
        out.push_back(detail::summarize(tag + ".structure.dim_step", dimension_step_checks(level, k_dims, catalog),
                                        "dim S_(2k+" + std::to_string(p.delta_weight) + ") - dim S_2k = "
                                            + std::to_string(p.delta_valuation) + " for 2 <= k <= "
                                            + std::to_string(k_dims) + ", " + std::to_string(p.delta_valuation - 1)
                                            + " for k = 1"));
    });
    const auto &lc = catalog.level(level);
    detail::guarded(out, tag + ".structure.ladder_dim", [&] {
        const auto rep = ladder_dimension_check(level, lc.k0);
        std::string diffs;
        for (std::size_t i = 0; i < 6; ++i) {
            diffs += (i ? "," : "") + std::to_string(rep.differences[i]);
        }
        out.push_back(detail::summarize(tag + ".structure.ladder_dim", rep.checks,
                                        "k0 = " + std::to_string(lc.k0) + ", differences " + diffs
                                            + ", 6-periodic"));
        if (level == 7) {
            // The level-7 text also quotes the offset k0 = 2 with value 2.
            const auto alt = ladder_dimension_check(level, 2);
            std::string d2;
            bool constant = true;
            for (std::size_t i = 1; i <= 6; ++i) {
                d2 += (i > 1 ? "," : "") + std::to_string(alt.differences[i]);
                constant = constant && alt.differences[i] == 2;
            }
            out.push_back(CheckResult{Status::info, tag + ".structure.ladder_dim.offset2",
                                      "dim S_2k - dim M_2(k-2) for k = 4..9: " + d2
                                          + (constant ? " (constant 2 as quoted)" : " (not the quoted constant 2)")});
        }
    });

    BasisEngine engine(level, catalog);
    const auto &p = engine.profile();
    detail::guarded(out, tag + ".structure.valuation_law", [&] {
        const long last = p.delta_weight / 2 + 8;
        out.push_back(detail::summarize(tag + ".structure.valuation_law", valuation_law_check(engine, last),
                                        "element s has valuation s for s <= " + std::to_string(p.delta_valuation)
                                            + ", k = " + std::to_string(p.delta_weight / 2 + 2) + ".."
                                            + std::to_string(last)));
    });
    detail::guarded(out, tag + ".structure.delta_ladder", [&] {
        out.push_back(detail::summarize(tag + ".structure.delta_ladder", delta_ladder_check(engine, 10),
                                        "delta * S_2k lies in S_(2k+" + std::to_string(p.delta_weight)
                                            + ") for k <= 10"));
    });
    detail::guarded(out, tag + ".structure.decomposition", [&] {
        Report parts;
        for (long k = 2; k <= k_bases; ++k) {
            const std::string id = tag + ".decomposition.k" + std::to_string(k);
            detail::guarded(parts, id, [&] {
                const auto dec = structure_decompose(engine, k, true);
                parts.push_back(make_check(dec.matches_basis.value_or(false), id,
                                           "components do not reduce to the cusp basis"));
            });
        }
        out.push_back(detail::summarize(tag + ".structure.decomposition", parts,
                                        "dimensions add up and components reduce to the cusp basis for k = 2.."
                                            + std::to_string(k_bases)));
    });
    detail::guarded(out, tag + ".structure.bases", [&] {
        Report parts;
        for (long k = 1; k <= k_bases; ++k) {
            for (auto kind : {SpaceKind::full, SpaceKind::cusp}) {
                const std::string id = tag + ".bases." + to_string(kind) + ".k" + std::to_string(k);
                detail::guarded(parts, id, [&] {
                    const auto b = kind == SpaceKind::full ? engine.m_basis(k) : engine.s_basis(k);
                    const auto dim = static_cast<std::size_t>(kind == SpaceKind::full ? dim_M(level, 2 * k)
                                                                                      : dim_S(level, 2 * k));
                    validate_basis(b, dim);
                    const auto again = echelonize(b.elements, dim, level, 2 * k, kind, b.prec.floor());
                    parts.push_back(make_check(again.elements == b.elements, id, "re-echelonization changed the basis"));
                });
            }
        }
        out.push_back(detail::summarize(tag + ".structure.bases", parts,
                                        "full and cusp bases valid and idempotent for k = 1.."
                                            + std::to_string(k_bases)));
    });
    return out;
}

inline Report level_checks(const Catalog &catalog, long level, Suite suite)
{
    Report out;
    if (suite != Suite::structure) {
        auto r = catalog_checks(catalog, level);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (suite != Suite::catalog) {
        auto r = structure_checks(catalog, level);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

// Runs the suite over the given levels, concurrently, returning lines in
// level order.
inline Report run_verify(const Catalog &catalog, const std::vector<long> &levels, Suite suite, bool parallel = true)
{
    std::vector<Report> parts(levels.size());
    if (parallel) {
        std::vector<std::future<Report>> jobs;
        for (long n : levels) {
            jobs.push_back(std::async(std::launch::async, [&catalog, n, suite] { return level_checks(catalog, n, suite); }));
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            parts[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < levels.size(); ++i) {
            parts[i] = level_checks(catalog, levels[i], suite);
        }
    }
    Report out;
    for (auto &p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

} // namespace cuspbase

#endif
