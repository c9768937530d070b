#ifndef CUSPBASE_CATALOG_HPP
#define CUSPBASE_CATALOG_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <cuspbase/dimensions.hpp>
#include <cuspbase/eisenstein.hpp>
#include <cuspbase/errors.hpp>
#include <cuspbase/eta.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/expr.hpp>
#include <cuspbase/qseries.hpp>
#include <cuspbase/rational.hpp>
#include <cuspbase/weierstrass.hpp>

namespace cuspbase
{

// A catalog formula together with its source text.
struct NamedForm {
    std::string text;
    FormExpr expr;
    // True when the entry is not a closed form restated from the literature
    // but was completed here (only its unitarity, valuation and cuspidality
    // are meaningful).
    bool reconstructed = false;

    NamedForm() = default;
    explicit NamedForm(std::string t, bool recon = false)
        : text(std::move(t)), expr(parse_expr(text)), reconstructed(recon)
    {
    }
};

// One branch of the seed ladder: for k >= k0 with k = residue (mod modulus),
// S_2k is spanned by seeds[0..n-2] * E^(k-k0) and seeds[n-1] * B_(2(k-k0)),
// where the seeds are the weight-2k0 entries with the listed indices.
struct LadderRule {
    long modulus = 1;
    long residue = 0;
    long k0 = 1;
    std::vector<int> seeds;

    bool applies(long k) const
    {
        return ((k - residue) % modulus + modulus) % modulus == 0;
    }
};

// A literal expansion q^e1 c1 + ... + O(q^bound): coefficients of exponents
// below bound that are not listed are zero.
struct Expansion {
    std::vector<std::pair<Exponent, Rational>> terms;
    Exponent bound = Exponent(0);
};

struct PrintedExpansion {
    std::string id;
    NamedForm form;
    Expansion expansion;
    // Informational entries are reported but never fail verification.
    bool informational = false;
    std::string note;
};

struct Identity {
    std::string id;
    NamedForm lhs;
    NamedForm rhs;
    bool informational = false;
    std::string note;
};

using FormKey = std::pair<int, int>; // (weight, index)

struct LevelCatalog {
    long level = 1;
    NamedForm delta;
    std::map<FormKey, NamedForm> generators;
    std::map<FormKey, NamedForm> seeds;
    long k0 = 1;
    std::vector<LadderRule> ladder;
    // (weight, dim S) as tabulated for this level.
    std::vector<std::pair<long, long>> dimension_table;
    std::vector<PrintedExpansion> printed;
    std::vector<Identity> identities;

    const LadderRule &rule_for(long k) const
    {
        for (const auto &r : ladder) {
            if (r.applies(k)) {
                return r;
            }
        }
        throw unsupported_level("no ladder rule covers k = " + std::to_string(k) + " at level "
                                + std::to_string(level));
    }
    std::size_t seed_count() const
    {
        std::size_t n = 0;
        for (const auto &r : ladder) {
            n = std::max(n, r.seeds.size());
        }
        return n;
    }
};

class Catalog
{
public:
    void add(LevelCatalog lc)
    {
        const long n = lc.level;
        m_levels.insert_or_assign(n, std::move(lc));
    }
    bool has_level(long n) const
    {
        return m_levels.count(n) != 0;
    }
    const LevelCatalog &level(long n) const
    {
        auto it = m_levels.find(n);
        if (it == m_levels.end()) {
            throw unsupported_level("level " + std::to_string(n) + " is not in the catalog");
        }
        return it->second;
    }
    LevelCatalog &level(long n)
    {
        auto it = m_levels.find(n);
        if (it == m_levels.end()) {
            throw unsupported_level("level " + std::to_string(n) + " is not in the catalog");
        }
        return it->second;
    }
    std::vector<long> levels() const
    {
        std::vector<long> out;
        for (const auto &[n, _] : m_levels) {
            out.push_back(n);
        }
        return out;
    }

private:
    std::map<long, LevelCatalog> m_levels;
};

// "1 - 8q + 24*q^2 + (13/2)q^3 + O(q^5)".
inline Expansion parse_expansion(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    Expansion out;
    std::size_t pos = 0;
    auto fail = [&](const std::string &msg) -> void {
        throw syntax_error(msg + " at position " + std::to_string(pos), pos);
    };
    auto digits = [&]() {
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
        if (start == pos) {
            fail("expected digits");
        }
        return s.substr(start, pos - start);
    };
    auto exponent = [&]() -> Exponent {
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            if (pos < s.size() && s[pos] == '{') {
                ++pos;
                const auto d = digits();
                if (pos >= s.size() || s[pos] != '}') {
                    fail("expected '}'");
                }
                ++pos;
                return Exponent(std::stol(d));
            }
            return Exponent(std::stol(digits()));
        }
        return Exponent(1);
    };
    bool have_bound = false;
    Exponent last = Exponent::from_halves(-1);
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!out.terms.empty()) {
            fail("expected '+' or '-'");
        }
        if (s.compare(pos, 3, "O(q") == 0) {
            pos += 3;
            out.bound = exponent();
            if (pos >= s.size() || s[pos] != ')') {
                fail("expected ')'");
            }
            ++pos;
            have_bound = true;
            if (pos != s.size()) {
                fail("trailing text after O()");
            }
            break;
        }
        Rational c(1);
        bool explicit_coeff = false;
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            const std::size_t start = pos;
            while (pos < s.size() && s[pos] != ')') {
                ++pos;
            }
            c = parse_rational(s.substr(start, pos - start));
            ++pos;
            explicit_coeff = true;
        } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            Integer num(digits(), 10);
            Integer den(1);
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                den = Integer(digits(), 10);
            }
            c = make_rational(num, den);
            explicit_coeff = true;
        }
        if (explicit_coeff && pos < s.size() && s[pos] == '*') {
            ++pos;
        }
        Exponent e(0);
        if (pos < s.size() && s[pos] == 'q') {
            ++pos;
            e = exponent();
        } else if (!explicit_coeff) {
            fail("expected a term");
        }
        if (e <= last) {
            fail("exponents must increase");
        }
        last = e;
        out.terms.emplace_back(e, c * sign);
    }
    if (!have_bound) {
        throw syntax_error("expansion needs an O(q^n) bound", s.size());
    }
    if (!out.terms.empty() && out.terms.back().first >= out.bound) {
        throw syntax_error("O() bound must exceed every listed exponent", s.size());
    }
    return out;
}

inline std::string render_expansion(const Expansion &e)
{
    std::string out;
    for (const auto &[x, c] : e.terms) {
        const bool neg = sgn(c) < 0;
        if (!out.empty()) {
            out += neg ? " - " : " + ";
        } else if (neg) {
            out += "-";
        }
        const Rational a = abs(c);
        const bool unit = a == 1;
        if (x == Exponent(0)) {
            out += to_string(a);
            continue;
        }
        if (!unit) {
            out += is_integral(a) ? to_string(a) : "(" + to_string(a) + ")";
        }
        out += "q";
        if (x != Exponent(1)) {
            out += "^" + x.str();
        }
    }
    out += (out.empty() ? "" : " + ") + std::string("O(q^") + e.bound.str() + ")";
    return out;
}

// Weight and level bookkeeping plus exact evaluation of catalog formulas.
//
// Evaluation of catalog references is memoized; an Evaluator may be shared
// between threads.
class Evaluator
{
public:
    explicit Evaluator(const Catalog &catalog) : m_catalog(&catalog) {}

    const Catalog &catalog() const
    {
        return *m_catalog;
    }

    // Weight of the form described by e; nullopt when e contains an explicit
    // series whose weight is not recorded.
    std::optional<Rational> weight_of(const FormExpr &e, int depth = 0) const
    {
        guard(depth);
        return std::visit([&](const auto &v) { return weight_impl(v, depth); }, e.node().value);
    }

    // Smallest N such that every atom in e lives on Gamma0(N).
    long level_of(const FormExpr &e, int depth = 0) const
    {
        guard(depth);
        return std::visit([&](const auto &v) { return level_impl(v, depth); }, e.node().value);
    }

    QSeries evaluate(const FormExpr &e, Exponent prec)
    {
        if (prec.is_infinite()) {
            throw std::invalid_argument("evaluation needs a finite precision");
        }
        return eval(e, prec, 0).truncated(prec);
    }
    QSeries evaluate(std::string_view text, Exponent prec)
    {
        return evaluate(parse_expr(text), prec);
    }

    QSeries generator(long level, int weight, int index, Exponent prec)
    {
        return reference('E', level, weight, index, prec, 0);
    }
    QSeries seed(long level, int weight, int index, Exponent prec)
    {
        return reference('F', level, weight, index, prec, 0);
    }
    QSeries delta(long level, Exponent prec)
    {
        return reference('D', level, 0, 0, prec, 0);
    }

private:
    static void guard(int depth)
    {
        if (depth > 64) {
            throw invalid_atom("catalog references nest too deeply (cyclic definition?)");
        }
    }

    const NamedForm &lookup(char kind, long level, int weight, int index) const
    {
        const auto &lc = m_catalog->level(level);
        if (kind == 'D') {
            return lc.delta;
        }
        const auto &table = kind == 'E' ? lc.generators : lc.seeds;
        auto it = table.find({weight, index});
        if (it == table.end()) {
            throw unknown_atom(std::string(1, kind) + "[" + std::to_string(weight) + "," + std::to_string(level) + ","
                               + std::to_string(index) + "] is not in the catalog");
        }
        return it->second;
    }

    // Weight rules.
    std::optional<Rational> weight_impl(const expr::Constant &, int) const
    {
        return Rational(0);
    }
    std::optional<Rational> weight_impl(const expr::Eta &v, int) const
    {
        return eta_profile(v.quotient).weight;
    }
    std::optional<Rational> weight_impl(const expr::Eisenstein &v, int) const
    {
        return Rational(v.atom.weight);
    }
    std::optional<Rational> weight_impl(const expr::Weight2Combo &, int) const
    {
        return Rational(2);
    }
    std::optional<Rational> weight_impl(const expr::Wpa &, int) const
    {
        return Rational(2);
    }
    std::optional<Rational> weight_impl(const expr::Generator &v, int) const
    {
        return Rational(v.weight);
    }
    std::optional<Rational> weight_impl(const expr::Seed &v, int) const
    {
        return Rational(v.weight);
    }
    std::optional<Rational> weight_impl(const expr::Delta &v, int depth) const
    {
        return weight_of(lookup('D', v.level, 0, 0).expr, depth + 1);
    }
    std::optional<Rational> weight_impl(const expr::Series &, int) const
    {
        return std::nullopt;
    }
    std::optional<Rational> weight_impl(const expr::Binary &v, int depth) const
    {
        const auto a = weight_of(v.lhs, depth + 1);
        const auto b = weight_of(v.rhs, depth + 1);
        if (v.op == '*') {
            if (!a || !b) {
                return std::nullopt;
            }
            return *a + *b;
        }
        if (a && b && *a != *b) {
            throw weight_mismatch("cannot add forms of weight " + to_string(*a) + " and " + to_string(*b) + " in '"
                                  + render(v.lhs) + std::string(1, v.op) + render(v.rhs) + "'");
        }
        return a ? a : b;
    }
    std::optional<Rational> weight_impl(const expr::Negate &v, int depth) const
    {
        return weight_of(v.operand, depth + 1);
    }
    std::optional<Rational> weight_impl(const expr::Power &v, int depth) const
    {
        const auto w = weight_of(v.base, depth + 1);
        if (!w) {
            return std::nullopt;
        }
        return *w * Rational(static_cast<long>(v.exponent));
    }
    std::optional<Rational> weight_impl(const expr::Rescale &v, int depth) const
    {
        return weight_of(v.operand, depth + 1);
    }
    std::optional<Rational> weight_impl(const expr::Group &v, int depth) const
    {
        return weight_of(v.inner, depth + 1);
    }

    // Level rules.
    long level_impl(const expr::Constant &, int) const
    {
        return 1;
    }
    long level_impl(const expr::Series &, int) const
    {
        return 1;
    }
    long level_impl(const expr::Eta &v, int) const
    {
        long n = 1;
        for (const auto &[m, r] : v.quotient.terms()) {
            n = std::lcm(n, m);
        }
        return n;
    }
    long level_impl(const expr::Eisenstein &v, int) const
    {
        return v.atom.scale;
    }
    long level_impl(const expr::Weight2Combo &v, int) const
    {
        return v.level;
    }
    long level_impl(const expr::Wpa &v, int) const
    {
        return v.point.level;
    }
    long level_impl(const expr::Generator &v, int) const
    {
        return v.level;
    }
    long level_impl(const expr::Seed &v, int) const
    {
        return v.level;
    }
    long level_impl(const expr::Delta &v, int) const
    {
        return v.level;
    }
    long level_impl(const expr::Binary &v, int depth) const
    {
        return std::lcm(level_of(v.lhs, depth + 1), level_of(v.rhs, depth + 1));
    }
    long level_impl(const expr::Negate &v, int depth) const
    {
        return level_of(v.operand, depth + 1);
    }
    long level_impl(const expr::Power &v, int depth) const
    {
        return level_of(v.base, depth + 1);
    }
    long level_impl(const expr::Rescale &v, int depth) const
    {
        return v.factor * level_of(v.operand, depth + 1);
    }
    long level_impl(const expr::Group &v, int depth) const
    {
        return level_of(v.inner, depth + 1);
    }

    QSeries reference(char kind, long level, int weight, int index, Exponent prec, int depth)
    {
        guard(depth);
        const std::string key = std::string(1, kind) + ":" + std::to_string(level) + ":" + std::to_string(weight)
                                + ":" + std::to_string(index);
        {
            std::lock_guard lock(m_mutex);
            auto it = m_memo.find(key);
            if (it != m_memo.end() && it->second.prec() >= prec) {
                return it->second.truncated(prec);
            }
        }
        const NamedForm &f = lookup(kind, level, weight, index);
        if (kind != 'D') {
            const auto w = weight_of(f.expr, depth + 1);
            if (w && *w != weight) {
                throw weight_mismatch(std::string(1, kind) + "[" + std::to_string(weight) + ","
                                      + std::to_string(level) + "," + std::to_string(index) + "] = " + f.text
                                      + " has weight " + to_string(*w));
            }
        }
        const long lv = level_of(f.expr, depth + 1);
        if (level % lv != 0) {
            throw level_mismatch("'" + f.text + "' involves level " + std::to_string(lv)
                                 + ", which does not divide " + std::to_string(level));
        }
        QSeries s = eval(f.expr, prec, depth + 1).truncated(prec);
        std::lock_guard lock(m_mutex);
        auto &slot = m_memo[key];
        if (slot.is_zero() || slot.prec() < s.prec()) {
            slot = s;
        }
        return s;
    }

    QSeries eval(const FormExpr &e, Exponent prec, int depth)
    {
        guard(depth);
        return std::visit([&](const auto &v) { return eval_impl(v, prec, depth); }, e.node().value);
    }

    QSeries eval_impl(const expr::Constant &v, Exponent, int)
    {
        return QSeries::constant(v.value);
    }
    QSeries eval_impl(const expr::Eta &v, Exponent prec, int)
    {
        return eta_expand(v.quotient, prec);
    }
    QSeries eval_impl(const expr::Eisenstein &v, Exponent prec, int)
    {
        return eisenstein_expand(v.atom, prec);
    }
    QSeries eval_impl(const expr::Weight2Combo &v, Exponent prec, int)
    {
        return weight2_level_combo(v.level, prec);
    }
    QSeries eval_impl(const expr::Wpa &v, Exponent prec, int)
    {
        return wpa_expand(v.point, prec);
    }
    QSeries eval_impl(const expr::Generator &v, Exponent prec, int depth)
    {
        return reference('E', v.level, v.weight, v.index, prec, depth + 1);
    }
    QSeries eval_impl(const expr::Seed &v, Exponent prec, int depth)
    {
        return reference('F', v.level, v.weight, v.index, prec, depth + 1);
    }
    QSeries eval_impl(const expr::Delta &v, Exponent prec, int depth)
    {
        return reference('D', v.level, 0, 0, prec, depth + 1);
    }
    QSeries eval_impl(const expr::Series &v, Exponent, int)
    {
        const Exponent end = v.lead + Exponent(static_cast<long>(v.coeffs.size()));
        if (v.lead.is_integer()) {
            return QSeries::from_coefficients(v.coeffs, v.lead, end);
        }
        std::vector<Rational> spread(2 * v.coeffs.size());
        for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
            spread[2 * i] = v.coeffs[i];
        }
        return QSeries::from_coefficients(std::move(spread), v.lead, end, 2);
    }
    QSeries eval_impl(const expr::Binary &v, Exponent prec, int depth)
    {
        auto a = eval(v.lhs, prec, depth + 1);
        auto b = eval(v.rhs, prec, depth + 1);
        switch (v.op) {
            case '+':
                return a + b;
            case '-':
                return a - b;
            default:
                return (a * b).truncated(prec);
        }
    }
    QSeries eval_impl(const expr::Negate &v, Exponent prec, int depth)
    {
        return -eval(v.operand, prec, depth + 1);
    }
    QSeries eval_impl(const expr::Power &v, Exponent prec, int depth)
    {
        QSeries base = eval(v.base, prec, depth + 1);
        QSeries acc = QSeries::one();
        for (unsigned long i = 0; i < v.exponent; ++i) {
            acc = (acc * base).truncated(prec);
        }
        return acc;
    }
    QSeries eval_impl(const expr::Rescale &v, Exponent prec, int depth)
    {
        const long d = v.factor;
        const Exponent inner = Exponent((prec.ceil() + d - 1) / d);
        return substitute_q_power(eval(v.operand, inner, depth + 1), d).truncated(prec);
    }
    QSeries eval_impl(const expr::Group &v, Exponent prec, int depth)
    {
        return eval(v.inner, prec, depth + 1);
    }

    const Catalog *m_catalog;
    std::mutex m_mutex;
    std::map<std::string, QSeries> m_memo;
};

// Checks that every entry's weight and level agree with its declaration.
inline void validate_catalog(const Catalog &catalog)
{
    Evaluator ev(catalog);
    auto check = [&](const NamedForm &f, std::optional<int> weight, long level, const std::string &what) {
        const auto w = ev.weight_of(f.expr);
        if (weight && w && *w != *weight) {
            throw weight_mismatch(what + " = " + f.text + " has weight " + to_string(*w) + ", declared "
                                  + std::to_string(*weight));
        }
        const long lv = ev.level_of(f.expr);
        if (level % lv != 0) {
            throw level_mismatch(what + " = " + f.text + " involves level " + std::to_string(lv));
        }
    };
    for (long n : catalog.levels()) {
        const auto &lc = catalog.level(n);
        check(lc.delta, std::nullopt, n, "delta(" + std::to_string(n) + ")");
        for (const auto &[key, f] : lc.generators) {
            check(f, key.first, n, "E[" + std::to_string(key.first) + "," + std::to_string(n) + ","
                                       + std::to_string(key.second) + "]");
        }
        for (const auto &[key, f] : lc.seeds) {
            check(f, key.first, n, "F[" + std::to_string(key.first) + "," + std::to_string(n) + ","
                                       + std::to_string(key.second) + "]");
        }
        for (const auto &r : lc.ladder) {
            if (r.modulus < 1 || r.k0 < 1 || r.seeds.empty()) {
                throw invalid_atom("malformed ladder rule at level " + std::to_string(n));
            }
            for (int s : r.seeds) {
                if (!lc.seeds.count({static_cast<int>(2 * r.k0), s})) {
                    throw unknown_atom("ladder seed F[" + std::to_string(2 * r.k0) + "," + std::to_string(n) + ","
                                       + std::to_string(s) + "] is missing");
                }
            }
        }
    }
}

// Arithmetic profile of a level: Gamma0(N) invariants together with the
// weight and valuation of its structuring form and the ladder start.
struct LevelProfile {
    Gamma0Invariants invariants;
    long delta_weight = 0;
    long delta_valuation = 0;
    long k0 = 1;
    std::vector<LadderRule> ladder;
};

namespace detail
{

inline LevelCatalog level_entry(long level, std::string delta, long k0)
{
    LevelCatalog lc;
    lc.level = level;
    lc.delta = NamedForm(std::move(delta));
    lc.k0 = k0;
    return lc;
}

inline void gen(LevelCatalog &lc, int weight, int index, std::string text, bool reconstructed = false)
{
    lc.generators.insert_or_assign(FormKey{weight, index}, NamedForm(std::move(text), reconstructed));
}

inline void seed(LevelCatalog &lc, int weight, int index, std::string text, bool reconstructed = false)
{
    lc.seeds.insert_or_assign(FormKey{weight, index}, NamedForm(std::move(text), reconstructed));
}

inline void printed(LevelCatalog &lc, std::string id, std::string text, std::string_view expansion,
                    bool informational = false, std::string note = {})
{
    lc.printed.push_back(
        PrintedExpansion{std::move(id), NamedForm(std::move(text)), parse_expansion(expansion), informational,
                         std::move(note)});
}

inline void identity(LevelCatalog &lc, std::string id, std::string lhs, std::string rhs, bool informational = false,
                     std::string note = {})
{
    lc.identities.push_back(
        Identity{std::move(id), NamedForm(std::move(lhs)), NamedForm(std::move(rhs)), informational, std::move(note)});
}

inline void table(LevelCatalog &lc, long first_weight, std::initializer_list<long> dims)
{
    long w = first_weight;
    for (long d : dims) {
        lc.dimension_table.emplace_back(w, d);
        w += 2;
    }
}

inline void single_rule(LevelCatalog &lc)
{
    lc.ladder.push_back(LadderRule{1, 0, lc.k0, {1}});
}

inline Catalog make_builtin_catalog()
{
    Catalog cat;
    {
        auto lc = level_entry(1, "eta(1:24)", 6);
        gen(lc, 4, 0, "E4(1)");
        gen(lc, 6, 0, "E6(1)");
        seed(lc, 12, 1, "delta(1)");
        single_rule(lc);
        table(lc, 2, {0, 0, 0, 0, 0, 1, 0, 1, 1});
        identity(lc, "f12_1.eta", "F[12,1,1]", "eta(1:24)");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(2, "eta(2:16,1:-8)", 4);
        gen(lc, 2, 0, "-3*wpa(2,0,2)");
        gen(lc, 4, 0, "E[2,2,0]^2");
        gen(lc, 4, 1, "delta(2)");
        seed(lc, 8, 1, "(E[4,2,0]-64*E[4,2,1])*E[4,2,1]");
        single_rule(lc);
        table(lc, 2, {0, 0, 0, 1, 1, 2, 2, 3, 3});
        printed(lc, "delta", "delta(2)", "q+8q^2+28q^3+64q^4+O(q^5)");
        printed(lc, "e4_0", "E[4,2,0]", "1+48q+624q^2+1344q^3+5232q^4+O(q^5)");
        printed(lc, "e4_1", "E[4,2,1]", "q+8q^2+28q^3+64q^4+O(q^5)");
        printed(lc, "f8_1", "F[8,2,1]", "q-8q^2+12q^3+64q^4-210q^5-96q^6+1016q^7+O(q^8)");
        identity(lc, "e2_0.combo", "E[2,2,0]", "Ew2(2)");
        identity(lc, "e4_0.wpa", "E[4,2,0]", "9*wpa(2,0,2)^2");
        identity(lc, "f8_1.eta", "F[8,2,1]", "eta(1:8,2:8)");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(3, "eta(3:18,1:-6)", 3);
        gen(lc, 2, 0, "Ew2(3)");
        seed(lc, 6, 1, "eta(1:6,3:6)", true);
        single_rule(lc);
        table(lc, 2, {0, 0, 1, 1, 2, 3, 3, 4, 5, 5});
        printed(lc, "delta", "delta(3)", "q^2+6q^3+27q^4+80q^5+207q^6+432q^7+863q^8+1512q^9+O(q^10)");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(4, "eta(4:8,2:-4)", 3);
        gen(lc, 2, 0, "eta(1:8,2:-4)");
        gen(lc, 2, 1, "delta(4)");
        seed(lc, 6, 1, "E[2,4,0]*E[2,4,1]*(E[2,4,0]+16*E[2,4,1])");
        single_rule(lc);
        table(lc, 2, {0, 0, 1, 2, 3, 4, 5, 6});
        printed(lc, "e2_0", "E[2,4,0]", "1-8q+24q^2-32q^3+24q^4-48q^5+96q^6-64q^7+24q^8+O(q^9)");
        printed(lc, "e2_0.level4_display", "E[2,4,0]", "1-8q+24q^2+32q^3+24q^4-48q^5+96q^6+O(q^7)", true,
                "displayed with +32q^3; the same quotient is displayed with -32q^3 at level 8");
        printed(lc, "e2_1", "E[2,4,1]", "q+4q^3+6q^5+8q^7+13q^9+O(q^11)");
        printed(lc, "f6_1", "F[6,4,1]", "q-12q^3+54q^5-88q^7-99q^9+O(q^11)");
        identity(lc, "f6_1.eta", "F[6,4,1]", "eta(2:12)");
        identity(lc, "f6_1.monomials", "F[6,4,1]", "E[2,4,0]^2*E[2,4,1]+16*E[2,4,0]*E[2,4,1]^2");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(5, "eta(5:10,1:-2)", 2);
        gen(lc, 2, 0, "-3/2*(wpa(2,0,5)+wpa(4,0,5))");
        gen(lc, 4, 0, "E[2,5,0]^2");
        gen(lc, 4, 1,
            "1/48*(9*(wpa(2,0,5)+wpa(4,0,5))^2-12*(wpa(0,1,5)^2+wpa(5,0,5)^2+wpa(0,1,5)*wpa(5,0,5)))");
        gen(lc, 4, 2, "delta(5)");
        seed(lc, 4, 1, "E[4,5,1]-10*E[4,5,2]");
        single_rule(lc);
        table(lc, 2, {0, 1, 1, 3, 3, 5, 5, 7});
        printed(lc, "f4_1", "F[4,5,1]", "q-4q^2+O(q^3)");
        identity(lc, "delta.wpa", "delta(5)", "1/16*(wpa(2,0,5)-wpa(4,0,5))^2");
        identity(lc, "e4_0.wpa", "E[4,5,0]", "9/4*(wpa(2,0,5)+wpa(4,0,5))^2");
        identity(lc, "f4_1.eta", "F[4,5,1]", "eta(1:4,5:4)");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(6, "eta(1:2,6:12,2:-4,3:-6)", 2);
        gen(lc, 2, 0, "-3*wpa(2,0,2)");
        gen(lc, 2, 1, "-1/4*(wpa(2,0,2)-wpa(2,0,3))");
        gen(lc, 2, 2, "delta(6)");
        seed(lc, 4, 1, "eta(1:2,2:2,3:2,6:2)", true);
        single_rule(lc);
        table(lc, 2, {0, 1, 3, 5, 7, 9, 11, 13});
        printed(lc, "e2_0", "E[2,6,0]", "1+24q+24q^2+96q^3+24q^4+144q^5+96q^6+192*q^7+O(q^8)");
        printed(lc, "e2_1", "E[2,6,1]", "q-q^2+7q^3-5q^4+6q^5+5q^6+8q^7+O(q^8)");
        printed(lc, "e2_2", "E[2,6,2]", "q^2-2q^3+3q^4-q^6+7q^8-8q^9+6q^10+O(q^11)");
        identity(lc, "e2_0.combo", "E[2,6,0]", "Ew2(2)");
        identity(lc, "delta.wpa", "delta(6)",
                 "1/48*(3*wpa(2,0,2)-8*wpa(2,0,3)+wpa(2,0,6)+wpa(4,0,6)+wpa(6,0,6)+wpa(8,0,6)+wpa(10,0,6))");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(7, "eta(1:-2,7:14)", 3);
        const std::string sum = "(wpa(2,0,7)+wpa(4,0,7)+wpa(6,0,7))";
        gen(lc, 2, 0, "-" + sum);
        gen(lc, 4, 0, "E[2,7,0]^2");
        gen(lc, 4, 1, "1/8*(" + sum + "^2-3*(wpa(0,1,7)^2+wpa(7,0,7)^2+wpa(0,1,7)*wpa(7,0,7)))");
        gen(lc, 4, 2, "1/32*(3*(wpa(2,0,7)^2+wpa(4,0,7)^2+wpa(6,0,7)^2)-" + sum + "^2)");
        gen(lc, 6, 0, "E[2,7,0]^3");
        gen(lc, 6, 1, "E[2,7,0]*E[4,7,1]");
        gen(lc, 6, 2, "E[2,7,0]*E[4,7,2]");
        gen(lc, 6, 3,
            "-1/128*(2*wpa(2,0,7)-wpa(4,0,7)-wpa(6,0,7))*(2*wpa(4,0,7)-wpa(2,0,7)-wpa(6,0,7))"
            "*(2*wpa(6,0,7)-wpa(2,0,7)-wpa(4,0,7))");
        gen(lc, 6, 4, "delta(7)");
        seed(lc, 4, 1, "E[4,7,1]-6*E[4,7,2]");
        seed(lc, 6, 1, "F[4,7,1]*E[2,7,0]");
        seed(lc, 6, 2, "E[6,7,2]-49*E[6,7,4]");
        seed(lc, 6, 3, "E[6,7,3]-13/2*E[6,7,4]");
        lc.ladder.push_back(LadderRule{3, 0, 3, {1, 2, 3}});
        lc.ladder.push_back(LadderRule{3, 1, 2, {1}});
        lc.ladder.push_back(LadderRule{3, 2, 2, {1}});
        table(lc, 2, {0, 1, 3, 3, 5, 7, 7, 9});
        printed(lc, "e6_0", "E[6,7,0]",
                "1+12q+84q^2+400q^3+1476q^4+4392q^5+11184q^6+24780q^7+49668q^8+O(q^9)");
        printed(lc, "e6_1", "E[6,7,1]", "q+9*q^2+48*q^3+181*q^4+546*q^5+1392*q^6+3067*q^7+6081*q^8+O(q^9)");
        printed(lc, "e6_2", "E[6,7,2]", "q^2+7q^3+32q^4+95q^5+241q^6+503q^7+1017q^8+O(q^9)");
        identity(lc, "f6_1.combination", "F[6,7,1]", "E[6,7,1]-6*E[6,7,2]");
        identity(lc, "e4_0.wpa", "E[4,7,0]", sum + "^2");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(8, "eta(8:8,4:-4)", 2);
        gen(lc, 2, 0, "eta(1:8,2:-4)");
        gen(lc, 2, 1, "delta(4)");
        gen(lc, 2, 2, "delta(8)");
        gen(lc, 4, 0, "E[2,8,0]^2");
        gen(lc, 4, 1, "E[2,8,0]*E[2,8,1]");
        gen(lc, 4, 2, "E[2,8,0]*E[2,8,2]");
        gen(lc, 4, 3, "E[2,8,1]*E[2,8,2]");
        gen(lc, 4, 4, "E[2,8,2]*E[2,8,2]");
        seed(lc, 4, 1, "E[4,8,1]+8*E[4,8,2]+32*E[4,8,3]-128*E[4,8,4]");
        single_rule(lc);
        table(lc, 2, {0, 1, 3, 5, 7, 9, 11, 13});
        printed(lc, "e2_0", "E[2,8,0]", "1-8q+24q^2-32q^3+24q^4-48q^5+96q^6-64q^7+24q^8+O(q^9)");
        printed(lc, "e2_1", "E[2,8,1]", "q+4q^3+6q^5+8q^7+13q^9+O(q^10)");
        printed(lc, "e2_2", "E[2,8,2]", "q^2+4q^6+O(q^10)");
        identity(lc, "delta.rescaled", "delta(8)", "delta(4)@2");
        identity(lc, "f4_1.eta", "F[4,8,1]", "eta(2:4,4:4)");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(9, "eta(9:6,3:-2)", 2);
        gen(lc, 2, 0, "Ew2(3)@3");
        gen(lc, 2, 1, "-1/4*(wpa(2,0,3)-wpa(6,0,9))");
        gen(lc, 2, 2, "delta(9)");
        gen(lc, 4, 0, "E[2,9,0]^2");
        gen(lc, 4, 1, "E[2,9,0]*E[2,9,1]");
        gen(lc, 4, 2, "E[2,9,0]*E[2,9,2]");
        gen(lc, 4, 3, "E[2,9,1]*E[2,9,2]");
        gen(lc, 4, 4, "E[2,9,2]*E[2,9,2]");
        seed(lc, 4, 1, "E[4,9,1]-3*E[4,9,2]-27*E[4,9,4]");
        single_rule(lc);
        table(lc, 2, {0, 1, 3, 5, 7, 9, 11, 13});
        printed(lc, "e2_0", "E[2,9,0]", "1+12q^3+36q^6+12q^9+84q^12+72q^15+O(q^18)");
        printed(lc, "e2_1", "E[2,9,1]", "q+3q^2+7q^4+6q^5+8q^7+15q^8+O(q^10)");
        printed(lc, "e2_2", "E[2,9,2]", "q^2+2q^5+5q^8+4q^11+8q^14+O(q^17)");
        identity(lc, "e2_0.wpa", "E[2,9,0]", "-3*wpa(6,0,9)");
        identity(lc, "e2_0.wpa_displayed_sign", "E[2,9,0]", "3*wpa(6,0,9)", true,
                 "sign as displayed; contradicts the constant term 1");
        identity(lc, "f4_1.eta", "F[4,9,1]", "eta(3:8)");
        identity(lc, "f4_1.level8_reading", "F[4,9,1]", "E[4,9,1]-3*E[4,8,2]-27*E[4,8,4]", true,
                 "literal E[4,8,*] subscripts in the level-9 seed formula");
        cat.add(std::move(lc));
    }
    {
        auto lc = level_entry(10, "eta(1:2,2:-4,5:-10,10:20)", 2);
        gen(lc, 2, 0, "-3*wpa(10,0,10)");
        gen(lc, 2, 1, "-1/8*(wpa(2,0,2)-wpa(10,0,10))");
        gen(lc, 2, 2, "1/16*(wpa(2,0,2)-2*wpa(2,0,5)-2*wpa(4,0,5)+3*wpa(10,0,10))");
        gen(lc, 4, 0, "E[2,10,0]^2");
        gen(lc, 4, 1, "E[2,10,0]*E[2,10,1]");
        gen(lc, 4, 2, "E[2,10,0]*E[2,10,2]");
        gen(lc, 4, 3, "E[2,10,1]*E[2,10,2]");
        gen(lc, 4, 4, "E[2,10,2]^2");
        gen(lc, 4, 5, "delta(2)@5");
        gen(lc, 4, 6, "delta(10)");
        seed(lc, 4, 1, "E[4,10,1]-E[4,10,2]-4*E[4,10,3]+2*E[4,10,4]+16*E[4,10,5]-40*E[4,10,6]");
        seed(lc, 4, 2, "E[4,10,2]-7*E[4,10,4]+4*E[4,10,5]+40*E[4,10,6]");
        seed(lc, 4, 3, "E[4,10,3]-3*E[4,10,4]-8*E[4,10,5]+20*E[4,10,6]");
        lc.ladder.push_back(LadderRule{1, 0, 2, {1, 2, 3}});
        table(lc, 2, {0, 3, 5, 9, 11, 15, 17, 21});
        identity(lc, "e4_5.eta", "E[4,10,5]", "eta(10:16,5:-8)");
        cat.add(std::move(lc));
    }
    validate_catalog(cat);
    return cat;
}

} // namespace detail

// The per-level data for N = 1..10.
inline const Catalog &builtin_catalog()
{
    static const Catalog cat = detail::make_builtin_catalog();
    return cat;
}

inline LevelProfile level_profile(long level, const Catalog &catalog = builtin_catalog())
{
    const auto &lc = catalog.level(level);
    LevelProfile p;
    p.invariants = gamma0_invariants(level);
    p.k0 = lc.k0;
    p.ladder = lc.ladder;
    Evaluator ev(catalog);
    Rational weight;
    Rational valuation;
    if (const auto *eta = std::get_if<expr::Eta>(&lc.delta.expr.node().value)) {
        const auto prof = eta_profile(eta->quotient);
        weight = prof.weight;
        valuation = prof.valuation;
    } else {
        const auto w = ev.weight_of(lc.delta.expr);
        if (!w) {
            throw invariant_violation("structuring form of level " + std::to_string(level) + " has no weight");
        }
        weight = *w;
        const Exponent v = ev.evaluate(lc.delta.expr, Exponent(64)).valuation();
        valuation = make_rational(v.halves(), 2);
    }
    if (!is_integral(weight) || !is_integral(valuation)) {
        throw invariant_violation("structuring form of level " + std::to_string(level)
                                  + " has non-integral weight or valuation");
    }
    p.delta_weight = weight.get_num().get_si();
    p.delta_valuation = valuation.get_num().get_si();
    return p;
}

inline const std::vector<Identity> &catalog_identities(long level, const Catalog &catalog = builtin_catalog())
{
    return catalog.level(level).identities;
}

} // namespace cuspbase

#endif
