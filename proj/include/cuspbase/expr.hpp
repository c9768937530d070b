#ifndef CUSPBASE_EXPR_HPP
#define CUSPBASE_EXPR_HPP

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <cuspbase/eisenstein.hpp>
#include <cuspbase/errors.hpp>
#include <cuspbase/eta.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/rational.hpp>
#include <cuspbase/weierstrass.hpp>

namespace cuspbase
{

struct ExprNode;

// Immutable expression tree describing a q-expansion: the catalog stores
// every closed form this way. Copies share structure.
class FormExpr
{
public:
    FormExpr() = default;
    explicit FormExpr(std::shared_ptr<const ExprNode> node) : m_node(std::move(node)) {}

    const ExprNode &node() const
    {
        return *m_node;
    }
    bool empty() const
    {
        return !m_node;
    }

private:
    std::shared_ptr<const ExprNode> m_node;
};

namespace expr
{

struct Constant {
    Rational value;
};
struct Eta {
    EtaQuotient quotient;
};
struct Eisenstein {
    EisensteinAtom atom;
};
struct Weight2Combo {
    long level;
};
struct Wpa {
    TorsionPoint point;
};
// E[w,N,s]: s-th generator of weight w in the level-N catalog.
struct Generator {
    int weight;
    long level;
    int index;
};
// F[w,N,s]: s-th cusp-form seed of weight w in the level-N catalog.
struct Seed {
    int weight;
    long level;
    int index;
};
struct Delta {
    long level;
};
// qser(v: c0,c1,...): an explicit expansion known up to q^(v + count).
struct Series {
    Exponent lead;
    std::vector<Rational> coeffs;
};
struct Binary {
    char op; // '+', '-' or '*'
    FormExpr lhs;
    FormExpr rhs;
};
struct Negate {
    FormExpr operand;
};
struct Power {
    FormExpr base;
    unsigned long exponent;
};
// f@d, i.e. f(d tau).
struct Rescale {
    FormExpr operand;
    long factor;
};
// Explicit parentheses from the source text.
struct Group {
    FormExpr inner;
};

} // namespace expr

struct ExprNode {
    std::variant<expr::Constant, expr::Eta, expr::Eisenstein, expr::Weight2Combo, expr::Wpa, expr::Generator,
                 expr::Seed, expr::Delta, expr::Series, expr::Binary, expr::Negate, expr::Power, expr::Rescale,
                 expr::Group>
        value;
};

template <typename T>
FormExpr make_expr(T v)
{
    return FormExpr(std::make_shared<const ExprNode>(ExprNode{std::move(v)}));
}

inline FormExpr operator+(FormExpr a, FormExpr b)
{
    return make_expr(expr::Binary{'+', std::move(a), std::move(b)});
}
inline FormExpr operator-(FormExpr a, FormExpr b)
{
    return make_expr(expr::Binary{'-', std::move(a), std::move(b)});
}
inline FormExpr operator*(FormExpr a, FormExpr b)
{
    return make_expr(expr::Binary{'*', std::move(a), std::move(b)});
}
inline FormExpr operator-(FormExpr a)
{
    return make_expr(expr::Negate{std::move(a)});
}
inline FormExpr power(FormExpr base, unsigned long n)
{
    return make_expr(expr::Power{std::move(base), n});
}
inline FormExpr rescale(FormExpr e, long d)
{
    return make_expr(expr::Rescale{std::move(e), d});
}
inline FormExpr constant(Rational r)
{
    return make_expr(expr::Constant{std::move(r)});
}

namespace detail
{

class ExprParser
{
public:
    explicit ExprParser(std::string_view text) : m_text(text) {}

    FormExpr parse()
    {
        auto e = parse_sum();
        skip_ws();
        if (m_pos != m_text.size()) {
            fail("unexpected '" + std::string(1, m_text[m_pos]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw syntax_error(msg + " at position " + std::to_string(m_pos), m_pos);
    }

    void skip_ws()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }
    bool peek(char c)
    {
        skip_ws();
        return m_pos < m_text.size() && m_text[m_pos] == c;
    }
    bool accept(char c)
    {
        if (peek(c)) {
            ++m_pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    Integer integer(bool allow_sign)
    {
        skip_ws();
        const std::size_t start = m_pos;
        if (allow_sign && m_pos < m_text.size() && m_text[m_pos] == '-') {
            ++m_pos;
        }
        const std::size_t digits = m_pos;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        if (m_pos == digits) {
            m_pos = start;
            fail("expected an integer");
        }
        return Integer(std::string(m_text.substr(start, m_pos - start)), 10);
    }
    long small_int(bool allow_sign)
    {
        const std::size_t start = m_pos;
        const auto v = integer(allow_sign);
        if (!v.fits_slong_p() || abs(v) > 1000000000L) {
            m_pos = start;
            fail("integer out of range");
        }
        return v.get_si();
    }
    Rational rational(bool allow_sign)
    {
        const auto num = integer(allow_sign);
        if (peek('/')) {
            ++m_pos;
            const std::size_t at = m_pos;
            const auto den = integer(false);
            if (den == 0) {
                m_pos = at;
                fail("zero denominator");
            }
            return make_rational(num, den);
        }
        return Rational(num);
    }

    FormExpr parse_sum()
    {
        auto lhs = parse_term();
        while (true) {
            if (accept('+')) {
                lhs = std::move(lhs) + parse_term();
            } else if (accept('-')) {
                lhs = std::move(lhs) - parse_term();
            } else {
                return lhs;
            }
        }
    }
    FormExpr parse_term()
    {
        auto lhs = parse_unary();
        while (accept('*')) {
            lhs = std::move(lhs) * parse_unary();
        }
        return lhs;
    }
    FormExpr parse_unary()
    {
        if (accept('-')) {
            return -parse_unary();
        }
        return parse_power();
    }
    FormExpr parse_power()
    {
        auto base = parse_postfix();
        if (accept('^')) {
            const long n = small_int(false);
            return power(std::move(base), static_cast<unsigned long>(n));
        }
        return base;
    }
    FormExpr parse_postfix()
    {
        auto e = parse_primary();
        while (accept('@')) {
            const std::size_t at = m_pos;
            const long d = small_int(false);
            if (d < 1) {
                m_pos = at;
                fail("rescaling factor must be positive");
            }
            e = rescale(std::move(e), d);
        }
        return e;
    }

    FormExpr parse_primary()
    {
        skip_ws();
        if (m_pos >= m_text.size()) {
            fail("unexpected end of expression");
        }
        const char c = m_text[m_pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return constant(rational(false));
        }
        if (c == '(') {
            ++m_pos;
            auto inner = parse_sum();
            expect(')');
            return make_expr(expr::Group{std::move(inner)});
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            fail("unexpected '" + std::string(1, c) + "'");
        }
        const std::size_t start = m_pos;
        while (m_pos < m_text.size()
               && (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
            ++m_pos;
        }
        const std::string name(m_text.substr(start, m_pos - start));
        try {
            return atom(name, start);
        } catch (const invalid_atom &e) {
            throw syntax_error(std::string(e.what()) + " at position " + std::to_string(start), start);
        }
    }

    FormExpr atom(const std::string &name, std::size_t start)
    {
        if (name == "E" || name == "F") {
            expect('[');
            const long w = small_int(false);
            expect(',');
            const long n = small_int(false);
            expect(',');
            const long s = small_int(false);
            expect(']');
            if (name == "E") {
                return make_expr(expr::Generator{static_cast<int>(w), n, static_cast<int>(s)});
            }
            return make_expr(expr::Seed{static_cast<int>(w), n, static_cast<int>(s)});
        }
        if (name == "eta") {
            expect('(');
            std::vector<EtaQuotient::term> terms;
            if (!peek(')')) {
                do {
                    const long m = small_int(false);
                    expect(':');
                    const long r = small_int(true);
                    terms.emplace_back(m, r);
                } while (accept(','));
            }
            expect(')');
            return make_expr(expr::Eta{EtaQuotient(std::move(terms))});
        }
        if (name == "E4" || name == "E6") {
            expect('(');
            const long d = small_int(false);
            expect(')');
            if (d < 1) {
                throw invalid_atom("Eisenstein scale must be positive");
            }
            return make_expr(expr::Eisenstein{EisensteinAtom{name == "E4" ? 4 : 6, d}});
        }
        if (name == "Ew2") {
            expect('(');
            const long n = small_int(false);
            expect(')');
            if (n < 2) {
                throw invalid_atom("Ew2 needs level >= 2");
            }
            return make_expr(expr::Weight2Combo{n});
        }
        if (name == "wpa") {
            expect('(');
            const long a = small_int(false);
            expect(',');
            const long b = small_int(false);
            expect(',');
            const long n = small_int(false);
            expect(')');
            TorsionPoint p{a, static_cast<int>(b), n};
            p.validate();
            return make_expr(expr::Wpa{p});
        }
        if (name == "delta") {
            expect('(');
            const long n = small_int(false);
            expect(')');
            return make_expr(expr::Delta{n});
        }
        if (name == "qser") {
            expect('(');
            const std::size_t at = m_pos;
            const Rational lead = rational(true);
            if (lead.get_den() > 2) {
                m_pos = at;
                fail("qser valuation must be a multiple of 1/2");
            }
            expect(':');
            std::vector<Rational> coeffs;
            do {
                coeffs.push_back(rational(true));
            } while (accept(','));
            expect(')');
            const Rational twice = 2 * lead;
            return make_expr(expr::Series{Exponent::from_halves(twice.get_num().get_si()), std::move(coeffs)});
        }
        throw unknown_atom("unknown atom '" + name + "' at position " + std::to_string(start), start);
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
};

// Binding strength used when rendering: higher binds tighter.
inline int precedence(const FormExpr &e)
{
    return std::visit(
        [](const auto &v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, expr::Binary>) {
                return v.op == '*' ? 2 : 1;
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                return 3;
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                return 4;
            } else if constexpr (std::is_same_v<T, expr::Rescale>) {
                return 5;
            } else if constexpr (std::is_same_v<T, expr::Constant>) {
                return sgn(v.value) < 0 ? 3 : 6;
            } else {
                return 6;
            }
        },
        e.node().value);
}

inline void render_to(std::string &out, const FormExpr &e, int min_prec);

inline void render_child(std::string &out, const FormExpr &e, int min_prec)
{
    if (precedence(e) < min_prec) {
        out += '(';
        render_to(out, e, 0);
        out += ')';
    } else {
        render_to(out, e, min_prec);
    }
}

inline void render_to(std::string &out, const FormExpr &e, int)
{
    std::visit(
        [&out](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                out += to_string(v.value);
            } else if constexpr (std::is_same_v<T, expr::Eta>) {
                out += "eta(" + v.quotient.str() + ")";
            } else if constexpr (std::is_same_v<T, expr::Eisenstein>) {
                out += "E" + std::to_string(v.atom.weight) + "(" + std::to_string(v.atom.scale) + ")";
            } else if constexpr (std::is_same_v<T, expr::Weight2Combo>) {
                out += "Ew2(" + std::to_string(v.level) + ")";
            } else if constexpr (std::is_same_v<T, expr::Wpa>) {
                out += "wpa(" + std::to_string(v.point.a) + "," + std::to_string(v.point.b) + ","
                       + std::to_string(v.point.level) + ")";
            } else if constexpr (std::is_same_v<T, expr::Generator>) {
                out += "E[" + std::to_string(v.weight) + "," + std::to_string(v.level) + "," + std::to_string(v.index)
                       + "]";
            } else if constexpr (std::is_same_v<T, expr::Seed>) {
                out += "F[" + std::to_string(v.weight) + "," + std::to_string(v.level) + "," + std::to_string(v.index)
                       + "]";
            } else if constexpr (std::is_same_v<T, expr::Delta>) {
                out += "delta(" + std::to_string(v.level) + ")";
            } else if constexpr (std::is_same_v<T, expr::Series>) {
                const Rational lead = make_rational(v.lead.halves(), 2);
                out += "qser(" + to_string(lead) + ":";
                for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
                    out += (i ? "," : "") + to_string(v.coeffs[i]);
                }
                out += ")";
            } else if constexpr (std::is_same_v<T, expr::Binary>) {
                const int p = v.op == '*' ? 2 : 1;
                render_child(out, v.lhs, p);
                out += v.op;
                render_child(out, v.rhs, p + 1);
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                out += '-';
                render_child(out, v.operand, 3);
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                render_child(out, v.base, 5);
                out += '^' + std::to_string(v.exponent);
            } else if constexpr (std::is_same_v<T, expr::Rescale>) {
                render_child(out, v.operand, 5);
                out += '@' + std::to_string(v.factor);
            } else if constexpr (std::is_same_v<T, expr::Group>) {
                out += '(';
                render_to(out, v.inner, 0);
                out += ')';
            }
        },
        e.node().value);
}

} // namespace detail

// Grammar (whitespace-insensitive):
//   sum     := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := postfix ('^' int)?
//   postfix := primary ('@' int)*
//   primary := int ('/' int)? | '(' sum ')' | atom
//   atom    := eta(m:r,...) | E[w,N,s] | F[w,N,s] | E4(d) | E6(d) | Ew2(N)
//            | wpa(a,b,N) | delta(N) | qser(v: c0,c1,...)
inline FormExpr parse_expr(std::string_view text)
{
    return detail::ExprParser(text).parse();
}

// Inverse of parse_expr up to whitespace.
inline std::string render(const FormExpr &e)
{
    std::string out;
    detail::render_to(out, e, 0);
    return out;
}

} // namespace cuspbase

#endif
