// cuspbase: dimension tables, echelon bases, series expansion and
// verification of the level 1..10 catalog.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cuspbase/cuspbase.hpp>

namespace
{

using namespace cuspbase;

constexpr const char *output_format = "cuspbase-format 1";

enum exit_code { ok = 0, verify_failed = 1, usage = 2, internal = 3 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long parse_long(const std::string &s, const std::string &what)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception &) {
        throw usage_error("invalid " + what + " '" + s + "'");
    }
    if (used != s.size()) {
        throw usage_error("invalid " + what + " '" + s + "'");
    }
    return v;
}

std::vector<long> parse_levels(const std::string &s, const Catalog &catalog)
{
    if (s == "all") {
        return catalog.levels();
    }
    const long n = parse_long(s, "level");
    if (n < 1) {
        throw usage_error("level must be positive");
    }
    return {n};
}

std::pair<long, long> parse_weights(const std::string &s)
{
    const auto dots = s.find("..");
    const long lo = parse_long(s.substr(0, dots), "weight range");
    const long hi = dots == std::string::npos ? lo : parse_long(s.substr(dots + 2), "weight range");
    if (lo % 2 != 0 || hi % 2 != 0 || lo < 0 || hi < lo) {
        throw usage_error("weight range '" + s + "' needs even bounds 0 <= LO <= HI");
    }
    return {lo, hi};
}

// Precision from --prec, else CUSPBASE_PREC, else the fallback.
long resolve_prec(const std::optional<long> &flag, long fallback)
{
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("CUSPBASE_PREC"); env != nullptr && *env != '\0') {
        const long p = parse_long(env, "CUSPBASE_PREC");
        if (p < 0) {
            throw usage_error("CUSPBASE_PREC must be non-negative");
        }
        return p;
    }
    return fallback;
}

Catalog pick_catalog(const std::string &path)
{
    return path.empty() ? builtin_catalog() : load_catalog(path);
}

void print_caret(const std::string &input, std::size_t pos)
{
    if (pos == std::string::npos || pos > input.size()) {
        return;
    }
    std::cerr << "  " << input << '\n' << "  " << std::string(pos, ' ') << "^\n";
}

int cmd_dims(const std::string &level, const std::string &weights)
{
    const auto levels = parse_levels(level, builtin_catalog());
    const auto [lo, hi] = parse_weights(weights);
    std::cout << "# " << output_format << " dims weights=" << lo << ".." << hi << '\n';
    std::cout << "weight:";
    for (long w = lo; w <= hi; w += 2) {
        std::cout << ' ' << w;
    }
    std::cout << '\n';
    for (long n : levels) {
        std::cout << "M " << n << ':';
        for (long w = lo; w <= hi; w += 2) {
            std::cout << ' ' << dim_M(n, w);
        }
        std::cout << "\nS " << n << ':';
        for (long w = lo; w <= hi; w += 2) {
            std::cout << ' ' << dim_S(n, w);
        }
        std::cout << '\n';
    }
    return ok;
}

struct BasisArgs {
    long level = 0;
    long weight = 0;
    std::string space = "cusp";
    std::optional<long> prec;
    std::string format = "text";
    bool raw = false;
    std::string catalog;
};

int cmd_basis(const BasisArgs &a)
{
    if (a.weight < 2 || a.weight % 2 != 0) {
        throw usage_error("weight must be even and at least 2");
    }
    const Catalog catalog = pick_catalog(a.catalog);
    BasisEngine engine(a.level, catalog);
    const long k = a.weight / 2;
    const long prec = resolve_prec(a.prec, engine.default_prec(k));
    const SpaceKind kind = a.space == "full" ? SpaceKind::full : SpaceKind::cusp;

    std::vector<QSeries> rows;
    if (a.raw) {
        if (kind != SpaceKind::cusp) {
            throw usage_error("--raw is only available for the cusp space");
        }
        if (prec < minimum_precision(a.level, a.weight)) {
            throw insufficient_precision("precision " + std::to_string(prec) + " is below "
                                         + std::to_string(minimum_precision(a.level, a.weight)));
        }
        rows = engine.ladder_family(k, prec);
    } else {
        rows = (kind == SpaceKind::full ? engine.m_basis(k, prec) : engine.s_basis(k, prec)).elements;
    }

    auto coeffs = [&](const QSeries &s) {
        std::vector<std::string> out;
        for (const auto &c : s.coefficients(Exponent(0), Exponent(prec), 1)) {
            out.push_back(to_string(c));
        }
        return out;
    };
    auto val = [](const QSeries &s) { return s.is_zero() ? std::string("inf") : s.valuation().str(); };

    if (a.format == "jsonl") {
        nlohmann::ordered_json head{{"format", output_format}, {"kind", "basis"},   {"level", a.level},
                                    {"weight", a.weight},      {"space", a.space}, {"precision", prec},
                                    {"dimension", rows.size()}};
        if (a.raw) {
            head["raw"] = true;
        }
        std::cout << head.dump() << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) {
            nlohmann::ordered_json row{{"level", a.level}, {"weight", a.weight}, {"space", a.space},
                                       {"index", i + 1}};
            if (rows[i].is_zero()) {
                row["valuation"] = nullptr;
            } else {
                row["valuation"] = rows[i].valuation().floor();
            }
            row["coeffs"] = coeffs(rows[i]);
            std::cout << row.dump() << '\n';
        }
        return ok;
    }
    std::cout << "# " << output_format << " basis level=" << a.level << " weight=" << a.weight
              << " space=" << a.space << " prec=" << prec << " dim=" << rows.size() << (a.raw ? " raw" : "") << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::cout << i + 1 << ' ' << val(rows[i]) << ':';
        for (const auto &c : coeffs(rows[i])) {
            std::cout << ' ' << c;
        }
        std::cout << '\n';
    }
    return ok;
}

struct ExpandArgs {
    std::string eta;
    std::string expr;
    std::string wpa;
    std::optional<long> prec;
    std::string scale;
    std::string catalog;
};

int cmd_expand(const ExpandArgs &a)
{
    const int chosen = !a.eta.empty() + !a.expr.empty() + !a.wpa.empty();
    if (chosen != 1) {
        throw usage_error("expand needs exactly one of --eta, --expr, --wpa");
    }
    const long prec = resolve_prec(a.prec, 20);
    const Exponent P(prec);
    QSeries s = QSeries::zero(P);
    std::string source;
    // Parse errors point into the text that was given.
    const std::string &input = !a.eta.empty() ? a.eta : !a.expr.empty() ? a.expr : a.wpa;
    try {
        if (!a.eta.empty()) {
            const auto q = parse_eta_quotient(a.eta);
            source = "eta(" + q.str() + ")";
            s = eta_expand(q, P);
        } else if (!a.expr.empty()) {
            const Catalog catalog = pick_catalog(a.catalog);
            Evaluator ev(catalog);
            const FormExpr e = parse_expr(a.expr);
            source = render(e);
            s = ev.evaluate(e, P);
        } else {
            std::vector<long> parts;
            std::stringstream ss(a.wpa);
            std::string item;
            while (std::getline(ss, item, ',')) {
                parts.push_back(parse_long(item, "--wpa component"));
            }
            if (parts.size() != 3) {
                throw usage_error("--wpa needs a,b,N");
            }
            const TorsionPoint t{parts[0], static_cast<int>(parts[1]), parts[2]};
            source = "wpa(" + a.wpa + ")";
            s = wpa_expand(t, P);
        }
    } catch (const syntax_error &e) {
        std::cerr << "cuspbase: " << e.what() << '\n';
        print_caret(input, e.position());
        return usage;
    }
    if (!a.scale.empty()) {
        const Rational r = parse_rational(a.scale);
        s = r * s;
        source = to_string(r) + "*" + source;
    }
    std::cout << "# " << output_format << " series prec=" << prec << " source=" << source << '\n';
    std::cout << to_string(s) << '\n';
    return ok;
}

int cmd_verify(const std::string &level, const std::string &suite_name, const std::string &catalog_path)
{
    const Catalog catalog = pick_catalog(catalog_path);
    const auto levels = parse_levels(level, catalog);
    for (long n : levels) {
        if (!catalog.has_level(n)) {
            throw unsupported_level("level " + std::to_string(n) + " is not in the catalog");
        }
    }
    const Suite suite = suite_name == "paper" ? Suite::catalog : suite_name == "structure" ? Suite::structure : Suite::all;
    const Report report = run_verify(catalog, levels, suite);
    long pass = 0;
    long fail = 0;
    long info = 0;
    for (const auto &c : report) {
        std::cout << format_line(c) << '\n';
        (c.status == Status::pass ? pass : c.status == Status::fail ? fail : info) += 1;
    }
    std::cout << "# " << output_format << " verify suite=" << suite_name << " pass=" << pass << " fail=" << fail
              << " info=" << info << '\n';
    return fail == 0 ? ok : verify_failed;
}

int cmd_catalog(bool dump, const std::string &catalog_path)
{
    const Catalog catalog = pick_catalog(catalog_path);
    if (dump) {
        std::cout << catalog_to_json(catalog).dump(2) << '\n';
        return ok;
    }
    std::cout << "# " << output_format << " catalog\n";
    for (long n : catalog.levels()) {
        const auto &lc = catalog.level(n);
        std::cout << n << ": delta " << lc.delta.text << ", " << lc.generators.size() << " generators, "
                  << lc.seeds.size() << " seeds, k0 " << lc.k0 << ", " << lc.printed.size() << " printed, "
                  << lc.identities.size() << " identities\n";
    }
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Bases of modular forms on Gamma0(N) over exact q-series"};
    app.require_subcommand(1);

    auto *dims = app.add_subcommand("dims", "dimensions of M_w and S_w");
    std::string dims_level;
    std::string dims_weights = "2..24";
    dims->add_option("--level", dims_level, "N or all")->required();
    dims->add_option("--weights", dims_weights, "LO..HI, even bounds");

    auto *basis = app.add_subcommand("basis", "reduced echelon basis");
    BasisArgs b;
    basis->add_option("--level", b.level, "N")->required();
    basis->add_option("--weight", b.weight, "even weight")->required();
    basis->add_option("--space", b.space)->check(CLI::IsMember({"cusp", "full"}));
    basis->add_option("--prec", b.prec, "number of coefficients");
    basis->add_option("--format", b.format)->check(CLI::IsMember({"text", "jsonl"}));
    basis->add_flag("--raw", b.raw, "emit the unreduced ladder family");
    basis->add_option("--catalog", b.catalog, "catalog JSON file");

    auto *expand = app.add_subcommand("expand", "expand an eta quotient, expression or wpa atom");
    ExpandArgs e;
    expand->add_option("--eta", e.eta, "m:r,...");
    expand->add_option("--expr", e.expr, "form expression");
    expand->add_option("--wpa", e.wpa, "a,b,N");
    expand->add_option("--prec", e.prec, "truncation exponent");
    expand->add_option("--scale", e.scale, "rational multiplier");
    expand->add_option("--catalog", e.catalog, "catalog JSON file");

    auto *verify = app.add_subcommand("verify", "check the catalog and the structure statements");
    std::string v_level;
    std::string v_suite = "all";
    std::string v_catalog;
    verify->add_option("--level", v_level, "N or all")->required();
    verify->add_option("--suite", v_suite)->check(CLI::IsMember({"paper", "structure", "all"}));
    verify->add_option("--catalog", v_catalog, "catalog JSON file");

    auto *catalog = app.add_subcommand("catalog", "show the catalog");
    bool c_dump = false;
    std::string c_catalog;
    catalog->add_flag("--dump", c_dump, "write the catalog as JSON");
    catalog->add_option("--catalog", c_catalog, "catalog JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        const int rc = app.exit(err);
        return rc == 0 ? ok : usage;
    }

    try {
        if (dims->parsed()) {
            return cmd_dims(dims_level, dims_weights);
        }
        if (basis->parsed()) {
            return cmd_basis(b);
        }
        if (expand->parsed()) {
            return cmd_expand(e);
        }
        if (verify->parsed()) {
            return cmd_verify(v_level, v_suite, v_catalog);
        }
        return cmd_catalog(c_dump, c_catalog);
    } catch (const usage_error &err) {
        std::cerr << "cuspbase: " << err.what() << '\n';
        return usage;
    } catch (const syntax_error &err) {
        std::cerr << "cuspbase: " << err.what() << '\n';
        return usage;
    } catch (const ladder_condition_failed &err) {
        std::cerr << "cuspbase: ladder condition failed: " << err.what() << '\n';
        return internal;
    } catch (const rank_error &err) {
        std::cerr << "cuspbase: rank " << err.rank() << ", expected " << err.expected() << ": " << err.what() << '\n';
        return internal;
    } catch (const invariant_violation &err) {
        std::cerr << "cuspbase: invariant violated: " << err.what() << '\n';
        return internal;
    } catch (const error &err) {
        // Remaining library errors reject the request itself.
        std::cerr << "cuspbase: " << err.what() << '\n';
        return usage;
    } catch (const std::exception &err) {
        std::cerr << "cuspbase: internal error: " << err.what() << '\n';
        return internal;
    }
}
