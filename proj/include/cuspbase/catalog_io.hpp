#ifndef CUSPBASE_CATALOG_IO_HPP
#define CUSPBASE_CATALOG_IO_HPP

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include <cuspbase/catalog.hpp>
#include <cuspbase/errors.hpp>

namespace cuspbase
{

inline constexpr const char *catalog_format = "cuspbase-catalog 1";

namespace detail
{

using json = nlohmann::ordered_json;

inline json form_to_json(const NamedForm &f)
{
    json j = f.text;
    if (f.reconstructed) {
        j = json{{"expr", f.text}, {"reconstructed", true}};
    }
    return j;
}

inline NamedForm form_from_json(const json &j)
{
    if (j.is_string()) {
        return NamedForm(j.get<std::string>());
    }
    return NamedForm(j.at("expr").get<std::string>(), j.value("reconstructed", false));
}

inline json forms_to_json(const std::map<FormKey, NamedForm> &m)
{
    json a = json::array();
    for (const auto &[key, f] : m) {
        a.push_back(json{{"weight", key.first}, {"index", key.second}, {"form", form_to_json(f)}});
    }
    return a;
}

inline std::map<FormKey, NamedForm> forms_from_json(const json &a)
{
    std::map<FormKey, NamedForm> out;
    for (const auto &e : a) {
        out.emplace(FormKey{e.at("weight").get<int>(), e.at("index").get<int>()}, form_from_json(e.at("form")));
    }
    return out;
}

} // namespace detail

inline nlohmann::ordered_json catalog_to_json(const Catalog &catalog)
{
    using detail::json;
    json levels = json::array();
    for (long n : catalog.levels()) {
        const auto &lc = catalog.level(n);
        json ladder = json::array();
        for (const auto &r : lc.ladder) {
            ladder.push_back(json{{"modulus", r.modulus}, {"residue", r.residue}, {"k0", r.k0}, {"seeds", r.seeds}});
        }
        json table = json::array();
        for (const auto &[w, d] : lc.dimension_table) {
            table.push_back(json::array({w, d}));
        }
        json printed = json::array();
        for (const auto &p : lc.printed) {
            json e{{"id", p.id}, {"form", detail::form_to_json(p.form)}, {"expansion", render_expansion(p.expansion)}};
            if (p.informational) {
                e["informational"] = true;
            }
            if (!p.note.empty()) {
                e["note"] = p.note;
            }
            printed.push_back(std::move(e));
        }
        json identities = json::array();
        for (const auto &i : lc.identities) {
            json e{{"id", i.id}, {"lhs", detail::form_to_json(i.lhs)}, {"rhs", detail::form_to_json(i.rhs)}};
            if (i.informational) {
                e["informational"] = true;
            }
            if (!i.note.empty()) {
                e["note"] = i.note;
            }
            identities.push_back(std::move(e));
        }
        levels.push_back(json{{"level", n},
                              {"delta", detail::form_to_json(lc.delta)},
                              {"k0", lc.k0},
                              {"generators", detail::forms_to_json(lc.generators)},
                              {"seeds", detail::forms_to_json(lc.seeds)},
                              {"ladder", ladder},
                              {"dimension_table", table},
                              {"printed", printed},
                              {"identities", identities}});
    }
    return json{{"format", catalog_format}, {"levels", levels}};
}

// Reads a catalog written by catalog_to_json. Structural problems surface as
// invalid_atom; the result is checked with validate_catalog.
inline Catalog catalog_from_json(const nlohmann::ordered_json &j)
{
    Catalog cat;
    try {
        if (j.at("format").get<std::string>() != catalog_format) {
            throw invalid_atom("unsupported catalog format '" + j.at("format").get<std::string>() + "'");
        }
        for (const auto &e : j.at("levels")) {
            LevelCatalog lc;
            lc.level = e.at("level").get<long>();
            lc.delta = detail::form_from_json(e.at("delta"));
            lc.k0 = e.at("k0").get<long>();
            lc.generators = detail::forms_from_json(e.at("generators"));
            lc.seeds = detail::forms_from_json(e.at("seeds"));
            for (const auto &r : e.at("ladder")) {
                lc.ladder.push_back(LadderRule{r.at("modulus").get<long>(), r.at("residue").get<long>(),
                                               r.at("k0").get<long>(), r.at("seeds").get<std::vector<int>>()});
            }
            for (const auto &t : e.value("dimension_table", detail::json::array())) {
                lc.dimension_table.emplace_back(t.at(0).get<long>(), t.at(1).get<long>());
            }
            for (const auto &p : e.value("printed", detail::json::array())) {
                lc.printed.push_back(PrintedExpansion{p.at("id").get<std::string>(), detail::form_from_json(p.at("form")),
                                                      parse_expansion(p.at("expansion").get<std::string>()),
                                                      p.value("informational", false), p.value("note", "")});
            }
            for (const auto &i : e.value("identities", detail::json::array())) {
                lc.identities.push_back(Identity{i.at("id").get<std::string>(), detail::form_from_json(i.at("lhs")),
                                                 detail::form_from_json(i.at("rhs")), i.value("informational", false),
                                                 i.value("note", "")});
            }
            cat.add(std::move(lc));
        }
    } catch (const nlohmann::json::exception &e) {
        throw invalid_atom(std::string("malformed catalog: ") + e.what());
    }
    validate_catalog(cat);
    return cat;
}

inline Catalog load_catalog(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw invalid_atom("cannot open catalog file '" + path + "'");
    }
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw invalid_atom("catalog file '" + path + "' is not JSON: " + e.what());
    }
    return catalog_from_json(j);
}

} // namespace cuspbase

#endif
