#pragma once

// JSON encodings for the CLI-facing types. Requires the nlohmann/json single
// header ("json.hpp") on the include path; the core library headers do not.
//
// Conventions, also documented in the CLI --help texts:
//   Preorder          {"elements":[names], "leq":[[bool,...],...]}
//                     (the relation is closed reflexively and transitively on
//                      input; index order follows the elements array)
//   FiniteSpace       {"points":[names], "opens":[[point indices],...]}
//   FinPresCategory   {"objects":[names],
//                      "arrows":[{"name":..., "src":i, "dst":j},...],
//                      "relations":[[[arrow names],[arrow names]],...]}
//   GroupPresentation {"generators":[names], "relators":[[letters],...]}
//                     where a letter is a generator name, case-swapped to
//                     denote its inverse ("a1" -> "A1")
//   partitions        sorted (weakly decreasing) arrays of positive ints
//   braid words       text "s1 s2^-1 ..." (optional "n=<k>" header) or the
//                     array alternative [[i, sign],...] with 1-based i
//   HomMorphism       {"n":..., "P":[...], "Q":[...], "braid":"s1 s2^-1 ..."}
//   pattern           {"blocks":[{"size":3,"splits":[2,1]},...]}
//   Precosheaf        {"space":FiniteSpace,
//                      "cosections":{"<open index>":[0,...,k-1],...},
//                      "extensions":{"<u>⊆<v>":[mapping array],...}}
//   SpaceOverX        {"total":FiniteSpace, "base":FiniteSpace,
//                      "projection":[base point index per total point]}
//   PosetFunctor      {"poset":Preorder, "variance":"covariant"|"contravariant",
//                      "sets":{"<element>":cardinality,...},
//                      "maps":{"<x><<y>":[mapping array],...}}
//                     (map key "x<y" names a strict relation; covariant values
//                      map F(x) -> F(y), contravariant values F(y) -> F(x))

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stratcat/braid.hpp"
#include "stratcat/core.hpp"
#include "stratcat/display.hpp"
#include "stratcat/finite_space.hpp"
#include "stratcat/garside.hpp"
#include "stratcat/group.hpp"
#include "stratcat/partition.hpp"
#include "stratcat/poset_functor.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"
#include "stratcat/presentation.hpp"
#include "stratcat/space_over.hpp"
#include "stratcat/sym_product.hpp"

namespace stratcat::io {

using json = nlohmann::ordered_json;

// ---- strict parsing helpers -----------------------------------------------

inline void require_object(const json& j, const std::string& what,
                           const std::vector<std::string>& required,
                           const std::vector<std::string>& optional = {}) {
    if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
    for (const auto& k : required)
        if (!j.contains(k)) throw ValidationError(what + " is missing field \"" + k + "\"");
    for (const auto& [k, v] : j.items()) {
        (void)v;
        bool known = false;
        for (const auto& r : required) known = known || k == r;
        for (const auto& o : optional) known = known || k == o;
        if (!known) throw ValidationError("unknown field \"" + k + "\" in " + what);
    }
}

inline int to_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ValidationError(what + " must be an integer");
    return j.get<int>();
}

inline std::vector<int> int_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of integers");
    std::vector<int> out;
    for (const auto& e : j) out.push_back(to_int(e, "entry of " + what));
    return out;
}

inline std::vector<std::string> string_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ValidationError("entry of " + what + " must be a string");
        out.push_back(e.get<std::string>());
    }
    return out;
}

// ---- order topology ---------------------------------------------------------

inline json preorder_to_json(const Preorder& p) {
    json rows = json::array();
    for (int x = 0; x < p.size(); ++x) {
        json row = json::array();
        for (int y = 0; y < p.size(); ++y) row.push_back(p.leq(x, y));
        rows.push_back(std::move(row));
    }
    return json{{"elements", p.elements()}, {"leq", std::move(rows)}};
}

inline Preorder preorder_from_json(const json& j) {
    require_object(j, "preorder", {"elements", "leq"});
    std::vector<std::string> elements = string_array(j["elements"], "\"elements\"");
    const json& rows = j["leq"];
    if (!rows.is_array() || rows.size() != elements.size())
        throw ValidationError("\"leq\" must be a square boolean matrix over the elements");
    std::vector<std::vector<char>> rel;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != elements.size())
            throw ValidationError("\"leq\" must be a square boolean matrix over the elements");
        std::vector<char> r;
        for (const auto& e : row) {
            if (e.is_boolean())
                r.push_back(e.get<bool>() ? 1 : 0);
            else if (e.is_number_integer() && (e.get<int>() == 0 || e.get<int>() == 1))
                r.push_back(static_cast<char>(e.get<int>()));
            else
                throw ValidationError("\"leq\" entries must be booleans (or 0/1)");
        }
        rel.push_back(std::move(r));
    }
    return Preorder::close(std::move(elements), std::move(rel));
}

inline Poset poset_from_json(const json& j) { return Poset(preorder_from_json(j)); }

inline json finite_space_to_json(const FiniteSpace& s) {
    json opens = json::array();
    for (std::uint32_t m : s.opens()) {
        json members = json::array();
        for (int x = 0; x < s.size(); ++x)
            if (m & (1U << x)) members.push_back(x);
        opens.push_back(std::move(members));
    }
    return json{{"points", s.points()}, {"opens", std::move(opens)}};
}

inline FiniteSpace finite_space_from_json(const json& j) {
    require_object(j, "finite space", {"points", "opens"});
    std::vector<std::string> points = string_array(j["points"], "\"points\"");
    std::set<std::string> distinct(points.begin(), points.end());
    if (distinct.size() != points.size()) throw ValidationError("duplicate point names");
    if (points.size() > 25) throw ValidationError("finite space limited to 25 points");
    if (!j["opens"].is_array()) throw ValidationError("\"opens\" must be an array of index arrays");
    std::vector<std::uint32_t> masks;
    for (const auto& open : j["opens"]) {
        std::uint32_t m = 0;
        for (int x : int_array(open, "an open set")) {
            if (x < 0 || x >= static_cast<int>(points.size()))
                throw ValidationError("open set mentions unknown points");
            m |= 1U << x;
        }
        masks.push_back(m);
    }
    return FiniteSpace::from_opens(std::move(points), std::move(masks));
}

// ---- presented categories and groups ---------------------------------------

inline json category_to_json(const FinPresCategory& c) {
    json arrows = json::array();
    for (const Arrow& a : c.arrows)
        arrows.push_back(json{{"name", a.name}, {"src", a.src}, {"dst", a.dst}});
    json relations = json::array();
    for (const auto& [u, v] : c.relations) {
        json side_u = json::array(), side_v = json::array();
        for (int a : u) side_u.push_back(c.arrows[static_cast<size_t>(a)].name);
        for (int a : v) side_v.push_back(c.arrows[static_cast<size_t>(a)].name);
        relations.push_back(json::array({std::move(side_u), std::move(side_v)}));
    }
    return json{{"objects", c.objects}, {"arrows", std::move(arrows)},
                {"relations", std::move(relations)}};
}

inline std::string case_swap(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (c >= 'a' && c <= 'z')
            c = static_cast<char>(c - 'a' + 'A');
        else if (c >= 'A' && c <= 'Z')
            c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

inline json presentation_to_json(const GroupPresentation& g) {
    std::set<std::string> folded;
    for (const auto& name : g.generators) {
        std::string low = name;
        for (char& c : low)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (!folded.insert(low).second)
            throw ValidationError(
                "generator names collide case-insensitively; cannot encode inverses");
    }
    json relators = json::array();
    for (const auto& r : g.relators) {
        json word = json::array();
        for (int a : r) {
            const std::string& name = g.generators[static_cast<size_t>(std::abs(a)) - 1];
            word.push_back(a > 0 ? name : case_swap(name));
        }
        relators.push_back(std::move(word));
    }
    return json{{"generators", g.generators}, {"relators", std::move(relators)}};
}

inline json abelianization_to_json(const Abelianization& ab) {
    return json{{"rank", ab.rank}, {"torsion", ab.torsion}};
}

// ---- braids and partitions --------------------------------------------------

// Braid word without the strand header; pairs with an explicit "n" field.
inline std::string braid_word_text(const BraidWord& w) {
    std::string out;
    for (int a : w.letters) {
        if (!out.empty()) out += ' ';
        out += 's' + std::to_string(std::abs(a));
        if (a < 0) out += "^-1";
    }
    return out;
}

// Accepts the text format (optional "n=<k>" header) or the JSON array
// alternative [[i, sign],...]; n_hint (-1 = none) supplies the strand count.
inline BraidWord braid_from_text_or_array(const std::string& arg, int n_hint) {
    std::string trimmed = arg;
    while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t'))
        trimmed.erase(trimmed.begin());
    if (!trimmed.empty() && trimmed.front() == '[') {
        json j = json::parse(trimmed, nullptr, false);
        if (j.is_discarded()) throw ValidationError("malformed braid letter array");
        BraidWord w;
        int maxgen = 0;
        if (!j.is_array()) throw ValidationError("braid letter array must be an array");
        for (const auto& e : j) {
            std::vector<int> pair = int_array(e, "a braid letter");
            if (pair.size() != 2 || pair[0] < 1 || (pair[1] != 1 && pair[1] != -1))
                throw ValidationError("braid letters are [i, sign] with i >= 1, sign +-1");
            maxgen = std::max(maxgen, pair[0]);
            w.letters.push_back(pair[1] > 0 ? pair[0] : -pair[0]);
        }
        w.n = n_hint >= 1 ? n_hint : maxgen + 1;
        w.validate();
        return w;
    }
    BraidWord w = parse_braid(arg, n_hint);
    if (n_hint >= 1 && w.n != n_hint)
        throw ValidationError("strand count mismatch between --n and the word header");
    return w;
}

inline AbstractPartition partition_from_ints(std::vector<int> parts,
                                             const std::string& what) {
    AbstractPartition p{std::move(parts)};
    try {
        validate_partition(p);
    } catch (const ValidationError& e) {
        throw ValidationError(what + ": " + e.what());
    }
    return p;
}

// Comma-separated positive integers, weakly decreasing ("3,2,2").
inline AbstractPartition partition_from_string(const std::string& s, const std::string& what) {
    std::vector<int> parts;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) throw ValidationError(what + ": empty partition part");
            try {
                parts.push_back(std::stoi(cur));
            } catch (...) {
                throw ValidationError(what + ": bad partition part \"" + cur + "\"");
            }
            cur.clear();
        } else {
            cur += c;
        }
    }
    return partition_from_ints(std::move(parts), what);
}

inline json hom_to_json(const HomMorphism& m) {
    return json{{"n", m.src.n()}, {"P", m.src.parts}, {"Q", m.dst.parts},
                {"braid", braid_word_text(m.braid)}};
}

inline HomMorphism hom_from_json(const json& j) {
    require_object(j, "morphism", {"n", "P", "Q", "braid"});
    const int n = to_int(j["n"], "\"n\"");
    AbstractPartition p = partition_from_ints(int_array(j["P"], "\"P\""), "\"P\"");
    AbstractPartition q = partition_from_ints(int_array(j["Q"], "\"Q\""), "\"Q\"");
    if (p.n() != n || q.n() != n)
        throw ValidationError("\"P\" and \"Q\" must be partitions of \"n\"");
    BraidWord w;
    if (j["braid"].is_string())
        w = braid_from_text_or_array(j["braid"].get<std::string>(), n);
    else
        w = braid_from_text_or_array(j["braid"].dump(), n);
    return hom_from_braid(std::move(p), std::move(q), std::move(w));
}

inline json pattern_to_json(const AbstractPartition& p, const RefinementPattern& r) {
    json blocks = json::array();
    for (size_t i = 0; i < p.parts.size(); ++i)
        blocks.push_back(json{{"size", p.parts[i]}, {"splits", r.splits[i]}});
    return json{{"blocks", std::move(blocks)}};
}

// ---- cosheaves ----------------------------------------------------------------

inline json precosheaf_to_json(const Precosheaf& f) {
    json cosections = json::object();
    for (int u = 0; u < f.open_count(); ++u) {
        json elems = json::array();
        for (int e = 0; e < f.card[static_cast<size_t>(u)]; ++e) elems.push_back(e);
        cosections[std::to_string(u)] = std::move(elems);
    }
    json extensions = json::object();
    for (const auto& [key, fn] : f.ext)
        extensions[std::to_string(key.first) + "⊆" + std::to_string(key.second)] = fn;
    return json{{"space", finite_space_to_json(f.base)}, {"cosections", std::move(cosections)},
                {"extensions", std::move(extensions)}};
}

inline std::pair<int, int> parse_inclusion_key(const std::string& key, int open_count) {
    size_t sep = key.find("⊆");
    size_t sep_len = std::string("⊆").size();
    if (sep == std::string::npos) {
        sep = key.find('<');
        sep_len = 1;
    }
    if (sep == std::string::npos)
        throw ValidationError("extension key \"" + key +
                              "\" must name an inclusion \"<u>⊆<v>\"");
    int u = 0, v = 0;
    try {
        u = std::stoi(key.substr(0, sep));
        v = std::stoi(key.substr(sep + sep_len));
    } catch (...) {
        throw ValidationError("extension key \"" + key + "\" has non-integer open indices");
    }
    if (u < 0 || v < 0 || u >= open_count || v >= open_count)
        throw ValidationError("extension key \"" + key + "\" is out of range");
    return {u, v};
}

inline Precosheaf precosheaf_from_json(const json& j) {
    require_object(j, "precosheaf", {"space", "cosections", "extensions"});
    Precosheaf f;
    f.base = finite_space_from_json(j["space"]);
    const int opens = static_cast<int>(f.base.opens().size());
    f.card.assign(static_cast<size_t>(opens), 0);
    if (!j["cosections"].is_object())
        throw ValidationError("\"cosections\" must map open indices to element lists");
    std::vector<char> seen(static_cast<size_t>(opens), 0);
    for (const auto& [key, value] : j["cosections"].items()) {
        int u = 0;
        try {
            u = std::stoi(key);
        } catch (...) {
            throw ValidationError("cosection key \"" + key + "\" is not an open index");
        }
        if (u < 0 || u >= opens)
            throw ValidationError("cosection key \"" + key + "\" is out of range");
        if (seen[static_cast<size_t>(u)])
            throw ValidationError("duplicate cosection key \"" + key + "\"");
        seen[static_cast<size_t>(u)] = 1;
        const std::vector<int> elems = int_array(value, "cosections[\"" + key + "\"]");
        for (size_t e = 0; e < elems.size(); ++e)
            if (elems[e] != static_cast<int>(e))
                throw ValidationError("cosection arrays list the elements 0..k-1 in order");
        f.card[static_cast<size_t>(u)] = static_cast<int>(elems.size());
    }
    for (int u = 1; u < opens; ++u)
        if (!seen[static_cast<size_t>(u)])
            throw ValidationError("missing cosections for open index " + std::to_string(u));
    if (!j["extensions"].is_object())
        throw ValidationError("\"extensions\" must map inclusion keys to mapping arrays");
    for (const auto& [key, value] : j["extensions"].items()) {
        const std::pair<int, int> inc = parse_inclusion_key(key, opens);
        if (f.ext.count(inc)) throw ValidationError("duplicate extension key \"" + key + "\"");
        f.ext[inc] = int_array(value, "extensions[\"" + key + "\"]");
    }
    // The empty open carries no cosections, so its outgoing extensions are
    // forced; fill any the payload omits.
    for (int v = 1; v < opens; ++v) f.ext.emplace(std::pair<int, int>{0, v}, std::vector<int>{});
    validate_precosheaf(f);
    return f;
}

inline json space_over_to_json(const SpaceOverX& y) {
    return json{{"total", finite_space_to_json(y.total)},
                {"base", finite_space_to_json(y.base)}, {"projection", y.projection}};
}

inline SpaceOverX space_over_from_json(const json& j) {
    require_object(j, "space over a base", {"total", "base", "projection"});
    SpaceOverX y;
    y.total = finite_space_from_json(j["total"]);
    y.base = finite_space_from_json(j["base"]);
    y.projection = int_array(j["projection"], "\"projection\"");
    validate_space_over(y);
    return y;
}

inline json functor_to_json(const PosetFunctor& g) {
    const std::vector<std::string>& names = g.base.elements();
    for (const auto& name : names)
        if (name.find('<') != std::string::npos)
            throw ValidationError("element names must not contain '<' in the JSON encoding");
    json sets = json::object();
    for (size_t x = 0; x < names.size(); ++x) sets[names[x]] = g.card[x];
    json maps = json::object();
    for (const auto& [key, fn] : g.maps)
        maps[names[static_cast<size_t>(key.first)] + "<" +
             names[static_cast<size_t>(key.second)]] = fn;
    return json{{"poset", preorder_to_json(g.base)},
                {"variance",
                 g.variance == Variance::covariant ? "covariant" : "contravariant"},
                {"sets", std::move(sets)}, {"maps", std::move(maps)}};
}

inline PosetFunctor functor_from_json(const json& j) {
    require_object(j, "poset functor", {"poset", "variance", "sets", "maps"});
    PosetFunctor g;
    g.base = poset_from_json(j["poset"]);
    if (!j["variance"].is_string())
        throw ValidationError("\"variance\" must be \"covariant\" or \"contravariant\"");
    const std::string variance = j["variance"].get<std::string>();
    if (variance == "covariant")
        g.variance = Variance::covariant;
    else if (variance == "contravariant")
        g.variance = Variance::contravariant;
    else
        throw ValidationError("\"variance\" must be \"covariant\" or \"contravariant\"");
    const std::vector<std::string>& names = g.base.elements();
    auto index_of = [&](const std::string& name) {
        for (size_t x = 0; x < names.size(); ++x)
            if (names[x] == name) return static_cast<int>(x);
        throw ValidationError("unknown element \"" + name + "\"");
    };
    if (!j["sets"].is_object())
        throw ValidationError("\"sets\" must map element names to cardinalities");
    g.card.assign(names.size(), -1);
    for (const auto& [key, value] : j["sets"].items()) {
        const int x = index_of(key);
        if (g.card[static_cast<size_t>(x)] >= 0)
            throw ValidationError("duplicate set entry for \"" + key + "\"");
        g.card[static_cast<size_t>(x)] = to_int(value, "sets[\"" + key + "\"]");
    }
    for (size_t x = 0; x < names.size(); ++x)
        if (g.card[x] < 0)
            throw ValidationError("missing set entry for \"" + names[x] + "\"");
    if (!j["maps"].is_object())
        throw ValidationError("\"maps\" must map relation keys to mapping arrays");
    for (const auto& [key, value] : j["maps"].items()) {
        const size_t sep = key.find('<');
        if (sep == std::string::npos)
            throw ValidationError("map key \"" + key + "\" must name a relation \"<x><<y>\"");
        const int x = index_of(key.substr(0, sep));
        const int y = index_of(key.substr(sep + 1));
        const std::pair<int, int> rel{x, y};
        if (g.maps.count(rel)) throw ValidationError("duplicate map key \"" + key + "\"");
        g.maps[rel] = int_array(value, "maps[\"" + key + "\"]");
    }
    validate_functor(g);
    return g;
}

inline json display_to_json(const DisplaySpace& d) {
    json germs = json::array();
    for (const auto& [x, b] : d.points) germs.push_back(json::array({x, b}));
    return json{{"space", space_over_to_json(d.space)}, {"germs", std::move(germs)}};
}

inline json mask_to_indices(std::uint32_t mask) {
    json out = json::array();
    for (int x = 0; x < 32; ++x)
        if (mask & (1U << x)) out.push_back(x);
    return out;
}

inline json spread_report_to_json(const SpreadReport& r) {
    json out{{"spread", r.spread}, {"complete", r.complete},
             {"uniquely_complete", r.uniquely_complete},
             {"locally_connected", r.locally_connected}};
    if (!r.spread) out["spread_witness_open"] = mask_to_indices(r.spread_witness_open);
    if (!r.complete) out["completeness_witness_point"] = r.completeness_witness_point;
    if (!r.uniquely_complete && r.uniqueness_witness_point >= 0)
        out["uniqueness_witness_point"] = r.uniqueness_witness_point;
    return out;
}

}  // namespace stratcat::io
