#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/finite_space.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"
#include "stratcat/space_over.hpp"

namespace stratcat {

// The display space of a precosheaf: one point per germ (x, b) with b a
// costalk value at x, specialising along the base with matching extensions.
struct DisplaySpace {
    SpaceOverX space;
    std::vector<std::pair<int, int>> points;  // germ index -> (base point, costalk value)
    std::map<std::pair<int, int>, int> index;  // (base point, costalk value) -> germ index
};

// Germ order: (x, b) <= (y, c) iff x <= y in the base and c extends to b
// along the inclusion of the minimal open of y into the minimal open of x.
// The basic set V_b of germs over an open U extending to a fixed cosection b
// is the minimal open of (x, b) when U is minimal, so the germ topology is
// generated by the basic sets.
inline DisplaySpace display_space(const Precosheaf& f) {
    validate_precosheaf(f);
    DisplaySpace d;
    std::vector<std::string> names;
    std::vector<int> umin(static_cast<size_t>(f.base.size()));
    for (int x = 0; x < f.base.size(); ++x) {
        umin[static_cast<size_t>(x)] = f.open_index(f.base.minimal_open(x));
        const int cnt = f.card[static_cast<size_t>(umin[static_cast<size_t>(x)])];
        for (int b = 0; b < cnt; ++b) {
            d.index[{x, b}] = static_cast<int>(d.points.size());
            d.points.emplace_back(x, b);
            names.push_back(f.base.points()[static_cast<size_t>(x)] + "#" + std::to_string(b));
        }
    }
    if (d.points.size() > 16)
        throw SizeLimitError("display space limited to 16 germs");
    const Preorder sb = specialisation(f.base);
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < d.points.size(); ++i)
        for (size_t j = 0; j < d.points.size(); ++j) {
            const auto [x, b] = d.points[i];
            const auto [y, c] = d.points[j];
            if (!sb.leq(x, y)) continue;
            if (f.extend(umin[static_cast<size_t>(y)], umin[static_cast<size_t>(x)], c) == b)
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    d.space.total = alexandrov(Preorder::from_pairs(std::move(names), pairs));
    d.space.base = f.base;
    d.space.projection.resize(d.points.size());
    for (size_t i = 0; i < d.points.size(); ++i)
        d.space.projection[i] = d.points[i].first;
    validate_space_over(d.space);
    return d;
}

// Germs over the open with index u whose extension to u is the cosection
// alpha. These sets partition the preimage of u in the display space.
inline std::uint32_t basic_open_mask(const Precosheaf& f, const DisplaySpace& d, int u,
                                     int alpha) {
    const std::uint32_t mask = f.open_mask(u);
    std::uint32_t m = 0;
    for (size_t i = 0; i < d.points.size(); ++i) {
        const auto [x, b] = d.points[i];
        if (!(mask & (1U << x))) continue;
        if (f.extend(f.open_index(f.base.minimal_open(x)), u, b) == alpha) m |= 1U << i;
    }
    return m;
}

struct Cosheafification {
    Precosheaf cosheaf;                        // components of the display space
    std::vector<std::vector<int>> to_original;  // counit: component class -> original cosection
    DisplaySpace display;
};

// Cosheafification = components cosheaf of the display space. The counit
// sends a component of the preimage of U to the common extension of its
// germs, which the composition law makes constant on components; it is a
// natural map and an isomorphism exactly when the input already glues.
inline Cosheafification cosheafify(const Precosheaf& f) {
    if (f.base.size() > 8)
        throw SizeLimitError("cosheafification limited to bases with at most 8 points");
    Cosheafification c;
    c.display = display_space(f);
    // Checked lemma: germ minimal opens are connected, so the components
    // cosheaf needs no locally-connected refinement at this scale.
    for (int i = 0; i < c.display.space.total.size(); ++i)
        if (!is_connected(c.display.space.total, c.display.space.total.minimal_open(i)))
            throw Error("internal: display space has a disconnected minimal open");
    c.cosheaf = components_cosheaf(c.display.space);
    const auto& opens = f.base.opens();
    c.to_original.resize(opens.size());
    for (size_t u = 0; u < opens.size(); ++u) {
        const auto comps = connected_components(c.display.space.total,
                                                preimage_mask(c.display.space, opens[u]));
        c.to_original[u].resize(comps.size());
        for (size_t k = 0; k < comps.size(); ++k) {
            int common = -1;
            for (size_t i = 0; i < c.display.points.size(); ++i) {
                if (!(comps[k] & (1U << i))) continue;
                const auto [x, b] = c.display.points[i];
                const int val =
                    f.extend(f.open_index(f.base.minimal_open(x)), static_cast<int>(u), b);
                if (common < 0)
                    common = val;
                else if (common != val)
                    throw Error("internal: counit is not constant on a component");
            }
            c.to_original[u][k] = common;
        }
    }
    if (!is_natural_map(c.cosheaf, f, c.to_original))
        throw Error("internal: counit is not a natural map");
    return c;
}

inline bool counit_is_iso(const Precosheaf& f, const Cosheafification& c) {
    for (size_t u = 0; u < c.to_original.size(); ++u) {
        if (c.to_original[u].size() != static_cast<size_t>(f.card[u])) return false;
        std::vector<bool> hit(static_cast<size_t>(f.card[u]), false);
        for (int v : c.to_original[u]) {
            if (hit[static_cast<size_t>(v)]) return false;
            hit[static_cast<size_t>(v)] = true;
        }
    }
    return true;
}

struct UnitMap {
    Precosheaf cosheaf;     // components cosheaf of the space
    DisplaySpace display;   // its display space
    std::vector<int> point_map;  // total point -> germ index
};

// Unit: a total point goes to the germ of its own component inside the
// preimage of the minimal open below it.
inline UnitMap unit_map(const SpaceOverX& y) {
    UnitMap u;
    u.cosheaf = components_cosheaf(y);
    u.display = display_space(u.cosheaf);
    u.point_map.resize(static_cast<size_t>(y.total.size()));
    for (int t = 0; t < y.total.size(); ++t) {
        const int x = y.projection[static_cast<size_t>(t)];
        const auto comps =
            connected_components(y.total, preimage_mask(y, y.base.minimal_open(x)));
        int k = -1;
        for (size_t i = 0; i < comps.size(); ++i)
            if (comps[i] & (1U << t)) k = static_cast<int>(i);
        u.point_map[static_cast<size_t>(t)] = u.display.index.at({x, k});
    }
    return u;
}

inline bool unit_is_iso(const SpaceOverX& y, const UnitMap& u) {
    if (u.point_map.size() != static_cast<size_t>(y.total.size())) return false;
    if (y.total.size() != u.display.space.total.size()) return false;
    std::vector<bool> hit(static_cast<size_t>(y.total.size()), false);
    for (int img : u.point_map) {
        if (hit[static_cast<size_t>(img)]) return false;
        hit[static_cast<size_t>(img)] = true;
    }
    const Preorder sy = specialisation(y.total);
    const Preorder sd = specialisation(u.display.space.total);
    for (int a = 0; a < y.total.size(); ++a)
        for (int b = 0; b < y.total.size(); ++b)
            if (sy.leq(a, b) != sd.leq(u.point_map[static_cast<size_t>(a)],
                                       u.point_map[static_cast<size_t>(b)]))
                return false;
    return true;
}

// Transpose of a natural map C(Y) -> F to an over-map Y -> D(F).
inline std::vector<int> transpose_to_space(const SpaceOverX& y, const Precosheaf& f,
                                           const DisplaySpace& d,
                                           const std::vector<std::vector<int>>& phi) {
    std::vector<int> g(static_cast<size_t>(y.total.size()));
    for (int t = 0; t < y.total.size(); ++t) {
        const int x = y.projection[static_cast<size_t>(t)];
        const int u = f.open_index(y.base.minimal_open(x));
        const auto comps =
            connected_components(y.total, preimage_mask(y, y.base.minimal_open(x)));
        int k = -1;
        for (size_t i = 0; i < comps.size(); ++i)
            if (comps[i] & (1U << t)) k = static_cast<int>(i);
        g[static_cast<size_t>(t)] = d.index.at({x, phi[static_cast<size_t>(u)][static_cast<size_t>(k)]});
    }
    return g;
}

// Transpose of an over-map Y -> D(F) to a natural map C(Y) -> F.
inline std::vector<std::vector<int>> transpose_to_cosheaf(const SpaceOverX& y,
                                                          const Precosheaf& f,
                                                          const DisplaySpace& d,
                                                          const std::vector<int>& g) {
    const auto& opens = y.base.opens();
    std::vector<std::vector<int>> phi(opens.size());
    for (size_t u = 0; u < opens.size(); ++u) {
        const auto comps = connected_components(y.total, preimage_mask(y, opens[u]));
        phi[u].resize(comps.size());
        for (size_t k = 0; k < comps.size(); ++k) {
            int common = -1;
            for (int t = 0; t < y.total.size(); ++t) {
                if (!(comps[k] & (1U << t))) continue;
                const auto [x, b] = d.points[static_cast<size_t>(g[static_cast<size_t>(t)])];
                const int val =
                    f.extend(f.open_index(f.base.minimal_open(x)), static_cast<int>(u), b);
                if (common < 0)
                    common = val;
                else if (common != val)
                    throw Error("internal: transpose is not constant on a component");
            }
            phi[u][k] = common;
        }
    }
    return phi;
}

struct AdjunctionReport {
    bool ok = false;
    std::size_t count = 0;  // number of maps on each side
};

// Hom(C(Y), F) and Hom_over(Y, D(F)) are enumerated and transposed both
// ways; the report verifies that the transposes are mutually inverse
// bijections.
inline AdjunctionReport adjunction_bijection(const SpaceOverX& y, const Precosheaf& f,
                                             std::size_t limit = 200000) {
    validate_space_over(y);
    validate_precosheaf(f);
    if (y.base != f.base) throw ValidationError("adjunction needs a common base");
    const Precosheaf cy = components_cosheaf(y);
    const DisplaySpace d = display_space(f);
    const auto naturals = natural_maps(cy, f, limit);
    const auto overs = over_maps(y, d.space, limit);
    AdjunctionReport r;
    r.count = naturals.size();
    if (overs.size() != naturals.size()) return r;
    std::map<std::vector<int>, size_t> over_index;
    for (size_t i = 0; i < overs.size(); ++i) over_index[overs[i]] = i;
    std::vector<bool> hit(overs.size(), false);
    for (const auto& phi : naturals) {
        const auto g = transpose_to_space(y, f, d, phi);
        auto it = over_index.find(g);
        if (it == over_index.end() || hit[it->second]) return r;
        hit[it->second] = true;
        if (transpose_to_cosheaf(y, f, d, g) != phi) return r;
    }
    for (const auto& g : overs)
        if (transpose_to_space(y, f, d, transpose_to_cosheaf(y, f, d, g)) != g) return r;
    r.ok = true;
    return r;
}

}  // namespace stratcat
