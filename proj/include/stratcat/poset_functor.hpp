#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/display.hpp"
#include "stratcat/finite_space.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"
#include "stratcat/space_over.hpp"

namespace stratcat {

enum class Variance { covariant, contravariant };

// A set-valued functor on a finite poset, tabulated on the strict relations.
// Covariant maps go F(x) -> F(y) along x <= y; contravariant maps go
// F(y) -> F(x), the shape a costalk diagram has.
struct PosetFunctor {
    Poset base;
    std::vector<int> card;
    std::map<std::pair<int, int>, std::vector<int>> maps;
    Variance variance = Variance::covariant;
};

inline void validate_functor(const PosetFunctor& g) {
    const int n = g.base.size();
    if (g.card.size() != static_cast<size_t>(n)) throw ValidationError("cardinality table size mismatch");
    for (int c : g.card)
        if (c < 0) throw ValidationError("negative set size");
    size_t expected = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !g.base.leq(x, y)) continue;
            ++expected;
            auto it = g.maps.find({x, y});
            if (it == g.maps.end()) throw ValidationError("missing map along a relation");
            const int src = g.variance == Variance::covariant ? g.card[static_cast<size_t>(x)]
                                                              : g.card[static_cast<size_t>(y)];
            const int dst = g.variance == Variance::covariant ? g.card[static_cast<size_t>(y)]
                                                              : g.card[static_cast<size_t>(x)];
            if (it->second.size() != static_cast<size_t>(src))
                throw ValidationError("map domain size mismatch");
            for (int t : it->second)
                if (t < 0 || t >= dst) throw ValidationError("map value out of range");
        }
    if (g.maps.size() != expected) throw ValidationError("unexpected map keys");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !g.base.leq(x, y)) continue;
            for (int z = 0; z < n; ++z) {
                if (z == y || !g.base.leq(y, z)) continue;
                const auto& xy = g.maps.at({x, y});
                const auto& yz = g.maps.at({y, z});
                const auto& xz = g.maps.at({x, z});
                if (g.variance == Variance::covariant) {
                    for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s)
                        if (yz[static_cast<size_t>(xy[static_cast<size_t>(s)])] !=
                            xz[static_cast<size_t>(s)])
                            throw ValidationError("maps do not compose");
                } else {
                    for (int s = 0; s < g.card[static_cast<size_t>(z)]; ++s)
                        if (xy[static_cast<size_t>(yz[static_cast<size_t>(s)])] !=
                            xz[static_cast<size_t>(s)])
                            throw ValidationError("maps do not compose");
                }
            }
        }
}

// Value of the structure map along x <= y; s lives in the map's source
// (F(x) when covariant, F(y) when contravariant).
inline int functor_map(const PosetFunctor& g, int x, int y, int s) {
    if (!g.base.leq(x, y)) throw ValidationError("not a relation of the base");
    if (x == y) return s;
    return g.maps.at({x, y})[static_cast<size_t>(s)];
}

struct EtaleSpace {
    SpaceOverX space;
    std::vector<int> offset;  // germ (x, s) sits at point index offset[x] + s
};

// Covariant functors spread out into a space of germs (x, s), specialising
// exactly when the structure map matches: the projection is then a local
// homeomorphism with fibre F(x) over x.
inline EtaleSpace etale_space(const PosetFunctor& g) {
    if (g.variance != Variance::covariant)
        throw ValidationError("etale spaces need a covariant functor");
    validate_functor(g);
    const int n = g.base.size();
    EtaleSpace e;
    e.offset.assign(static_cast<size_t>(n) + 1, 0);
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) {
        e.offset[static_cast<size_t>(x) + 1] = e.offset[static_cast<size_t>(x)] + g.card[static_cast<size_t>(x)];
        for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s)
            names.push_back(g.base.elements()[static_cast<size_t>(x)] + "#" + std::to_string(s));
    }
    const int total = e.offset[static_cast<size_t>(n)];
    if (total > 16) throw SizeLimitError("etale space limited to 16 germs");
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!g.base.leq(x, y)) continue;
            for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s)
                pairs.emplace_back(e.offset[static_cast<size_t>(x)] + s,
                                   e.offset[static_cast<size_t>(y)] + functor_map(g, x, y, s));
        }
    e.space.total = alexandrov(Preorder::from_pairs(std::move(names), pairs));
    e.space.base = alexandrov(g.base);
    e.space.projection.resize(static_cast<size_t>(total));
    for (int x = 0; x < n; ++x)
        for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s)
            e.space.projection[static_cast<size_t>(e.offset[static_cast<size_t>(x)] + s)] = x;
    validate_space_over(e.space);
    return e;
}

// Contravariant functors assemble into a precosheaf on the Alexandrov space:
// the cosections over an open are the colimit of the sets inside it, glued
// along the structure maps. The costalk at x collapses onto F(x).
inline Precosheaf cosheaf_from_functor(const PosetFunctor& g) {
    if (g.variance != Variance::contravariant)
        throw ValidationError("cosheaves need a contravariant functor");
    validate_functor(g);
    const int n = g.base.size();
    const FiniteSpace base = alexandrov(g.base);
    std::vector<int> offset(static_cast<size_t>(n) + 1, 0);
    for (int x = 0; x < n; ++x)
        offset[static_cast<size_t>(x) + 1] = offset[static_cast<size_t>(x)] + g.card[static_cast<size_t>(x)];
    const int slots = offset[static_cast<size_t>(n)];

    // For each open: union-find over the slots of its points, then number the
    // classes by smallest slot.
    const auto& opens = base.opens();
    std::vector<std::vector<int>> cls(opens.size(), std::vector<int>(static_cast<size_t>(slots), -1));
    std::vector<std::vector<int>> reps(opens.size());
    Precosheaf f;
    f.base = base;
    f.card.resize(opens.size());
    for (size_t u = 0; u < opens.size(); ++u) {
        detail::UnionFind dsu(slots);
        for (int x = 0; x < n; ++x) {
            if (!(opens[u] & (1U << x))) continue;
            for (int y = 0; y < n; ++y) {
                if (x == y || !(opens[u] & (1U << y)) || !g.base.leq(x, y)) continue;
                for (int t = 0; t < g.card[static_cast<size_t>(y)]; ++t)
                    dsu.unite(offset[static_cast<size_t>(y)] + t,
                              offset[static_cast<size_t>(x)] + functor_map(g, x, y, t));
            }
        }
        for (int x = 0; x < n; ++x) {
            if (!(opens[u] & (1U << x))) continue;
            for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s) {
                const int slot = offset[static_cast<size_t>(x)] + s;
                if (cls[u][static_cast<size_t>(dsu.find(slot))] < 0) {
                    cls[u][static_cast<size_t>(dsu.find(slot))] = static_cast<int>(reps[u].size());
                    reps[u].push_back(dsu.find(slot));
                }
                cls[u][static_cast<size_t>(slot)] = cls[u][static_cast<size_t>(dsu.find(slot))];
            }
        }
        f.card[u] = static_cast<int>(reps[u].size());
    }
    for (size_t u = 0; u < opens.size(); ++u)
        for (size_t v = 0; v < opens.size(); ++v) {
            if (u == v || opens[u] == opens[v] || (opens[u] & ~opens[v]) != 0) continue;
            std::vector<int> fn(reps[u].size());
            for (size_t k = 0; k < reps[u].size(); ++k)
                fn[k] = cls[v][static_cast<size_t>(reps[u][k])];
            f.ext[{static_cast<int>(u), static_cast<int>(v)}] = std::move(fn);
        }
    validate_precosheaf(f);
    for (int x = 0; x < n; ++x)
        if (f.card[static_cast<size_t>(f.open_index(base.minimal_open(x)))] != g.card[static_cast<size_t>(x)])
            throw Error("internal: costalk does not match the functor value");
    return f;
}

// Natural isomorphism: per-point bijections commuting with every structure
// map, found by backtracking (identity tried first via the fast path).
inline bool natural_iso(const PosetFunctor& g, const PosetFunctor& h) {
    if (!(static_cast<const Preorder&>(g.base) == static_cast<const Preorder&>(h.base)) ||
        g.variance != h.variance)
        return false;
    if (g.card != h.card) return false;
    if (g.maps == h.maps) return true;
    const int n = g.base.size();
    std::vector<std::vector<int>> tau(static_cast<size_t>(n));

    auto commutes = [&](int x, int y) {
        const auto& gm = g.maps.at({x, y});
        const auto& hm = h.maps.at({x, y});
        const int src = g.variance == Variance::covariant ? x : y;
        const int dst = g.variance == Variance::covariant ? y : x;
        for (int s = 0; s < g.card[static_cast<size_t>(src)]; ++s)
            if (hm[static_cast<size_t>(tau[static_cast<size_t>(src)][static_cast<size_t>(s)])] !=
                tau[static_cast<size_t>(dst)][static_cast<size_t>(gm[static_cast<size_t>(s)])])
                return false;
        return true;
    };
    auto rec = [&](auto&& self, int p) -> bool {
        if (p == n) return true;
        std::vector<int> perm(static_cast<size_t>(g.card[static_cast<size_t>(p)]));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            tau[static_cast<size_t>(p)] = perm;
            bool ok = true;
            for (int q = 0; q < p && ok; ++q) {
                if (q != p && g.base.leq(q, p) && !commutes(q, p)) ok = false;
                if (q != p && g.base.leq(p, q) && !commutes(p, q)) ok = false;
            }
            if (ok && self(self, p + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };
    return rec(rec, 0);
}

struct RoundtripReport {
    bool ok = false;
    bool structure_ok = false;  // the geometric side has the promised shape
    bool recovered = false;     // reading the functor back gives the original
    SpaceOverX space;
    PosetFunctor readback;
};

namespace detail {

// p restricted to each germ's minimal open must map it bijectively onto the
// minimal open below.
inline bool local_homeo(const SpaceOverX& y) {
    for (int t = 0; t < y.total.size(); ++t) {
        const std::uint32_t up = y.total.minimal_open(t);
        const std::uint32_t base_up = y.base.minimal_open(y.projection[static_cast<size_t>(t)]);
        if (std::popcount(up) != std::popcount(base_up)) return false;
        std::uint32_t image = 0;
        for (int s = 0; s < y.total.size(); ++s)
            if (up & (1U << s)) {
                const std::uint32_t bit = 1U << y.projection[static_cast<size_t>(s)];
                if (image & bit) return false;
                image |= bit;
            }
        if (image != base_up) return false;
    }
    return true;
}

}  // namespace detail

// Round trip between functors and their geometric incarnations.
//
// Covariant: build the etale space, confirm the projection is a local
// homeomorphism with the right fibres, then read the functor back off the
// germ order (the relation over x <= y hits each fibre element exactly once).
//
// Contravariant: build the cosheaf, confirm it glues, display it, confirm the
// display is a locally connected uniquely complete spread whose basic sets
// are nonempty and connected, then read the functor back from the costalk
// extensions of the component cosheaf.
inline RoundtripReport functor_roundtrip(const PosetFunctor& g) {
    validate_functor(g);
    RoundtripReport r;
    const int n = g.base.size();
    if (g.variance == Variance::covariant) {
        const EtaleSpace e = etale_space(g);
        r.space = e.space;
        r.structure_ok = detail::local_homeo(e.space);
        for (int x = 0; x < n; ++x)
            if (std::popcount(fiber_mask(e.space, x)) != g.card[static_cast<size_t>(x)])
                r.structure_ok = false;
        if (!r.structure_ok) return r;
        const Preorder st = specialisation(e.space.total);
        PosetFunctor back;
        back.base = g.base;
        back.variance = Variance::covariant;
        back.card = g.card;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y || !g.base.leq(x, y)) continue;
                std::vector<int> fn(static_cast<size_t>(g.card[static_cast<size_t>(x)]));
                for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s) {
                    int found = -1;
                    for (int t = 0; t < g.card[static_cast<size_t>(y)]; ++t)
                        if (st.leq(e.offset[static_cast<size_t>(x)] + s,
                                   e.offset[static_cast<size_t>(y)] + t)) {
                            if (found >= 0) {
                                r.structure_ok = false;
                            }
                            found = t;
                        }
                    if (found < 0) r.structure_ok = false;
                    fn[static_cast<size_t>(s)] = found < 0 ? 0 : found;
                }
                back.maps[{x, y}] = std::move(fn);
            }
        if (!r.structure_ok) return r;
        validate_functor(back);
        r.readback = std::move(back);
        r.recovered = natural_iso(g, r.readback);
        r.ok = r.recovered;
        return r;
    }

    const Precosheaf f = cosheaf_from_functor(g);
    const CosheafReport glue = cosheaf_check(f);
    const DisplaySpace d = display_space(f);
    r.space = d.space;
    const SpreadReport sr = classify_spread(d.space);
    r.structure_ok = glue.ok && sr.spread && sr.complete && sr.uniquely_complete &&
                     sr.locally_connected;
    for (int u = 0; u < f.open_count() && r.structure_ok; ++u) {
        if (f.open_mask(u) == 0) continue;
        for (int alpha = 0; alpha < f.card[static_cast<size_t>(u)]; ++alpha) {
            const std::uint32_t va = basic_open_mask(f, d, u, alpha);
            if (va == 0 || !is_connected(d.space.total, va)) r.structure_ok = false;
        }
    }
    if (!r.structure_ok) return r;
    const Precosheaf c = components_cosheaf(d.space);
    PosetFunctor back;
    back.base = g.base;
    back.variance = Variance::contravariant;
    back.card.resize(static_cast<size_t>(n));
    std::vector<int> umin(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        umin[static_cast<size_t>(x)] = c.open_index(c.base.minimal_open(x));
        back.card[static_cast<size_t>(x)] = c.card[static_cast<size_t>(umin[static_cast<size_t>(x)])];
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !g.base.leq(x, y)) continue;
            std::vector<int> fn(static_cast<size_t>(back.card[static_cast<size_t>(y)]));
            for (int t = 0; t < back.card[static_cast<size_t>(y)]; ++t)
                fn[static_cast<size_t>(t)] =
                    c.extend(umin[static_cast<size_t>(y)], umin[static_cast<size_t>(x)], t);
            back.maps[{x, y}] = std::move(fn);
        }
    validate_functor(back);
    r.readback = std::move(back);
    r.recovered = natural_iso(g, r.readback);
    r.ok = r.recovered;
    return r;
}

}  // namespace stratcat
