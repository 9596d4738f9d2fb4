#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/finite_space.hpp"

namespace stratcat {

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace detail

// Set-valued precosheaf tabulated on the full open family of a finite base.
// The cosections over the open with index u in base.opens() are
// {0, ..., card[u]-1}; extensions are stored for every strict inclusion of
// opens. The empty open carries no cosections: any gluing-compatible functor
// sends the empty union of opens to the empty set, and fixing that here keeps
// every quotient computation below canonical.
class Precosheaf {
public:
    FiniteSpace base;
    std::vector<int> card;
    std::map<std::pair<int, int>, std::vector<int>> ext;

    int open_count() const { return static_cast<int>(base.opens().size()); }
    std::uint32_t open_mask(int u) const { return base.opens()[static_cast<size_t>(u)]; }

    int open_index(std::uint32_t mask) const {
        const auto& os = base.opens();
        for (size_t i = 0; i < os.size(); ++i)
            if (os[i] == mask) return static_cast<int>(i);
        throw Error("mask is not an open set of the base");
    }

    // Extension along the inclusion of open u into open v (u may equal v).
    int extend(int u, int v, int e) const {
        if (u == v) return e;
        return ext.at({u, v})[static_cast<size_t>(e)];
    }

    bool operator==(const Precosheaf& o) const {
        return base == o.base && card == o.card && ext == o.ext;
    }
    bool operator!=(const Precosheaf& o) const { return !(*this == o); }
};

inline void validate_precosheaf(const Precosheaf& f) {
    const auto& opens = f.base.opens();
    if (f.card.size() != opens.size()) throw ValidationError("cosection table size mismatch");
    for (int c : f.card)
        if (c < 0) throw ValidationError("negative cosection count");
    size_t expected = 0;
    for (size_t u = 0; u < opens.size(); ++u) {
        if (opens[u] == 0 && f.card[u] != 0)
            throw ValidationError("cosections over the empty set must be empty");
        for (size_t v = 0; v < opens.size(); ++v) {
            if (u == v || opens[u] == opens[v] || (opens[u] & ~opens[v]) != 0) continue;
            ++expected;
            auto it = f.ext.find({static_cast<int>(u), static_cast<int>(v)});
            if (it == f.ext.end()) throw ValidationError("missing extension along an inclusion");
            if (it->second.size() != static_cast<size_t>(f.card[u]))
                throw ValidationError("extension domain size mismatch");
            for (int t : it->second)
                if (t < 0 || t >= f.card[v]) throw ValidationError("extension value out of range");
        }
    }
    if (f.ext.size() != expected) throw ValidationError("unexpected extension table keys");
    // Composition: extensions along nested inclusions must agree.
    std::vector<std::vector<int>> out(opens.size());
    for (const auto& [key, fn] : f.ext) out[static_cast<size_t>(key.first)].push_back(key.second);
    for (const auto& [key, fn] : f.ext) {
        const int u = key.first, v = key.second;
        for (int w : out[static_cast<size_t>(v)]) {
            const auto& second = f.ext.at({v, w});
            const auto& direct = f.ext.at({u, w});
            for (int e = 0; e < f.card[static_cast<size_t>(u)]; ++e)
                if (second[static_cast<size_t>(fn[static_cast<size_t>(e)])] !=
                    direct[static_cast<size_t>(e)])
                    throw ValidationError("extensions do not compose");
        }
    }
}

// Limit of the cosections over the opens containing x. The minimal open U_x
// is the least element of that index poset, so a consistent tuple is exactly
// an element of F(U_x) spread outward along the extensions: the projections
// are determined by the U_x coordinate and functoriality makes them agree on
// every inclusion.
struct Costalk {
    int point = -1;
    int minimal_open = -1;               // open index of U_x
    int count = 0;                       // = card at the minimal open
    std::vector<int> opens;              // all open indices containing the point
    std::vector<std::vector<int>> proj;  // proj[k][e] in F(opens[k])
};

inline Costalk costalk(const Precosheaf& f, int x) {
    if (x < 0 || x >= f.base.size()) throw ValidationError("point out of range");
    const std::uint32_t bit = 1U << x;
    Costalk c;
    c.point = x;
    c.minimal_open = f.open_index(f.base.minimal_open(x));
    c.count = f.card[static_cast<size_t>(c.minimal_open)];
    for (int u = 0; u < f.open_count(); ++u) {
        if (!(f.open_mask(u) & bit)) continue;
        c.opens.push_back(u);
        std::vector<int> row(static_cast<size_t>(c.count));
        for (int e = 0; e < c.count; ++e)
            row[static_cast<size_t>(e)] = f.extend(c.minimal_open, u, e);
        c.proj.push_back(std::move(row));
    }
    return c;
}

// Gluing test for one cover of the open with index u: the disjoint union of
// the cover's cosections, modulo the relation generated through every
// pairwise intersection, must map bijectively onto F(U).
inline bool cech_condition(const Precosheaf& f, int u, std::vector<int> cover) {
    const std::uint32_t target = f.open_mask(u);
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    std::uint32_t covered = 0;
    for (int m : cover) {
        if (m < 0 || m >= f.open_count()) throw ValidationError("cover member out of range");
        const std::uint32_t mm = f.open_mask(m);
        if ((mm & ~target) != 0) throw ValidationError("cover member is not contained in the open");
        covered |= mm;
    }
    if (covered != target) throw ValidationError("cover does not cover the open");

    const size_t k = cover.size();
    std::vector<int> offset(k + 1, 0);
    for (size_t i = 0; i < k; ++i)
        offset[i + 1] = offset[i] + f.card[static_cast<size_t>(cover[i])];
    detail::UnionFind dsu(offset[k]);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            const int w = f.open_index(f.open_mask(cover[i]) & f.open_mask(cover[j]));
            for (int e = 0; e < f.card[static_cast<size_t>(w)]; ++e)
                dsu.unite(offset[i] + f.extend(w, cover[i], e),
                          offset[j] + f.extend(w, cover[j], e));
        }
    std::vector<int> value(static_cast<size_t>(offset[k]), -1);
    int classes = 0;
    std::set<int> images;
    for (size_t i = 0; i < k; ++i)
        for (int e = 0; e < f.card[static_cast<size_t>(cover[i])]; ++e) {
            const int root = dsu.find(offset[i] + e);
            const int val = f.extend(cover[i], u, e);
            if (value[static_cast<size_t>(root)] < 0) {
                value[static_cast<size_t>(root)] = val;
                images.insert(val);
                ++classes;
            } else if (value[static_cast<size_t>(root)] != val) {
                throw Error("extensions disagree on a glued class");
            }
        }
    return classes == f.card[static_cast<size_t>(u)] &&
           static_cast<int>(images.size()) == f.card[static_cast<size_t>(u)];
}

// Pointwise form of the same condition: the cosections over U must be glued
// from the costalks along the specialisation order inside U. Every pairwise
// intersection of minimal opens is a union of minimal opens again, so each
// intersection-generated relation pushes down to germ relations; scanning
// opens from small to large therefore keeps this test and the minimal-open
// cover test in agreement up to and including the first failure.
inline bool pointwise_colimit_condition(const Precosheaf& f, int u) {
    const std::uint32_t mask = f.open_mask(u);
    const int n = f.base.size();
    std::vector<int> pts, umin;
    for (int x = 0; x < n; ++x)
        if (mask & (1U << x)) {
            pts.push_back(x);
            umin.push_back(f.open_index(f.base.minimal_open(x)));
        }
    const size_t k = pts.size();
    std::vector<int> offset(k + 1, 0);
    for (size_t i = 0; i < k; ++i)
        offset[i + 1] = offset[i] + f.card[static_cast<size_t>(umin[i])];
    detail::UnionFind dsu(offset[k]);
    for (size_t zi = 0; zi < k; ++zi)
        for (size_t wi = 0; wi < k; ++wi) {
            if (zi == wi) continue;
            // pts[zi] <= pts[wi] iff the latter lies in the former's minimal open
            if (!(f.base.minimal_open(pts[zi]) & (1U << pts[wi]))) continue;
            for (int g = 0; g < f.card[static_cast<size_t>(umin[wi])]; ++g)
                dsu.unite(offset[wi] + g, offset[zi] + f.extend(umin[wi], umin[zi], g));
        }
    std::vector<int> value(static_cast<size_t>(offset[k]), -1);
    int classes = 0;
    std::set<int> images;
    for (size_t i = 0; i < k; ++i)
        for (int e = 0; e < f.card[static_cast<size_t>(umin[i])]; ++e) {
            const int root = dsu.find(offset[i] + e);
            const int val = f.extend(umin[i], u, e);
            if (value[static_cast<size_t>(root)] < 0) {
                value[static_cast<size_t>(root)] = val;
                images.insert(val);
                ++classes;
            } else if (value[static_cast<size_t>(root)] != val) {
                throw Error("extensions disagree on a glued class");
            }
        }
    return classes == f.card[static_cast<size_t>(u)] &&
           static_cast<int>(images.size()) == f.card[static_cast<size_t>(u)];
}

struct CosheafReport {
    bool ok = true;
    int open_index = -1;     // first open where gluing fails
    std::vector<int> cover;  // the offending cover (open indices)
};

// A precosheaf is a cosheaf when every open is glued from every cover of it.
// It suffices to test the cover by minimal opens at each open, from small
// opens to large: once all smaller opens glue, any intersection relation of
// an arbitrary cover is generated by germ relations, so failures cannot hide
// in larger covers. The pointwise test runs alongside as a cross-check.
inline CosheafReport cosheaf_check(const Precosheaf& f) {
    validate_precosheaf(f);
    if (f.base.size() > 8) throw SizeLimitError("cosheaf check limited to bases with at most 8 points");
    const int n = f.base.size();
    for (int u = 0; u < f.open_count(); ++u) {
        const std::uint32_t mask = f.open_mask(u);
        if (mask == 0) continue;
        std::vector<int> cover;
        for (int x = 0; x < n; ++x)
            if (mask & (1U << x)) cover.push_back(f.open_index(f.base.minimal_open(x)));
        std::sort(cover.begin(), cover.end());
        cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
        const bool via_cover = cech_condition(f, u, cover);
        const bool via_points = pointwise_colimit_condition(f, u);
        if (via_cover != via_points)
            throw Error("internal: minimal-cover and pointwise gluing tests disagree");
        if (!via_cover) return CosheafReport{false, u, cover};
    }
    return CosheafReport{};
}

// Restriction to a subspace: over an open V of the subspace the cosections
// are the limit over the ambient opens containing V, which the smallest such
// open (the union of the minimal opens of V's points) realizes.
struct RestrictedPrecosheaf {
    Precosheaf cosheaf;
    std::vector<int> point_map;  // subspace point -> ambient point
};

inline RestrictedPrecosheaf restrict_precosheaf(const Precosheaf& f, std::uint32_t subset) {
    validate_precosheaf(f);
    if ((subset & ~f.base.full_mask()) != 0) throw ValidationError("subset mentions unknown points");
    std::vector<int> point_map;
    std::vector<int> sub_pos(static_cast<size_t>(f.base.size()), -1);
    std::vector<std::string> names;
    for (int x = 0; x < f.base.size(); ++x)
        if (subset & (1U << x)) {
            sub_pos[static_cast<size_t>(x)] = static_cast<int>(point_map.size());
            point_map.push_back(x);
            names.push_back(f.base.points()[static_cast<size_t>(x)]);
        }
    auto reindex = [&](std::uint32_t ambient) {
        std::uint32_t m = 0;
        for (int x = 0; x < f.base.size(); ++x)
            if ((ambient & subset) & (1U << x)) m |= 1U << sub_pos[static_cast<size_t>(x)];
        return m;
    };
    std::vector<std::uint32_t> sub_opens;
    for (std::uint32_t o : f.base.opens()) sub_opens.push_back(reindex(o));
    const FiniteSpace sub = FiniteSpace::from_opens(names, sub_opens);

    // Smallest ambient open containing each subspace open.
    std::vector<int> hull(sub.opens().size());
    for (size_t v = 0; v < sub.opens().size(); ++v) {
        std::uint32_t h = 0;
        for (size_t i = 0; i < point_map.size(); ++i)
            if (sub.opens()[v] & (1U << i)) h |= f.base.minimal_open(point_map[i]);
        hull[v] = f.open_index(h);
    }
    Precosheaf out;
    out.base = sub;
    out.card.resize(sub.opens().size());
    for (size_t v = 0; v < sub.opens().size(); ++v)
        out.card[v] = f.card[static_cast<size_t>(hull[v])];
    for (size_t v = 0; v < sub.opens().size(); ++v)
        for (size_t w = 0; w < sub.opens().size(); ++w) {
            if (v == w || sub.opens()[v] == sub.opens()[w] ||
                (sub.opens()[v] & ~sub.opens()[w]) != 0)
                continue;
            std::vector<int> fn(static_cast<size_t>(out.card[v]));
            for (int e = 0; e < out.card[v]; ++e)
                fn[static_cast<size_t>(e)] = f.extend(hull[v], hull[w], e);
            out.ext[{static_cast<int>(v), static_cast<int>(w)}] = std::move(fn);
        }
    validate_precosheaf(out);
    return RestrictedPrecosheaf{std::move(out), std::move(point_map)};
}

inline Precosheaf constant_precosheaf(const FiniteSpace& base) {
    Precosheaf f;
    f.base = base;
    f.card.resize(base.opens().size());
    for (size_t u = 0; u < base.opens().size(); ++u) f.card[u] = base.opens()[u] == 0 ? 0 : 1;
    for (size_t u = 0; u < base.opens().size(); ++u)
        for (size_t v = 0; v < base.opens().size(); ++v) {
            if (u == v || base.opens()[u] == base.opens()[v] ||
                (base.opens()[u] & ~base.opens()[v]) != 0)
                continue;
            f.ext[{static_cast<int>(u), static_cast<int>(v)}] =
                f.card[u] == 0 ? std::vector<int>{} : std::vector<int>{0};
        }
    validate_precosheaf(f);
    return f;
}

inline bool is_natural_map(const Precosheaf& e, const Precosheaf& f,
                           const std::vector<std::vector<int>>& phi) {
    if (e.base != f.base) throw ValidationError("natural maps need a common base");
    if (phi.size() != static_cast<size_t>(e.open_count())) return false;
    for (int u = 0; u < e.open_count(); ++u) {
        if (phi[static_cast<size_t>(u)].size() != static_cast<size_t>(e.card[static_cast<size_t>(u)]))
            return false;
        for (int t : phi[static_cast<size_t>(u)])
            if (t < 0 || t >= f.card[static_cast<size_t>(u)]) return false;
    }
    for (const auto& [key, fn] : e.ext) {
        const auto [u, v] = key;
        for (int el = 0; el < e.card[static_cast<size_t>(u)]; ++el)
            if (phi[static_cast<size_t>(v)][static_cast<size_t>(fn[static_cast<size_t>(el)])] !=
                f.extend(u, v, phi[static_cast<size_t>(u)][static_cast<size_t>(el)]))
                return false;
    }
    return true;
}

// Every map of precosheaves E -> F over a common base: per-open functions
// commuting with all extensions. Enumerated by filling opens from small to
// large; entries hit by an extension from a smaller open are forced, the rest
// range freely.
inline std::vector<std::vector<std::vector<int>>> natural_maps(const Precosheaf& e,
                                                               const Precosheaf& f,
                                                               std::size_t limit = 200000) {
    if (e.base != f.base) throw ValidationError("natural maps need a common base");
    validate_precosheaf(e);
    validate_precosheaf(f);
    const int m = e.open_count();
    std::vector<std::vector<std::vector<int>>> result;
    std::vector<std::vector<int>> phi(static_cast<size_t>(m));
    std::size_t nodes = 0;

    auto rec = [&](auto&& self, int u) -> void {
        if (++nodes > 5000000) throw SizeLimitError("natural transformation search exceeded its budget");
        if (u == m) {
            if (result.size() >= limit)
                throw SizeLimitError("natural transformation enumeration exceeded its limit");
            result.push_back(phi);
            return;
        }
        std::vector<int> val(static_cast<size_t>(e.card[static_cast<size_t>(u)]), -1);
        for (int v = 0; v < u; ++v) {
            if (e.open_mask(v) == e.open_mask(u) || (e.open_mask(v) & ~e.open_mask(u)) != 0)
                continue;
            for (int el = 0; el < e.card[static_cast<size_t>(v)]; ++el) {
                const int t = e.extend(v, u, el);
                const int want = f.extend(v, u, phi[static_cast<size_t>(v)][static_cast<size_t>(el)]);
                if (val[static_cast<size_t>(t)] < 0)
                    val[static_cast<size_t>(t)] = want;
                else if (val[static_cast<size_t>(t)] != want)
                    return;  // no extension of the partial assignment
            }
        }
        std::vector<int> free_slots;
        for (size_t i = 0; i < val.size(); ++i)
            if (val[i] < 0) free_slots.push_back(static_cast<int>(i));
        if (!free_slots.empty() && f.card[static_cast<size_t>(u)] == 0) return;
        std::vector<int> choice(free_slots.size(), 0);
        while (true) {
            for (size_t i = 0; i < free_slots.size(); ++i)
                val[static_cast<size_t>(free_slots[i])] = choice[i];
            phi[static_cast<size_t>(u)] = val;
            self(self, u + 1);
            size_t i = 0;
            for (; i < choice.size(); ++i) {
                if (++choice[i] < f.card[static_cast<size_t>(u)]) break;
                choice[i] = 0;
            }
            if (i == choice.size()) break;
        }
    };
    rec(rec, 0);
    return result;
}

}  // namespace stratcat
