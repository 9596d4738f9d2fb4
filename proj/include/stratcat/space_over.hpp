#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/finite_space.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"

namespace stratcat {

// A finite space with a continuous map down to a finite base.
struct SpaceOverX {
    FiniteSpace total;
    FiniteSpace base;
    std::vector<int> projection;  // total point -> base point
};

inline std::uint32_t preimage_mask(const SpaceOverX& y, std::uint32_t base_mask) {
    std::uint32_t m = 0;
    for (int t = 0; t < y.total.size(); ++t)
        if (base_mask & (1U << y.projection[static_cast<size_t>(t)])) m |= 1U << t;
    return m;
}

inline std::uint32_t fiber_mask(const SpaceOverX& y, int x) {
    return preimage_mask(y, 1U << x);
}

inline void validate_space_over(const SpaceOverX& y) {
    if (y.projection.size() != static_cast<size_t>(y.total.size()))
        throw ValidationError("projection table size mismatch");
    for (int x : y.projection)
        if (x < 0 || x >= y.base.size()) throw ValidationError("projection value out of range");
    for (std::uint32_t u : y.base.opens())
        if (!y.total.is_open(preimage_mask(y, u)))
            throw ValidationError("projection is not continuous");
}

inline SpaceOverX identity_over(const FiniteSpace& base) {
    std::vector<int> proj(static_cast<size_t>(base.size()));
    for (int x = 0; x < base.size(); ++x) proj[static_cast<size_t>(x)] = x;
    return SpaceOverX{base, base, std::move(proj)};
}

// Cosections over an open U = connected components of its preimage, extended
// along inclusions by "which bigger component swallowed me". Components are
// numbered by their smallest member, which keeps the tabulation canonical.
inline Precosheaf components_cosheaf(const SpaceOverX& y) {
    validate_space_over(y);
    const auto& opens = y.base.opens();
    std::vector<std::vector<std::uint32_t>> comps(opens.size());
    Precosheaf f;
    f.base = y.base;
    f.card.resize(opens.size());
    for (size_t u = 0; u < opens.size(); ++u) {
        comps[u] = connected_components(y.total, preimage_mask(y, opens[u]));
        f.card[u] = static_cast<int>(comps[u].size());
    }
    auto component_of = [&](size_t u, std::uint32_t member_bit) {
        for (size_t k = 0; k < comps[u].size(); ++k)
            if (comps[u][k] & member_bit) return static_cast<int>(k);
        throw Error("internal: point escaped its preimage components");
    };
    for (size_t u = 0; u < opens.size(); ++u)
        for (size_t v = 0; v < opens.size(); ++v) {
            if (u == v || opens[u] == opens[v] || (opens[u] & ~opens[v]) != 0) continue;
            std::vector<int> fn(comps[u].size());
            for (size_t k = 0; k < comps[u].size(); ++k)
                fn[k] = component_of(v, comps[u][k] & ~(comps[u][k] - 1));
            f.ext[{static_cast<int>(u), static_cast<int>(v)}] = std::move(fn);
        }
    validate_precosheaf(f);
    return f;
}

struct SpreadReport {
    bool spread = true;
    bool complete = true;
    bool uniquely_complete = true;
    bool locally_connected = true;
    std::uint32_t spread_witness_open = 0;   // a minimal open of the total space
    int completeness_witness_point = -1;     // base point with a fiber-free component
    int uniqueness_witness_point = -1;       // base point with a multi-hit component
};

// Spread: the components of open preimages form a basis of the total
// topology. Component candidates only shrink as the base open shrinks, so it
// suffices to compare each point's minimal open with its component inside the
// preimage of the minimal open below it. Completeness asks every such
// component to meet the fiber; unique completeness asks for exactly one hit.
inline SpreadReport classify_spread(const SpaceOverX& y) {
    validate_space_over(y);
    SpreadReport r;
    for (int t = 0; t < y.total.size() && r.locally_connected; ++t)
        if (!is_connected(y.total, y.total.minimal_open(t))) {
            r.locally_connected = false;
        }
    for (int t = 0; t < y.total.size(); ++t) {
        const std::uint32_t pre = preimage_mask(y, y.base.minimal_open(y.projection[static_cast<size_t>(t)]));
        const auto comps = connected_components(y.total, pre);
        std::uint32_t mine = 0;
        for (std::uint32_t c : comps)
            if (c & (1U << t)) mine = c;
        if (mine != y.total.minimal_open(t)) {
            r.spread = false;
            r.spread_witness_open = y.total.minimal_open(t);
            break;
        }
    }
    for (int x = 0; x < y.base.size(); ++x) {
        const std::uint32_t pre = preimage_mask(y, y.base.minimal_open(x));
        const std::uint32_t fib = fiber_mask(y, x);
        for (std::uint32_t c : connected_components(y.total, pre)) {
            const int hits = std::popcount(c & fib);
            if (hits == 0 && r.complete) {
                r.complete = false;
                r.completeness_witness_point = x;
            }
            if (hits != 1 && r.uniquely_complete) {
                r.uniquely_complete = false;
                r.uniqueness_witness_point = x;
            }
        }
    }
    return r;
}

// Continuous maps g : Y -> Z with proj_Z(g(t)) = proj_Y(t). Continuity for
// finite spaces is monotonicity in the specialisation order, checked pairwise
// as points are assigned.
inline std::vector<std::vector<int>> over_maps(const SpaceOverX& y, const SpaceOverX& z,
                                               std::size_t limit = 200000) {
    if (y.base != z.base) throw ValidationError("over-maps need a common base");
    validate_space_over(y);
    validate_space_over(z);
    const Preorder sy = specialisation(y.total);
    const Preorder sz = specialisation(z.total);
    std::vector<std::vector<int>> result;
    std::vector<int> g(static_cast<size_t>(y.total.size()), -1);
    std::size_t nodes = 0;

    auto rec = [&](auto&& self, int t) -> void {
        if (++nodes > 5000000) throw SizeLimitError("over-map search exceeded its budget");
        if (t == y.total.size()) {
            if (result.size() >= limit) throw SizeLimitError("over-map enumeration exceeded its limit");
            result.push_back(g);
            return;
        }
        for (int img = 0; img < z.total.size(); ++img) {
            if (z.projection[static_cast<size_t>(img)] != y.projection[static_cast<size_t>(t)]) continue;
            bool ok = true;
            for (int s = 0; s < t && ok; ++s) {
                if (sy.leq(s, t) && !sz.leq(g[static_cast<size_t>(s)], img)) ok = false;
                if (sy.leq(t, s) && !sz.leq(img, g[static_cast<size_t>(s)])) ok = false;
            }
            if (!ok) continue;
            g[static_cast<size_t>(t)] = img;
            self(self, t + 1);
            g[static_cast<size_t>(t)] = -1;
        }
    };
    rec(rec, 0);
    return result;
}

// Isomorphism over the base: a projection-commuting bijection that is an
// order isomorphism for the specialisation orders.
inline bool iso_over_base(const SpaceOverX& y, const SpaceOverX& z) {
    if (y.base != z.base) throw ValidationError("over-isomorphisms need a common base");
    validate_space_over(y);
    validate_space_over(z);
    if (y.total.size() != z.total.size()) return false;
    const Preorder sy = specialisation(y.total);
    const Preorder sz = specialisation(z.total);
    std::vector<int> g(static_cast<size_t>(y.total.size()), -1);
    std::vector<bool> used(static_cast<size_t>(z.total.size()), false);

    auto rec = [&](auto&& self, int t) -> bool {
        if (t == y.total.size()) return true;
        for (int img = 0; img < z.total.size(); ++img) {
            if (used[static_cast<size_t>(img)]) continue;
            if (z.projection[static_cast<size_t>(img)] != y.projection[static_cast<size_t>(t)]) continue;
            bool ok = true;
            for (int s = 0; s < t && ok; ++s) {
                if (sy.leq(s, t) != sz.leq(g[static_cast<size_t>(s)], img)) ok = false;
                if (sy.leq(t, s) != sz.leq(img, g[static_cast<size_t>(s)])) ok = false;
            }
            if (!ok) continue;
            used[static_cast<size_t>(img)] = true;
            g[static_cast<size_t>(t)] = img;
            if (self(self, t + 1)) return true;
            used[static_cast<size_t>(img)] = false;
            g[static_cast<size_t>(t)] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

// Number of chains t_0 <= ... <= t_k in the total space lifting the given
// relation-chain in the base and starting at the given total point.
inline std::uint64_t count_chain_lifts(const SpaceOverX& y, const std::vector<int>& chain,
                                       int start) {
    validate_space_over(y);
    if (chain.empty()) throw ValidationError("empty chain");
    const Preorder sb = specialisation(y.base);
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (!sb.leq(chain[i], chain[i + 1])) throw ValidationError("not a relation-chain in the base");
    if (start < 0 || start >= y.total.size() ||
        y.projection[static_cast<size_t>(start)] != chain.front())
        throw ValidationError("start point does not lie over the chain's first point");
    const Preorder st = specialisation(y.total);
    std::vector<std::uint64_t> cur(static_cast<size_t>(y.total.size()), 0);
    cur[static_cast<size_t>(start)] = 1;
    for (size_t i = 1; i < chain.size(); ++i) {
        std::vector<std::uint64_t> nxt(static_cast<size_t>(y.total.size()), 0);
        for (int t = 0; t < y.total.size(); ++t) {
            if (cur[static_cast<size_t>(t)] == 0) continue;
            for (int s = 0; s < y.total.size(); ++s)
                if (y.projection[static_cast<size_t>(s)] == chain[i] && st.leq(t, s))
                    nxt[static_cast<size_t>(s)] += cur[static_cast<size_t>(t)];
        }
        cur = std::move(nxt);
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : cur) total += c;
    return total;
}

}  // namespace stratcat
