#pragma once

#include <string>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/finite_space.hpp"
#include "stratcat/preorder.hpp"

namespace stratcat {

// A finite space together with a pre-order on the same points. No
// compatibility between the two is assumed; that is what compatibility()
// classifies.
struct PoSpace {
    FiniteSpace space;
    Preorder order;

    PoSpace() = default;
    PoSpace(FiniteSpace s, Preorder o) : space(std::move(s)), order(std::move(o)) {
        if (space.points() != order.elements())
            throw ValidationError("po-space order must live on exactly the points of the space");
    }
};

inline bool is_monotone(const Preorder& p, const Preorder& q, const std::vector<int>& f) {
    if (f.size() != static_cast<size_t>(p.size())) throw ValidationError("map size mismatch");
    for (int v : f)
        if (v < 0 || v >= q.size()) throw ValidationError("map value out of range");
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            if (p.leq(x, y) && !q.leq(f[static_cast<size_t>(x)], f[static_cast<size_t>(y)]))
                return false;
    return true;
}

inline bool is_continuous(const FiniteSpace& x, const FiniteSpace& y, const std::vector<int>& f) {
    if (f.size() != static_cast<size_t>(x.size())) throw ValidationError("map size mismatch");
    for (int v : f)
        if (v < 0 || v >= y.size()) throw ValidationError("map value out of range");
    for (std::uint32_t open : y.opens()) {
        std::uint32_t pre = 0;
        for (size_t p = 0; p < f.size(); ++p)
            if (open & (1U << f[p])) pre |= 1U << p;
        if (!x.is_open(pre)) return false;
    }
    return true;
}

// Order-preserving map, validated on construction.
struct MonotoneMap {
    Preorder source;
    Preorder target;
    std::vector<int> f;

    MonotoneMap(Preorder src, Preorder dst, std::vector<int> fn)
        : source(std::move(src)), target(std::move(dst)), f(std::move(fn)) {
        if (!is_monotone(source, target, f)) throw ValidationError("map is not monotone");
    }
};

// Continuous map, validated on construction.
struct ContinuousMap {
    FiniteSpace source;
    FiniteSpace target;
    std::vector<int> f;

    ContinuousMap(FiniteSpace src, FiniteSpace dst, std::vector<int> fn)
        : source(std::move(src)), target(std::move(dst)), f(std::move(fn)) {
        if (!is_continuous(source, target, f)) throw ValidationError("map is not continuous");
    }
};

enum class Compatibility { None, C1Filtered, C2WellFiltered };

struct CompatibilityResult {
    Compatibility level = Compatibility::None;
    std::vector<int> stratum_of;  // filled when level is at least C1
    Poset strata;
};

// C2 (well-filtered): every up-set of the order is open. C1 (filtered):
// every down-set is closed. C2 implies C1; on finite spaces the two are in
// fact equivalent, since the complement of an up-set is the finite union of
// the down-sets of its points.
inline CompatibilityResult compatibility(const PoSpace& ps) {
    const int n = ps.order.size();
    bool ups_open = true, downs_closed = true;
    for (int x = 0; x < n; ++x) {
        std::uint32_t up = 0, down = 0;
        for (int y = 0; y < n; ++y) {
            if (ps.order.leq(x, y)) up |= 1U << y;
            if (ps.order.leq(y, x)) down |= 1U << y;
        }
        if (!ps.space.is_open(up)) ups_open = false;
        if (!ps.space.is_closed(down)) downs_closed = false;
    }
    CompatibilityResult r;
    r.level = ups_open ? Compatibility::C2WellFiltered
                       : (downs_closed ? Compatibility::C1Filtered : Compatibility::None);
    if (r.level != Compatibility::None) {
        PosetQuotient q = poset_quotient(ps.order);
        r.stratum_of = std::move(q.cls);
        r.strata = std::move(q.poset);
    }
    return r;
}

struct StratifiedMapResult {
    bool ok = false;
    std::string failure;    // one of: not-continuous, splits-stratum, g-not-increasing
    std::vector<int> g;     // induced map on strata, filled when ok
};

// A stratified map is continuous, sends each stratum into a single stratum,
// and induces an increasing map of strata posets.
inline StratifiedMapResult stratified_map_check(const std::vector<int>& f, const PoSpace& x,
                                                const PoSpace& y) {
    StratifiedMapResult r;
    if (!is_continuous(x.space, y.space, f)) {
        r.failure = "not-continuous";
        return r;
    }
    PosetQuotient qx = poset_quotient(x.order);
    PosetQuotient qy = poset_quotient(y.order);
    std::vector<int> g(static_cast<size_t>(qx.poset.size()), -1);
    for (int p = 0; p < x.order.size(); ++p) {
        int sx = qx.cls[static_cast<size_t>(p)];
        int sy = qy.cls[static_cast<size_t>(f[static_cast<size_t>(p)])];
        if (g[static_cast<size_t>(sx)] < 0) {
            g[static_cast<size_t>(sx)] = sy;
        } else if (g[static_cast<size_t>(sx)] != sy) {
            r.failure = "splits-stratum";
            return r;
        }
    }
    for (int i = 0; i < qx.poset.size(); ++i)
        for (int j = 0; j < qx.poset.size(); ++j)
            if (qx.poset.leq(i, j) &&
                !qy.poset.leq(g[static_cast<size_t>(i)], g[static_cast<size_t>(j)])) {
                r.failure = "g-not-increasing";
                return r;
            }
    r.ok = true;
    r.g = std::move(g);
    return r;
}

}  // namespace stratcat
