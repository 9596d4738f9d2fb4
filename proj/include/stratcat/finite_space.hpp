#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/preorder.hpp"

namespace stratcat {

// Finite topological space with the full open family stored explicitly as
// point bitmasks, deduplicated and sorted by (size, value). At most 25 points
// so masks fit comfortably in 32 bits.
class FiniteSpace {
public:
    static constexpr int kMaxPoints = 25;

    FiniteSpace() = default;

    // Validates the axioms: empty and full present, family closed under
    // pairwise union and intersection.
    static FiniteSpace from_opens(std::vector<std::string> points, std::vector<std::uint32_t> opens) {
        FiniteSpace s = from_opens_unchecked(std::move(points), std::move(opens));
        const std::uint32_t full = s.full_mask();
        if (!s.is_open(0) || !s.is_open(full)) throw ValidationError("opens must contain empty and full sets");
        for (std::uint32_t a : s.opens_)
            for (std::uint32_t b : s.opens_) {
                if (!s.is_open(a | b)) throw ValidationError("opens not closed under union");
                if (!s.is_open(a & b)) throw ValidationError("opens not closed under intersection");
            }
        return s;
    }

    // Canonicalizes without checking the axioms; for families known closed by
    // construction.
    static FiniteSpace from_opens_unchecked(std::vector<std::string> points,
                                            std::vector<std::uint32_t> opens) {
        if (static_cast<int>(points.size()) > kMaxPoints)
            throw SizeLimitError("finite space limited to 25 points");
        FiniteSpace s;
        s.points_ = std::move(points);
        const std::uint32_t full = s.full_mask();
        for (std::uint32_t m : opens)
            if ((m & ~full) != 0) throw ValidationError("open set mentions unknown points");
        std::sort(opens.begin(), opens.end(), mask_less);
        opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
        s.opens_ = std::move(opens);
        s.minimal_.assign(s.points_.size(), full);
        for (size_t x = 0; x < s.points_.size(); ++x)
            for (std::uint32_t m : s.opens_)
                if (m & (1U << x)) s.minimal_[x] &= m;
        return s;
    }

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<std::uint32_t>& opens() const { return opens_; }
    std::uint32_t full_mask() const {
        return points_.empty() ? 0U : (points_.size() >= 32 ? ~0U : (1U << points_.size()) - 1U);
    }

    bool is_open(std::uint32_t mask) const {
        return std::binary_search(opens_.begin(), opens_.end(), mask, mask_less);
    }
    bool is_closed(std::uint32_t mask) const { return is_open(full_mask() & ~mask); }

    // Smallest open set containing x; always open in a finite space.
    std::uint32_t minimal_open(int x) const { return minimal_[static_cast<size_t>(x)]; }

    bool operator==(const FiniteSpace& o) const {
        return points_ == o.points_ && opens_ == o.opens_;
    }
    bool operator!=(const FiniteSpace& o) const { return !(*this == o); }

private:
    static bool mask_less(std::uint32_t a, std::uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    }

    std::vector<std::string> points_;
    std::vector<std::uint32_t> opens_;
    std::vector<std::uint32_t> minimal_;
};

// x <= y iff every open containing x contains y, i.e. y lies in the minimal
// open of x.
inline Preorder specialisation(const FiniteSpace& s) {
    const int n = s.size();
    std::vector<std::vector<char>> rel(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (s.minimal_open(x) & (1U << y)) rel[static_cast<size_t>(x)][static_cast<size_t>(y)] = 1;
    return Preorder::close(s.points(), std::move(rel));
}

// All up-closed subsets form the opens.
inline FiniteSpace alexandrov(const Preorder& p) {
    const int n = p.size();
    if (n > 16) throw SizeLimitError("alexandrov enumeration limited to 16 elements");
    std::vector<std::uint32_t> up(static_cast<size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (p.leq(x, y)) up[static_cast<size_t>(x)] |= 1U << y;
    std::vector<std::uint32_t> opens;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        bool upclosed = true;
        for (int x = 0; x < n && upclosed; ++x)
            if ((m & (1U << x)) && (up[static_cast<size_t>(x)] & ~m) != 0) upclosed = false;
        if (upclosed) opens.push_back(m);
    }
    return FiniteSpace::from_opens_unchecked(p.elements(), std::move(opens));
}

// Topology whose closed sets are generated by the down-sets D_p under union
// and intersection. For finite carriers this coincides with the Alexandrov
// topology; we still build it generatively.
inline FiniteSpace downward_space(const Preorder& p) {
    const int n = p.size();
    if (n > 12) throw SizeLimitError("downward space enumeration limited to 12 elements");
    const std::uint32_t full = n == 0 ? 0U : (1U << n) - 1U;
    std::vector<std::uint32_t> closed;  // kept sorted
    auto add = [&closed](std::uint32_t m) {
        auto it = std::lower_bound(closed.begin(), closed.end(), m);
        if (it != closed.end() && *it == m) return false;
        closed.insert(it, m);
        return true;
    };
    add(0);
    add(full);
    for (int x = 0; x < n; ++x) {
        std::uint32_t d = 0;
        for (int y = 0; y < n; ++y)
            if (p.leq(y, x)) d |= 1U << y;
        add(d);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<std::uint32_t> snapshot = closed;
        for (std::uint32_t a : snapshot)
            for (std::uint32_t b : snapshot) {
                if (add(a | b)) grew = true;
                if (add(a & b)) grew = true;
            }
    }
    std::vector<std::uint32_t> opens;
    opens.reserve(closed.size());
    for (std::uint32_t c : closed) opens.push_back(full & ~c);
    return FiniteSpace::from_opens_unchecked(p.elements(), std::move(opens));
}

// Connected components of a subspace, via comparability in the specialisation
// pre-order restricted to the subset. Ordered by smallest member.
inline std::vector<std::uint32_t> connected_components(const FiniteSpace& s, std::uint32_t subset) {
    const int n = s.size();
    std::vector<int> parent(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) parent[static_cast<size_t>(x)] = x;
    auto find = [&parent](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (int x = 0; x < n; ++x) {
        if (!(subset & (1U << x))) continue;
        std::uint32_t reach = s.minimal_open(x) & subset;
        for (int y = 0; y < n; ++y)
            if (reach & (1U << y)) parent[static_cast<size_t>(find(x))] = find(y);
    }
    std::vector<std::uint32_t> comp;
    std::vector<int> index(static_cast<size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        if (!(subset & (1U << x))) continue;
        int r = find(x);
        if (index[static_cast<size_t>(r)] < 0) {
            index[static_cast<size_t>(r)] = static_cast<int>(comp.size());
            comp.push_back(0);
        }
        comp[static_cast<size_t>(index[static_cast<size_t>(r)])] |= 1U << x;
    }
    return comp;
}

inline bool is_connected(const FiniteSpace& s, std::uint32_t subset) {
    return connected_components(s, subset).size() <= 1;
}

}  // namespace stratcat
