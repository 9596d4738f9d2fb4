#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"

namespace stratcat {

// Finite pre-order: opaque element ids plus a dense boolean relation matrix,
// reflexive-transitively closed on construction.
class Preorder {
public:
    Preorder() = default;

    // Closes the given relation reflexively and transitively.
    static Preorder close(std::vector<std::string> elements, std::vector<std::vector<char>> rel) {
        const size_t n = elements.size();
        if (rel.size() != n) throw ValidationError("relation size mismatch");
        for (const auto& row : rel)
            if (row.size() != n) throw ValidationError("relation size mismatch");
        std::set<std::string> ids(elements.begin(), elements.end());
        if (ids.size() != n) throw ValidationError("duplicate element ids");
        for (size_t x = 0; x < n; ++x) rel[x][x] = 1;
        for (size_t k = 0; k < n; ++k)
            for (size_t x = 0; x < n; ++x)
                if (rel[x][k])
                    for (size_t y = 0; y < n; ++y)
                        if (rel[k][y]) rel[x][y] = 1;
        Preorder p;
        p.elements_ = std::move(elements);
        p.leq_ = std::move(rel);
        return p;
    }

    static Preorder from_pairs(std::vector<std::string> elements,
                               const std::vector<std::pair<int, int>>& pairs) {
        const size_t n = elements.size();
        std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
        for (auto [x, y] : pairs) {
            if (x < 0 || y < 0 || x >= static_cast<int>(n) || y >= static_cast<int>(n))
                throw ValidationError("relation pair out of range");
            rel[static_cast<size_t>(x)][static_cast<size_t>(y)] = 1;
        }
        return close(std::move(elements), std::move(rel));
    }

    static Preorder discrete(std::vector<std::string> elements) {
        return from_pairs(std::move(elements), {});
    }

    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<std::string>& elements() const { return elements_; }
    const std::vector<std::vector<char>>& matrix() const { return leq_; }

    bool leq(int x, int y) const { return leq_[static_cast<size_t>(x)][static_cast<size_t>(y)] != 0; }
    bool equivalent(int x, int y) const { return leq(x, y) && leq(y, x); }

    bool is_antisymmetric() const {
        for (int x = 0; x < size(); ++x)
            for (int y = x + 1; y < size(); ++y)
                if (leq(x, y) && leq(y, x)) return false;
        return true;
    }

    bool operator==(const Preorder& o) const {
        return elements_ == o.elements_ && leq_ == o.leq_;
    }
    bool operator!=(const Preorder& o) const { return !(*this == o); }

private:
    std::vector<std::string> elements_;
    std::vector<std::vector<char>> leq_;
};

// A pre-order whose relation is antisymmetric.
class Poset : public Preorder {
public:
    Poset() = default;
    explicit Poset(Preorder p) : Preorder(std::move(p)) {
        if (!is_antisymmetric()) throw ValidationError("relation is not antisymmetric");
    }
};

struct PosetQuotient {
    Poset poset;
    std::vector<int> cls;  // element -> quotient class index
};

// Quotient by x ~ y iff leq both ways. Classes are indexed by first
// appearance and named after their smallest member.
inline PosetQuotient poset_quotient(const Preorder& p) {
    const int n = p.size();
    std::vector<int> cls(static_cast<size_t>(n), -1);
    std::vector<std::string> names;
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (cls[static_cast<size_t>(x)] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        names.push_back(p.elements()[static_cast<size_t>(x)]);
        for (int y = x; y < n; ++y)
            if (p.equivalent(x, y)) cls[static_cast<size_t>(y)] = id;
    }
    const size_t k = reps.size();
    std::vector<std::vector<char>> rel(k, std::vector<char>(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            rel[i][j] = p.leq(reps[i], reps[j]) ? 1 : 0;
    PosetQuotient q;
    q.poset = Poset(Preorder::close(std::move(names), std::move(rel)));
    q.cls = std::move(cls);
    return q;
}

// Covering pairs (x, y): x < y with nothing strictly between.
// Connected components of the comparability graph, listed by smallest
// member; each component lists its elements in increasing order.
inline std::vector<std::vector<int>> comparability_components(const Preorder& p) {
    const int n = p.size();
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int k = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        comp[static_cast<size_t>(s)] = k;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v)
                if (comp[static_cast<size_t>(v)] < 0 && (p.leq(u, v) || p.leq(v, u))) {
                    comp[static_cast<size_t>(v)] = k;
                    stack.push_back(v);
                }
        }
        ++k;
    }
    std::vector<std::vector<int>> out(static_cast<size_t>(k));
    for (int x = 0; x < n; ++x) out[static_cast<size_t>(comp[static_cast<size_t>(x)])].push_back(x);
    return out;
}

inline Preorder induced_subpreorder(const Preorder& p, const std::vector<int>& keep) {
    std::set<int> seen;
    std::vector<std::string> names;
    for (int x : keep) {
        if (x < 0 || x >= p.size()) throw ValidationError("kept element out of range");
        if (!seen.insert(x).second) throw ValidationError("kept element repeated");
        names.push_back(p.elements()[static_cast<size_t>(x)]);
    }
    const size_t m = keep.size();
    std::vector<std::vector<char>> rel(m, std::vector<char>(m, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) rel[i][j] = p.leq(keep[i], keep[j]) ? 1 : 0;
    return Preorder::close(std::move(names), std::move(rel));
}

inline Poset induced_subposet(const Poset& p, const std::vector<int>& keep) {
    return Poset(induced_subpreorder(p, keep));
}

inline std::vector<std::pair<int, int>> hasse_covers(const Poset& p) {
    std::vector<std::pair<int, int>> covers;
    const int n = p.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !p.leq(x, y)) continue;
            bool covered = true;
            for (int z = 0; z < n && covered; ++z)
                if (z != x && z != y && p.leq(x, z) && p.leq(z, y)) covered = false;
            if (covered) covers.emplace_back(x, y);
        }
    return covers;
}

// All posets on n elements in natural labeling (leq(x,y) only when x <= y as
// indices). Every isomorphism class appears: relabel along a linear
// extension.
inline std::vector<Poset> all_posets(int n) {
    if (n < 0 || n > 7) throw SizeLimitError("poset enumeration limited to n <= 7");
    std::vector<std::pair<int, int>> slots;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) slots.emplace_back(x, y);
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) names.push_back("p" + std::to_string(x));
    std::vector<Poset> out;
    for (std::uint64_t bits = 0; bits < (1ULL << slots.size()); ++bits) {
        std::vector<std::vector<char>> rel(static_cast<size_t>(n),
                                           std::vector<char>(static_cast<size_t>(n), 0));
        for (int x = 0; x < n; ++x) rel[static_cast<size_t>(x)][static_cast<size_t>(x)] = 1;
        for (size_t s = 0; s < slots.size(); ++s)
            if (bits & (1ULL << s))
                rel[static_cast<size_t>(slots[s].first)][static_cast<size_t>(slots[s].second)] = 1;
        bool transitive = true;
        for (int x = 0; x < n && transitive; ++x)
            for (int y = x + 1; y < n && transitive; ++y) {
                if (!rel[static_cast<size_t>(x)][static_cast<size_t>(y)]) continue;
                for (int z = y + 1; z < n; ++z)
                    if (rel[static_cast<size_t>(y)][static_cast<size_t>(z)] &&
                        !rel[static_cast<size_t>(x)][static_cast<size_t>(z)]) {
                        transitive = false;
                        break;
                    }
            }
        if (!transitive) continue;
        out.push_back(Poset(Preorder::close(names, std::move(rel))));
    }
    return out;
}

}  // namespace stratcat
