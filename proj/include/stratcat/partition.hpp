#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "stratcat/core.hpp"

namespace stratcat {

// Partition of n with parts sorted weakly decreasing, written (p1|p2|...|pk).
// Indexes the orbit-type strata of the n-fold symmetric product: the stratum
// of configurations whose multiplicity multiset is exactly P.
struct AbstractPartition {
    std::vector<int> parts;

    int n() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int block_count() const { return static_cast<int>(parts.size()); }

    bool operator==(const AbstractPartition& o) const { return parts == o.parts; }
    bool operator!=(const AbstractPartition& o) const { return parts != o.parts; }
    bool operator<(const AbstractPartition& o) const { return parts < o.parts; }
};

inline void validate_partition(const AbstractPartition& p) {
    if (p.parts.empty()) throw ValidationError("partition must have at least one part");
    for (size_t i = 0; i < p.parts.size(); ++i) {
        if (p.parts[i] < 1) throw ValidationError("partition parts must be positive");
        if (i > 0 && p.parts[i - 1] < p.parts[i])
            throw ValidationError("partition parts must be weakly decreasing");
    }
}

// Sorts the given parts into canonical (weakly decreasing) order.
inline AbstractPartition make_partition(std::vector<int> parts) {
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    AbstractPartition p{std::move(parts)};
    validate_partition(p);
    return p;
}

// All partitions of n, parts generated largest-first (descending lex order).
inline std::vector<AbstractPartition> all_partitions(int n) {
    if (n < 1) throw ValidationError("partitions require n >= 1");
    std::vector<AbstractPartition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(AbstractPartition{cur});
            return;
        }
        for (int part = std::min(max_part, remaining); part >= 1; --part) {
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Partition of {1..n} into explicit blocks.
struct ConcretePartition {
    std::vector<std::vector<int>> blocks;
};

inline void validate_concrete(const ConcretePartition& c, int n) {
    if (n < 1) throw ValidationError("concrete partition requires n >= 1");
    std::set<int> seen;
    for (const auto& b : c.blocks) {
        if (b.empty()) throw ValidationError("concrete partition blocks must be nonempty");
        for (int e : b) {
            if (e < 1 || e > n) throw ValidationError("concrete partition element out of range");
            if (!seen.insert(e).second) throw ValidationError("concrete partition blocks overlap");
        }
    }
    if (static_cast<int>(seen.size()) != n)
        throw ValidationError("concrete partition does not cover {1..n}");
}

// Canonical form: each block sorted ascending; blocks ordered by weakly
// decreasing size, ties broken by least element.
inline ConcretePartition canonicalize(ConcretePartition c) {
    for (auto& b : c.blocks) std::sort(b.begin(), b.end());
    std::sort(c.blocks.begin(), c.blocks.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return c;
}

// The canonical concrete form of P: consecutive intervals left to right, one
// per part in canonical order. Fixes the basepoint convention for every
// stratum, and makes the internal braid group of P a standard parabolic.
inline ConcretePartition canonical_blocks(const AbstractPartition& p) {
    validate_partition(p);
    ConcretePartition c;
    int next = 1;
    for (int part : p.parts) {
        std::vector<int> block(static_cast<size_t>(part));
        std::iota(block.begin(), block.end(), next);
        next += part;
        c.blocks.push_back(std::move(block));
    }
    return c;
}

inline AbstractPartition to_abstract(const ConcretePartition& c) {
    std::vector<int> parts;
    parts.reserve(c.blocks.size());
    for (const auto& b : c.blocks) parts.push_back(static_cast<int>(b.size()));
    return make_partition(std::move(parts));
}

// block_of[x] = index of the canonical block containing 0-based position x.
inline std::vector<int> block_of_positions(const AbstractPartition& p) {
    validate_partition(p);
    std::vector<int> out(static_cast<size_t>(p.n()));
    int pos = 0;
    for (int b = 0; b < p.block_count(); ++b)
        for (int t = 0; t < p.parts[static_cast<size_t>(b)]; ++t) out[static_cast<size_t>(pos++)] = b;
    return out;
}

// 0-based start offset of each canonical block.
inline std::vector<int> block_offsets(const AbstractPartition& p) {
    std::vector<int> out;
    out.reserve(p.parts.size());
    int pos = 0;
    for (int part : p.parts) {
        out.push_back(pos);
        pos += part;
    }
    return out;
}

// P <= Q in the refinement order: Q's parts can be grouped to reassemble P's
// parts. Decided by exact multiset-assignment backtracking: each Q-part is
// placed into some P-part's remaining capacity, largest Q-parts first.
inline bool refines(const AbstractPartition& p, const AbstractPartition& q) {
    validate_partition(p);
    validate_partition(q);
    if (p.n() != q.n()) throw ValidationError("partition size mismatch");
    std::vector<int> capacity = p.parts;
    // Slots with equal remaining capacity are interchangeable for existence,
    // so each capacity value is tried at most once per level.
    auto rec = [&](auto&& self, size_t qi) -> bool {
        if (qi == q.parts.size()) return true;
        int part = q.parts[qi];
        std::set<int> tried;
        for (size_t c = 0; c < capacity.size(); ++c) {
            if (capacity[c] < part) continue;
            if (!tried.insert(capacity[c]).second) continue;
            capacity[c] -= part;
            bool ok = self(self, qi + 1);
            capacity[c] += part;
            if (ok) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace stratcat
