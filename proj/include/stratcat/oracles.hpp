#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/braid.hpp"
#include "stratcat/garside.hpp"
#include "stratcat/group.hpp"
#include "stratcat/partition.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"

namespace stratcat {

// Independent cross-check for parabolic_member: cut out each block with
// delete_strands, re-embed the pieces side by side, and ask whether that
// blockwise reassembly is the same braid. Sound and complete because strand
// deletion is well defined on braids whose permutation preserves the kept
// set, and a braid lies in the blockwise subgroup iff deleting the other
// blocks changes nothing.
inline bool parabolic_member_oracle(const BraidWord& w, const std::vector<int>& widths) {
    std::vector<int> blk = detail::block_of_strand(widths, w.n);
    if (!detail::preserves_blocks(permutation_of(w), blk)) return false;
    BraidWord reassembled{w.n, {}};
    int offset = 0;
    for (int wdt : widths) {
        std::vector<int> keep(static_cast<size_t>(wdt));
        for (int t = 0; t < wdt; ++t) keep[static_cast<size_t>(t)] = offset + t;
        BraidWord piece = delete_strands(w, keep);
        for (int a : piece.letters)
            reassembled.letters.push_back(a > 0 ? a + offset : a - offset);
        offset += wdt;
    }
    return equal(w, reassembled);
}

// First homology of the order complex of the comparability component of
// `base`, via the classical edge-path presentation of its 2-skeleton: one
// generator per strict comparable pair, relators from a spanning tree and
// from every 3-chain x < y < z, then abelianized. Independent of the
// cover-path presentation pipeline it cross-checks.
inline Abelianization nerve_h1(const Poset& p, int base) {
    const int n = p.size();
    if (base < 0 || base >= n) throw ValidationError("base element out of range");
    std::vector<char> in_comp(static_cast<size_t>(n), 0);
    in_comp[static_cast<size_t>(base)] = 1;
    std::vector<int> stack{base};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (!in_comp[static_cast<size_t>(v)] && (p.leq(u, v) || p.leq(v, u))) {
                in_comp[static_cast<size_t>(v)] = 1;
                stack.push_back(v);
            }
    }
    std::vector<std::pair<int, int>> edges;  // strict pairs (x, y) with x < y
    std::map<std::pair<int, int>, int> eidx;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !in_comp[static_cast<size_t>(x)] || !p.leq(x, y) || p.leq(y, x))
                continue;
            eidx.emplace(std::make_pair(x, y), static_cast<int>(edges.size()));
            edges.emplace_back(x, y);
        }
    // spanning tree of the comparability graph restricted to the component
    std::vector<char> visited(static_cast<size_t>(n), 0);
    visited[static_cast<size_t>(base)] = 1;
    std::vector<int> queue{base};
    std::vector<char> in_tree(edges.size(), 0);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (size_t e = 0; e < edges.size(); ++e) {
            int v = -1;
            if (edges[e].first == u && !visited[static_cast<size_t>(edges[e].second)])
                v = edges[e].second;
            else if (edges[e].second == u && !visited[static_cast<size_t>(edges[e].first)])
                v = edges[e].first;
            if (v >= 0) {
                in_tree[e] = 1;
                visited[static_cast<size_t>(v)] = 1;
                queue.push_back(v);
            }
        }
    }
    std::vector<std::string> gens;
    for (auto [x, y] : edges)
        gens.push_back("h" + std::to_string(x) + "_" + std::to_string(y));
    std::vector<std::vector<int>> relators;
    for (size_t e = 0; e < edges.size(); ++e)
        if (in_tree[e]) relators.push_back({static_cast<int>(e) + 1});
    for (int x = 0; x < n; ++x) {
        if (!in_comp[static_cast<size_t>(x)]) continue;
        for (int y = 0; y < n; ++y) {
            if (y == x || !p.leq(x, y) || p.leq(y, x)) continue;
            for (int z = 0; z < n; ++z) {
                if (z == y || z == x || !p.leq(y, z) || p.leq(z, y)) continue;
                relators.push_back({eidx.at({x, y}) + 1, eidx.at({y, z}) + 1,
                                    -(eidx.at({x, z}) + 1)});
            }
        }
    }
    return abelianization(make_presentation(std::move(gens), std::move(relators)));
}

// Brute-force double cosets IS_P \ S_{P,Q} / S_Q, independent of the
// combinatorial assignment enumeration: materialize S_n, keep the
// permutations under which every canonical Q-block's preimage sits inside a
// single canonical P-block, and close orbits under the generator sets of
// IS_P (acting in front) and S_Q (acting behind). Returns one per-P-block
// size-multiset list per orbit, sorted; throws if any orbit fails to have a
// constant pattern, since that would refute the pattern bijection itself.
inline std::vector<std::vector<std::vector<int>>> double_cosets_oracle(
    const AbstractPartition& p, const AbstractPartition& q) {
    const int n = p.n();
    if (q.n() != n) throw ValidationError("partition size mismatch");
    if (n > 6) throw SizeLimitError("double-coset oracle materializes S_n; limited to n <= 6");

    std::vector<int> pblock(static_cast<size_t>(n)), qblock(static_cast<size_t>(n));
    {
        int pos = 0, b = 0;
        for (int part : p.parts) {
            for (int t = 0; t < part; ++t) pblock[static_cast<size_t>(pos++)] = b;
            ++b;
        }
        pos = 0, b = 0;
        for (int part : q.parts) {
            for (int t = 0; t < part; ++t) qblock[static_cast<size_t>(pos++)] = b;
            ++b;
        }
    }
    auto member = [&](const Permutation& s) {
        const Permutation inv = s.inverse();
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (qblock[static_cast<size_t>(x)] == qblock[static_cast<size_t>(y)] &&
                    pblock[static_cast<size_t>(inv(x))] != pblock[static_cast<size_t>(inv(y))])
                    return false;
        return true;
    };
    auto pattern = [&](const Permutation& s) {
        const Permutation inv = s.inverse();
        std::vector<std::vector<int>> per_block(p.parts.size());
        int pos = 0;
        for (size_t m = 0; m < q.parts.size(); ++m) {
            per_block[static_cast<size_t>(pblock[static_cast<size_t>(inv(pos))])].push_back(
                q.parts[m]);
            pos += q.parts[m];
        }
        for (auto& v : per_block) std::sort(v.begin(), v.end(), std::greater<int>());
        return per_block;
    };

    // Generators: adjacent transpositions inside P-blocks (front), adjacent
    // transpositions inside Q-blocks plus swaps of adjacent equal-size
    // Q-blocks (behind). Equal-size blocks are consecutive in canonical
    // order, so adjacent swaps generate all part-size symmetries.
    std::vector<Permutation> front_gens, back_gens;
    for (int c = 0; c + 1 < n; ++c) {
        if (pblock[static_cast<size_t>(c)] == pblock[static_cast<size_t>(c) + 1])
            front_gens.push_back(Permutation::transposition(n, c));
        if (qblock[static_cast<size_t>(c)] == qblock[static_cast<size_t>(c) + 1])
            back_gens.push_back(Permutation::transposition(n, c));
    }
    {
        int off = 0;
        for (size_t m = 0; m + 1 < q.parts.size(); ++m) {
            const int a = q.parts[m], b2 = q.parts[m + 1];
            if (a == b2) {
                std::vector<int> img(static_cast<size_t>(n));
                for (int x = 0; x < n; ++x) img[static_cast<size_t>(x)] = x;
                for (int t = 0; t < a; ++t) {
                    img[static_cast<size_t>(off + t)] = off + a + t;
                    img[static_cast<size_t>(off + a + t)] = off + t;
                }
                back_gens.push_back(Permutation::from_images(std::move(img)));
            }
            off += a;
        }
    }

    std::vector<Permutation> members;
    {
        std::vector<int> img(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
        do {
            Permutation s = Permutation::from_images(img);
            if (member(s)) members.push_back(s);
        } while (std::next_permutation(img.begin(), img.end()));
    }

    std::map<Permutation, char> visited;
    std::vector<std::vector<std::vector<int>>> out;
    for (const Permutation& start : members) {
        if (visited.count(start)) continue;
        std::vector<std::vector<int>> pat = pattern(start);
        std::vector<Permutation> frontier{start};
        visited[start] = 1;
        while (!frontier.empty()) {
            Permutation s = frontier.back();
            frontier.pop_back();
            if (pattern(s) != pat)
                throw Error("double-coset orbit has a non-constant refinement pattern");
            for (const Permutation& g : front_gens) {
                Permutation t = g.then(s);
                if (!member(t)) throw Error("front action left S_{P,Q}");
                if (!visited.count(t)) {
                    visited[t] = 1;
                    frontier.push_back(t);
                }
            }
            for (const Permutation& g : back_gens) {
                Permutation t = s.then(g);
                if (!member(t)) throw Error("back action left S_{P,Q}");
                if (!visited.count(t)) {
                    visited[t] = 1;
                    frontier.push_back(t);
                }
            }
        }
        out.push_back(std::move(pat));
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct AllCoversWitness {
    bool ok = true;
    int open_index = -1;
    std::vector<int> cover;
};

// Independent cross-check for cosheaf_check: test EVERY cover of every
// nonempty open, not just the minimal one, and compute each gluing quotient
// by breadth-first search over an explicit relation graph instead of
// union-find. A precosheaf passes iff for each cover the components of the
// disjoint union under the pairwise-intersection relations biject with the
// cosections via the extension maps.
inline AllCoversWitness all_covers_cosheaf_oracle(const Precosheaf& f) {
    validate_precosheaf(f);
    const int m = f.open_count();
    std::vector<int> nonempty;
    for (int u = 0; u < m; ++u)
        if (f.open_mask(u) != 0) nonempty.push_back(u);
    if (nonempty.size() > 14)
        throw SizeLimitError("all-covers oracle limited to 14 nonempty opens");

    auto index_of_mask = [&](std::uint32_t mask) {
        for (int u = 0; u < m; ++u)
            if (f.open_mask(u) == mask) return u;
        throw Error("intersection of opens is not open");
    };

    for (int u : nonempty) {
        const std::uint32_t target = f.open_mask(u);
        std::vector<int> inside;
        for (int v : nonempty)
            if ((f.open_mask(v) & ~target) == 0) inside.push_back(v);
        const size_t k = inside.size();
        for (std::uint32_t sel = 1; sel < (1U << k); ++sel) {
            std::vector<int> cover;
            std::uint32_t covered = 0;
            for (size_t i = 0; i < k; ++i)
                if (sel & (1U << i)) {
                    cover.push_back(inside[i]);
                    covered |= f.open_mask(inside[i]);
                }
            if (covered != target) continue;

            std::vector<int> offset(cover.size() + 1, 0);
            for (size_t i = 0; i < cover.size(); ++i)
                offset[i + 1] = offset[i] + f.card[static_cast<size_t>(cover[i])];
            std::vector<std::vector<int>> adj(static_cast<size_t>(offset[cover.size()]));
            for (size_t i = 0; i < cover.size(); ++i)
                for (size_t j = i + 1; j < cover.size(); ++j) {
                    const int w = index_of_mask(f.open_mask(cover[i]) & f.open_mask(cover[j]));
                    for (int t = 0; t < f.card[static_cast<size_t>(w)]; ++t) {
                        const int a = offset[i] + f.extend(w, cover[i], t);
                        const int b = offset[j] + f.extend(w, cover[j], t);
                        adj[static_cast<size_t>(a)].push_back(b);
                        adj[static_cast<size_t>(b)].push_back(a);
                    }
                }
            std::vector<int> comp(adj.size(), -1);
            int classes = 0;
            for (size_t start = 0; start < adj.size(); ++start) {
                if (comp[start] >= 0) continue;
                comp[start] = classes;
                std::vector<size_t> queue{start};
                while (!queue.empty()) {
                    const size_t cur = queue.back();
                    queue.pop_back();
                    for (int nb : adj[cur])
                        if (comp[static_cast<size_t>(nb)] < 0) {
                            comp[static_cast<size_t>(nb)] = classes;
                            queue.push_back(static_cast<size_t>(nb));
                        }
                }
                ++classes;
            }
            std::vector<int> value(static_cast<size_t>(classes), -1);
            std::vector<char> seen(static_cast<size_t>(f.card[static_cast<size_t>(u)]), 0);
            bool good = true;
            for (size_t i = 0; i < cover.size() && good; ++i)
                for (int e = 0; e < f.card[static_cast<size_t>(cover[i])]; ++e) {
                    const int cl = comp[static_cast<size_t>(offset[i] + e)];
                    const int val = f.extend(cover[i], u, e);
                    if (value[static_cast<size_t>(cl)] < 0) {
                        value[static_cast<size_t>(cl)] = val;
                        if (seen[static_cast<size_t>(val)]) {
                            good = false;
                            break;
                        }
                        seen[static_cast<size_t>(val)] = 1;
                    } else if (value[static_cast<size_t>(cl)] != val) {
                        throw Error("extensions disagree on a glued class");
                    }
                }
            if (good && classes != f.card[static_cast<size_t>(u)]) good = false;
            if (!good) return AllCoversWitness{false, u, cover};
        }
    }
    return AllCoversWitness{};
}

}  // namespace stratcat
