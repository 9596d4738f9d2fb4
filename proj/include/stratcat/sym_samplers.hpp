#pragma once

// Deterministic random generators shared by the symmetric-product test
// suites: internal braid words, exterior block braids, and padded morphisms.

#include <vector>

#include "stratcat/braid.hpp"
#include "stratcat/garside.hpp"
#include "stratcat/partition.hpp"
#include "stratcat/rng.hpp"
#include "stratcat/sym_product.hpp"

namespace stratcat::samplers {

// Random word in the internal braid group of P inside B_n: every letter
// crosses two adjacent strands of the same canonical P-block.
inline BraidWord random_internal_word(const AbstractPartition& p, Rng& rng, int len) {
    const std::vector<int> blk = block_of_positions(p);
    std::vector<int> gens;
    for (int c = 1; c <= p.n() - 1; ++c)  // letter c crosses positions c-1, c
        if (blk[static_cast<size_t>(c) - 1] == blk[static_cast<size_t>(c)]) gens.push_back(c);
    BraidWord w{p.n(), {}};
    if (gens.empty()) return w;
    for (int i = 0; i < len; ++i) {
        const int g = gens[rng.below(gens.size())];
        w.letters.push_back(rng.flip() ? g : -g);
    }
    return w;
}

// Random element of the exterior braid group EB_Q on |Q| strands: a free
// word straightened to a pure braid, then a random label-preserving
// permutation braid appended.
inline BraidWord random_exterior_word(const AbstractPartition& q, Rng& rng, int len) {
    const int k = q.block_count();
    BraidWord w{k, {}};
    for (int i = 0; i < len && k > 1; ++i) {
        const int g = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k) - 1));
        w.letters.push_back(rng.flip() ? g : -g);
    }
    w = braid_concat(w, braid_inverse(BraidWord{k, positive_simple_word(permutation_of(w))}));
    Permutation rho(k);
    for (int iter = 0; iter < 2 * k; ++iter) {
        if (k < 2) break;
        const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) - 1));
        if (q.parts[static_cast<size_t>(c)] == q.parts[static_cast<size_t>(c) + 1] && rng.flip())
            rho = rho.then(Permutation::transposition(k, c));
    }
    return braid_concat(w, BraidWord{k, positive_simple_word(rho)});
}

// Random morphism P -> Q: a random pattern representative padded in front by
// an internal braid of P and behind by a cabled exterior braid of Q.
inline HomMorphism random_hom(const AbstractPartition& p, const AbstractPartition& q, Rng& rng,
                              int pad = 6) {
    const auto patterns = double_cosets(p, q);
    const HomMorphism rep =
        pattern_representative(p, q, patterns[rng.below(patterns.size())]);
    const BraidWord inner = random_internal_word(p, rng, pad);
    const BraidWord outer = cable(random_exterior_word(q, rng, pad), q.parts);
    return hom_from_braid(p, q, braid_concat(braid_concat(inner, rep.braid), outer));
}

// All ordered pairs (P, Q) of partitions of n with P <= Q in refinement
// order.
inline std::vector<std::pair<AbstractPartition, AbstractPartition>> refinement_pairs(int n) {
    std::vector<std::pair<AbstractPartition, AbstractPartition>> out;
    const auto parts = all_partitions(n);
    for (const auto& p : parts)
        for (const auto& q : parts)
            if (refines(p, q)) out.emplace_back(p, q);
    return out;
}

}  // namespace stratcat::samplers
