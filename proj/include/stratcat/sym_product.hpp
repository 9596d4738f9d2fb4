#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "stratcat/braid.hpp"
#include "stratcat/core.hpp"
#include "stratcat/garside.hpp"
#include "stratcat/partition.hpp"
#include "stratcat/permutation.hpp"

// Exit-path combinatorics of the stratified n-fold symmetric product of the
// plane. Strata are indexed by partitions; a morphism from the P-stratum to
// the Q-stratum (P <= Q in refinement order) is represented by a braid on n
// strands in which the n points leave the fat P-configuration grouped into
// |Q| bundles and arrive at the canonical Q-configuration. Throughout,
// positions 0..n-1 are grouped on the source side by the canonical concrete
// form of P and on the target side by the canonical concrete form of Q, and
// all composition is diagrammatic (first argument applied first).

namespace stratcat {

// sigma lies in S_{P,Q}: the preimage of each canonical Q-block is contained
// in a single canonical P-block. Geometrically: every cluster of the arrival
// configuration emanates from one point of the departure configuration.
inline bool in_SPQ(const Permutation& sigma, const AbstractPartition& p,
                   const AbstractPartition& q) {
    validate_partition(p);
    validate_partition(q);
    const int n = p.n();
    if (q.n() != n) throw ValidationError("partition size mismatch");
    if (sigma.size() != n) throw ValidationError("permutation size mismatch");
    const std::vector<int> pblock = block_of_positions(p);
    const std::vector<int> qoff = block_offsets(q);
    const Permutation inv = sigma.inverse();
    for (size_t m = 0; m < q.parts.size(); ++m) {
        const int base = pblock[static_cast<size_t>(inv(qoff[m]))];
        for (int t = 1; t < q.parts[m]; ++t)
            if (pblock[static_cast<size_t>(inv(qoff[m] + t))] != base) return false;
    }
    return true;
}

// For sigma in S_{P,Q}: the multiset of Q-part sizes carved out of each
// labeled P-block, i.e. the double-coset invariant of IS_P \ S_{P,Q} / S_Q.
inline std::vector<std::vector<int>> splits_of(const Permutation& sigma,
                                               const AbstractPartition& p,
                                               const AbstractPartition& q) {
    if (!in_SPQ(sigma, p, q))
        throw ValidationError("permutation does not respect the refinement");
    const std::vector<int> pblock = block_of_positions(p);
    const std::vector<int> qoff = block_offsets(q);
    const Permutation inv = sigma.inverse();
    std::vector<std::vector<int>> splits(p.parts.size());
    for (size_t m = 0; m < q.parts.size(); ++m) {
        const int c = pblock[static_cast<size_t>(inv(qoff[m]))];
        splits[static_cast<size_t>(c)].push_back(q.parts[m]);
    }
    for (auto& s : splits) std::sort(s.begin(), s.end(), std::greater<int>());
    return splits;
}

namespace detail {

inline std::vector<std::vector<int>> canonical_splits(const AbstractPartition& p,
                                                      const AbstractPartition& q,
                                                      std::vector<std::vector<int>> splits) {
    if (splits.size() != p.parts.size())
        throw ValidationError("split list must have one entry per P-block");
    std::vector<int> total;
    for (size_t c = 0; c < splits.size(); ++c) {
        auto& s = splits[c];
        std::sort(s.begin(), s.end(), std::greater<int>());
        int sum = 0;
        for (int v : s) {
            if (v < 1) throw ValidationError("split sizes must be positive");
            sum += v;
            total.push_back(v);
        }
        if (sum != p.parts[c])
            throw ValidationError("split does not sum to its P-block size");
    }
    std::sort(total.begin(), total.end(), std::greater<int>());
    if (total != q.parts)
        throw ValidationError("splits do not exhaust Q's parts");
    return splits;
}

// Start widths (bundle sizes left to right at departure) and the assignment
// of each bundle to its canonical arrival slot: bundle i goes to the earliest
// unused canonical Q-slot of the same size.
inline void rep_layout(const AbstractPartition& q,
                       const std::vector<std::vector<int>>& splits,
                       std::vector<int>& start_widths, std::vector<int>& slot_of_bundle) {
    start_widths.clear();
    for (const auto& s : splits) start_widths.insert(start_widths.end(), s.begin(), s.end());
    const int k = q.block_count();
    std::vector<char> used(static_cast<size_t>(k), 0);
    slot_of_bundle.clear();
    for (int w : start_widths) {
        int slot = -1;
        for (int m = 0; m < k; ++m) {
            if (!used[static_cast<size_t>(m)] && q.parts[static_cast<size_t>(m)] == w) {
                slot = m;
                break;
            }
        }
        used[static_cast<size_t>(slot)] = 1;
        slot_of_bundle.push_back(slot);
    }
}

}  // namespace detail

// The canonical representative permutation of the double coset given by the
// splits: bundles laid out P-block by P-block (sizes decreasing within each
// block) travel order-preservingly to the earliest matching canonical Q-slot.
inline Permutation pattern_rep_permutation(const AbstractPartition& p,
                                           const AbstractPartition& q,
                                           std::vector<std::vector<int>> splits) {
    splits = detail::canonical_splits(p, q, std::move(splits));
    std::vector<int> start_widths, slot_of_bundle;
    detail::rep_layout(q, splits, start_widths, slot_of_bundle);
    const std::vector<int> qoff = block_offsets(q);
    std::vector<int> img(static_cast<size_t>(q.n()));
    int pos = 0;
    for (size_t i = 0; i < start_widths.size(); ++i) {
        const int dst = qoff[static_cast<size_t>(slot_of_bundle[i])];
        for (int t = 0; t < start_widths[i]; ++t) img[static_cast<size_t>(pos + t)] = dst + t;
        pos += start_widths[i];
    }
    return Permutation::from_images(std::move(img));
}

// One connected component of the space of exit paths from the P-stratum to
// the Q-stratum: per labeled P-block, the multiset of Q-part sizes it splits
// into, together with a canonical representative of the double coset.
struct RefinementPattern {
    std::vector<std::vector<int>> splits;
    Permutation rep;

    bool operator==(const RefinementPattern& o) const { return splits == o.splits; }
    bool operator!=(const RefinementPattern& o) const { return splits != o.splits; }
    bool operator<(const RefinementPattern& o) const { return splits < o.splits; }
};

inline RefinementPattern make_pattern(const AbstractPartition& p, const AbstractPartition& q,
                                      std::vector<std::vector<int>> splits) {
    splits = detail::canonical_splits(p, q, std::move(splits));
    Permutation rep = pattern_rep_permutation(p, q, splits);
    return RefinementPattern{std::move(splits), std::move(rep)};
}

// All double cosets IS_P \ S_{P,Q} / S_Q, one per way of assigning to each
// labeled P-block a multiset of Q-part sizes, consistently exhausting Q.
// Deterministic order: block by block, multisets largest-part-first.
inline std::vector<RefinementPattern> double_cosets(const AbstractPartition& p,
                                                    const AbstractPartition& q) {
    if (!refines(p, q)) throw ValidationError("not a refinement");
    std::map<int, int, std::greater<int>> pool;
    for (int v : q.parts) ++pool[v];
    std::vector<std::vector<int>> splits(p.parts.size());
    std::vector<RefinementPattern> out;

    auto choose_block = [&](auto&& self, size_t c) -> void {
        if (c == p.parts.size()) {
            out.push_back(make_pattern(p, q, splits));
            return;
        }
        auto& cur = splits[c];
        auto fill = [&](auto&& fill_self, int remaining, int max_part) -> void {
            if (remaining == 0) {
                self(self, c + 1);
                return;
            }
            for (auto& [size, count] : pool) {
                if (size > std::min(remaining, max_part) || count == 0) continue;
                --count;
                cur.push_back(size);
                fill_self(fill_self, remaining - size, size);
                cur.pop_back();
                ++count;
            }
        };
        fill(fill, p.parts[c], p.parts[c]);
    };
    choose_block(choose_block, 0);
    return out;
}

// Membership in the exterior braid set EB_{P,Q} inside the braid group on
// |Q| strands: the block permutation moves every Q-part to a slot of the same
// size (order within parts fixed), and the induced permutation of {1..n}
// lies in S_{P,Q}.
inline bool in_EBPQ(const BraidWord& b, const AbstractPartition& p, const AbstractPartition& q) {
    if (!refines(p, q)) throw ValidationError("not a refinement");
    if (b.n != q.block_count()) throw ValidationError("strand-count mismatch");
    b.validate();
    const Permutation bar = permutation_of(b);
    const int k = q.block_count();
    for (int i = 0; i < k; ++i)
        if (q.parts[static_cast<size_t>(bar(i))] != q.parts[static_cast<size_t>(i)]) return false;
    const std::vector<int> qoff = block_offsets(q);
    std::vector<int> img(static_cast<size_t>(q.n()));
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < q.parts[static_cast<size_t>(i)]; ++t)
            img[static_cast<size_t>(qoff[static_cast<size_t>(i)] + t)] =
                qoff[static_cast<size_t>(bar(i))] + t;
    return in_SPQ(Permutation::from_images(std::move(img)), p, q);
}

// A morphism from the P-stratum to the Q-stratum: a braid on n strands whose
// underlying permutation carries the canonical P-grouping at departure to the
// canonical Q-grouping at arrival. The stored braid is one representative of
// its class modulo the internal braids of P (left multiplication); morphisms
// built by the constructors below are honest bundle cablings, and equality of
// classes is decided by hom_equal.
struct HomMorphism {
    AbstractPartition src;
    AbstractPartition dst;
    BraidWord braid;
};

inline void validate_hom(const HomMorphism& m) {
    validate_partition(m.src);
    validate_partition(m.dst);
    if (m.src.n() != m.dst.n()) throw ValidationError("partition size mismatch");
    if (m.braid.n != m.src.n()) throw ValidationError("braid strand count must equal n");
    m.braid.validate();
    if (!refines(m.src, m.dst)) throw ValidationError("not a refinement");
    if (!in_SPQ(permutation_of(m.braid), m.src, m.dst))
        throw ValidationError("braid permutation does not respect the refinement");
}

inline HomMorphism hom_from_braid(const AbstractPartition& p, const AbstractPartition& q,
                                  BraidWord braid) {
    HomMorphism m{p, q, std::move(braid)};
    validate_hom(m);
    return m;
}

// Cable an exterior block braid into B_n along the canonical Q-widths.
inline HomMorphism make_hom(const AbstractPartition& p, const AbstractPartition& q,
                            const BraidWord& block_braid) {
    if (!in_EBPQ(block_braid, p, q))
        throw ValidationError("block braid is not an exterior braid for (P,Q)");
    return hom_from_braid(p, q, cable(block_braid, q.parts));
}

inline HomMorphism identity_hom(const AbstractPartition& p) {
    validate_partition(p);
    return HomMorphism{p, p, BraidWord{p.n(), {}}};
}

// The canonical morphism realizing a refinement pattern: the positive
// permutation braid of the pattern's bundle-to-slot assignment, cabled at the
// departure widths.
inline HomMorphism pattern_representative(const AbstractPartition& p, const AbstractPartition& q,
                                          std::vector<std::vector<int>> splits) {
    splits = detail::canonical_splits(p, q, std::move(splits));
    std::vector<int> start_widths, slot_of_bundle;
    detail::rep_layout(q, splits, start_widths, slot_of_bundle);
    const Permutation bar = Permutation::from_images(slot_of_bundle);
    const BraidWord block{q.block_count(), positive_simple_word(bar)};
    return hom_from_braid(p, q, cable(block, start_widths));
}

inline HomMorphism pattern_representative(const AbstractPartition& p, const AbstractPartition& q,
                                          const RefinementPattern& pattern) {
    return pattern_representative(p, q, pattern.splits);
}

// Equality of morphism classes modulo internal braids of the source: the
// difference braid must lie in the standard parabolic subgroup on the
// canonical P-blocks. Decided by the Garside normal-form membership test.
inline bool braids_equal_mod_internal(const AbstractPartition& p, const BraidWord& a,
                                      const BraidWord& b) {
    return parabolic_member(braid_concat(a, braid_inverse(b)), p.parts);
}

inline bool hom_equal(const HomMorphism& m, const HomMorphism& mm) {
    if (m.src != mm.src || m.dst != mm.dst) throw ValidationError("mismatched endpoints");
    validate_hom(m);
    validate_hom(mm);
    return braids_equal_mod_internal(m.src, m.braid, mm.braid);
}

// Diagrammatic composition: do m, then mm. The composite of exit paths
// P -> Q -> R is an exit path P -> R; its class modulo internal braids of P
// is independent of the chosen representatives.
inline HomMorphism compose(const HomMorphism& m, const HomMorphism& mm) {
    validate_hom(m);
    validate_hom(mm);
    if (m.dst != mm.src) throw ValidationError("mismatched endpoints");
    HomMorphism r{m.src, mm.dst, braid_concat(m.braid, mm.braid)};
    validate_hom(r);
    return r;
}

// The connected component of a morphism: its double coset in
// IS_P \ S_{P,Q} / S_Q, read off the underlying permutation. Constant on
// hom_equal classes and surjective onto double_cosets.
inline RefinementPattern project_pi0(const HomMorphism& m) {
    validate_hom(m);
    auto splits = splits_of(permutation_of(m.braid), m.src, m.dst);
    Permutation rep = pattern_rep_permutation(m.src, m.dst, splits);
    return RefinementPattern{std::move(splits), std::move(rep)};
}

// The fundamental group of the P-stratum, presented as the exterior braid
// group EB_P inside the braid group on |P| strands: block braids whose
// underlying permutation only exchanges parts of equal size. The part-size
// permutations themselves form ES_P, generated by the adjacent equal-size
// transpositions listed here.
struct StratumGroup {
    AbstractPartition labels;
    std::vector<Permutation> es_generators;

    bool contains(const BraidWord& b) const {
        if (b.n != labels.block_count()) throw ValidationError("strand-count mismatch");
        b.validate();
        const Permutation bar = permutation_of(b);
        for (int i = 0; i < labels.block_count(); ++i)
            if (labels.parts[static_cast<size_t>(bar(i))] != labels.parts[static_cast<size_t>(i)])
                return false;
        return true;
    }
};

inline StratumGroup stratum_pi1(const AbstractPartition& p) {
    validate_partition(p);
    StratumGroup g{p, {}};
    for (int c = 0; c + 1 < p.block_count(); ++c)
        if (p.parts[static_cast<size_t>(c)] == p.parts[static_cast<size_t>(c) + 1])
            g.es_generators.push_back(Permutation::transposition(p.block_count(), c));
    return g;
}

struct StratumInfo {
    AbstractPartition partition;
    int codimension;
};

inline StratumInfo stratum_info(const AbstractPartition& p) {
    validate_partition(p);
    return StratumInfo{p, p.n() - p.block_count()};
}

// The finite branched cover of the stratified symmetric product: the fiber
// over the P-stratum is the coset space IS_P \ S_n, and a morphism m acts
// contravariantly by composing its underlying permutation in front of a
// coset representative. Cosets are named by canonical representatives whose
// images are sorted increasingly within each canonical P-block.
class BranchedCover {
public:
    explicit BranchedCover(int n) : n_(n) {
        if (n < 1) throw ValidationError("branched cover requires n >= 1");
        if (n > 6) throw SizeLimitError("branched cover materializes S_n; limited to n <= 6");
        std::vector<int> img(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
        do {
            perms_.push_back(Permutation::from_images(img));
        } while (std::next_permutation(img.begin(), img.end()));
    }

    int n() const { return n_; }

    // Canonical representative of the coset IS_P . sigma.
    Permutation coset_rep(const AbstractPartition& p, const Permutation& sigma) const {
        check_partition(p);
        if (sigma.size() != n_) throw ValidationError("permutation size mismatch");
        std::vector<int> img = sigma.images();
        int pos = 0;
        for (int part : p.parts) {
            std::sort(img.begin() + pos, img.begin() + pos + part);
            pos += part;
        }
        return Permutation::from_images(std::move(img));
    }

    // All cosets IS_P \ S_n as canonical representatives, lexicographic.
    std::vector<Permutation> fiber(const AbstractPartition& p) const {
        check_partition(p);
        std::set<Permutation> reps;
        for (const Permutation& s : perms_) reps.insert(coset_rep(p, s));
        return std::vector<Permutation>(reps.begin(), reps.end());
    }

    int coset_index(const AbstractPartition& p, const Permutation& sigma) const {
        const std::vector<Permutation> f = fiber(p);
        const Permutation rep = coset_rep(p, sigma);
        const auto it = std::lower_bound(f.begin(), f.end(), rep);
        if (it == f.end() || !(*it == rep)) throw Error("coset representative not found");
        return static_cast<int>(it - f.begin());
    }

    // The map fiber(dst) -> fiber(src) induced by a morphism: the coset of
    // tau pulls back to the coset of (rho then tau), rho the morphism's
    // underlying permutation. Factors through hom_equal classes.
    std::vector<int> morphism_map(const HomMorphism& m) const {
        validate_hom(m);
        if (m.src.n() != n_) throw ValidationError("partition size mismatch");
        const Permutation rho = permutation_of(m.braid);
        std::vector<int> out;
        for (const Permutation& tau : fiber(m.dst))
            out.push_back(coset_index(m.src, rho.then(tau)));
        return out;
    }

private:
    void check_partition(const AbstractPartition& p) const {
        validate_partition(p);
        if (p.n() != n_) throw ValidationError("partition size mismatch");
    }

    int n_;
    std::vector<Permutation> perms_;
};

inline BranchedCover branched_cover(int n) { return BranchedCover(n); }

}  // namespace stratcat
