#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "stratcat/oracles.hpp"
#include "stratcat/sym_product.hpp"
#include "stratcat/sym_samplers.hpp"

using namespace stratcat;
using stratcat::samplers::random_exterior_word;
using stratcat::samplers::random_hom;
using stratcat::samplers::random_internal_word;
using stratcat::samplers::refinement_pairs;

namespace {

AbstractPartition P(std::vector<int> parts) { return make_partition(std::move(parts)); }

BraidWord bw(int n, std::vector<int> letters) { return BraidWord{n, std::move(letters)}; }

long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

TEST_CASE("abstract partitions validate and canonicalize") {
    CHECK(P({2, 3}).parts == std::vector<int>{3, 2});
    CHECK(P({1, 1, 4}).parts == std::vector<int>{4, 1, 1});
    CHECK(P({5}).n() == 5);
    CHECK(P({3, 2}).block_count() == 2);
    CHECK_THROWS_AS(make_partition({}), ValidationError);
    CHECK_THROWS_AS(make_partition({2, 0}), ValidationError);
    CHECK_THROWS_AS(make_partition({3, -1}), ValidationError);
    CHECK_THROWS_AS(validate_partition(AbstractPartition{{1, 2}}), ValidationError);

    CHECK(all_partitions(4).size() == 5);
    CHECK(all_partitions(5).size() == 7);
    CHECK(all_partitions(6).size() == 11);
    CHECK(all_partitions(1) == std::vector<AbstractPartition>{P({1})});
    // Descending lex order, largest part first.
    CHECK(all_partitions(3) ==
          std::vector<AbstractPartition>{P({3}), P({2, 1}), P({1, 1, 1})});
}

TEST_CASE("concrete partitions canonicalize to interval form") {
    const ConcretePartition c = canonical_blocks(P({3, 2}));
    REQUIRE(c.blocks.size() == 2);
    CHECK(c.blocks[0] == std::vector<int>{1, 2, 3});
    CHECK(c.blocks[1] == std::vector<int>{4, 5});
    CHECK(to_abstract(c) == P({3, 2}));

    ConcretePartition raw{{{4, 5}, {3, 1}, {2}}};
    validate_concrete(raw, 5);
    const ConcretePartition canon = canonicalize(raw);
    CHECK(canon.blocks == std::vector<std::vector<int>>{{1, 3}, {4, 5}, {2}});

    CHECK_THROWS_AS(validate_concrete(ConcretePartition{{{1, 2}, {2, 3}}}, 3), ValidationError);
    CHECK_THROWS_AS(validate_concrete(ConcretePartition{{{1, 2}}}, 3), ValidationError);
    CHECK_THROWS_AS(validate_concrete(ConcretePartition{{{1, 4}}}, 3), ValidationError);

    CHECK(block_of_positions(P({3, 2})) == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(block_offsets(P({2, 1, 1, 1})) == std::vector<int>{0, 2, 3, 4});
}

TEST_CASE("refinement order on partitions") {
    CHECK(refines(P({3, 2}), P({2, 1, 1, 1})));
    CHECK_FALSE(refines(P({2, 2}), P({3, 1})));
    CHECK(refines(P({3, 2}), P({2, 2, 1})));
    CHECK(refines(P({3, 3}), P({2, 2, 1, 1})));
    CHECK_FALSE(refines(P({4, 2}), P({3, 3})));
    for (const auto& q : all_partitions(5)) {
        CHECK(refines(P({5}), q));
        CHECK(refines(q, P({1, 1, 1, 1, 1})));
        CHECK(refines(q, q));
    }
    CHECK_THROWS_AS(refines(P({2}), P({3})), ValidationError);
}

TEST_CASE("membership in S_{P,Q} is the set-level exit condition") {
    const auto p = P({3, 2});
    const auto q = P({2, 1, 1, 1});
    CHECK(in_SPQ(Permutation(5), p, q));
    // The arrival 2-cluster must emanate from one block: send it to {4,5}.
    CHECK(in_SPQ(Permutation::from_images({2, 3, 4, 0, 1}), p, q));
    // Swapping positions 2 and 3 pulls the singleton clusters apart but keeps
    // every cluster preimage inside a block.
    CHECK(in_SPQ(Permutation::from_images({0, 1, 3, 2, 4}), p, q));
    // A 2-cluster straddling both blocks is not an exit path.
    CHECK(in_SPQ(Permutation::from_images({0, 2, 4, 1, 3}), p, q) ==
          false);  // preimage of {0,1} is {0,3}

    // Identity fails exactly when canonical Q misaligns with canonical P.
    CHECK_FALSE(in_SPQ(Permutation(5), P({3, 2}), P({2, 2, 1})));
    CHECK(in_SPQ(Permutation::from_images({0, 1, 4, 2, 3}), P({3, 2}), P({2, 2, 1})));

    CHECK_THROWS_AS(in_SPQ(Permutation(4), p, q), ValidationError);
    CHECK_THROWS_AS(in_SPQ(Permutation(5), P({3, 2}), P({2, 2})), ValidationError);
}

TEST_CASE("double cosets enumerate refinement patterns deterministically") {
    const auto p = P({3, 2});
    const auto q = P({2, 1, 1, 1});
    const auto cosets = double_cosets(p, q);
    REQUIRE(cosets.size() == 2);
    CHECK(cosets[0].splits == std::vector<std::vector<int>>{{2, 1}, {1, 1}});
    CHECK(cosets[1].splits == std::vector<std::vector<int>>{{1, 1, 1}, {2}});
    CHECK(cosets[0].rep == Permutation(5));
    CHECK(cosets[1].rep == Permutation::from_images({2, 3, 4, 0, 1}));

    const auto even = double_cosets(P({2, 2}), P({2, 1, 1}));
    REQUIRE(even.size() == 2);
    CHECK(even[0].splits == std::vector<std::vector<int>>{{2}, {1, 1}});
    CHECK(even[1].splits == std::vector<std::vector<int>>{{1, 1}, {2}});

    // Identity refinements have exactly the identity pattern.
    for (const auto& r : all_partitions(5)) {
        const auto own = double_cosets(r, r);
        REQUIRE(own.size() == 1);
        for (int c = 0; c < r.block_count(); ++c)
            CHECK(own[0].splits[static_cast<size_t>(c)] ==
                  std::vector<int>{r.parts[static_cast<size_t>(c)]});
        CHECK(own[0].rep == Permutation(r.n()));
    }

    CHECK(double_cosets(P({2, 2}), P({1, 1, 1, 1})).size() == 1);
    CHECK(double_cosets(P({3, 2}), P({2, 2, 1})).size() == 1);
    CHECK(double_cosets(P({3, 3}), P({2, 2, 1, 1})).size() == 1);
    CHECK(double_cosets(P({2, 2, 2}), P({2, 2, 1, 1})).size() == 3);
    CHECK_THROWS_AS(double_cosets(P({2, 2}), P({3, 1})), ValidationError);

    // Every emitted representative lies in S_{P,Q} and projects back onto its
    // own splits.
    for (const auto& pat : cosets) {
        REQUIRE(in_SPQ(pat.rep, p, q));
        CHECK(splits_of(pat.rep, p, q) == pat.splits);
    }
}

TEST_CASE("double cosets agree with the brute-force permutation oracle") {
    for (int n = 2; n <= 5; ++n) {
        for (const auto& [p, q] : refinement_pairs(n)) {
            const auto fast = double_cosets(p, q);
            std::vector<std::vector<std::vector<int>>> fast_splits;
            for (const auto& pat : fast) fast_splits.push_back(pat.splits);
            std::sort(fast_splits.begin(), fast_splits.end());
            CHECK(fast_splits == double_cosets_oracle(p, q));
        }
    }
    // Spot checks at n = 6, including the misalignable shapes.
    for (const auto& [p, q] :
         {std::pair{P({3, 3}), P({2, 2, 1, 1})}, std::pair{P({2, 2, 2}), P({2, 2, 1, 1})},
          std::pair{P({4, 2}), P({2, 2, 1, 1})}, std::pair{P({3, 3}), P({1, 1, 1, 1, 1, 1})}}) {
        const auto fast = double_cosets(p, q);
        std::vector<std::vector<std::vector<int>>> fast_splits;
        for (const auto& pat : fast) fast_splits.push_back(pat.splits);
        std::sort(fast_splits.begin(), fast_splits.end());
        CHECK(fast_splits == double_cosets_oracle(p, q));
    }
}

TEST_CASE("exterior block braid membership") {
    // Singleton labels: every block permutation is size-preserving and the
    // condition over singleton clusters is vacuous.
    CHECK(in_EBPQ(bw(2, {1}), P({1, 1}), P({1, 1})));
    // A crossing that exchanges a 2-part with a 1-part changes the label
    // sequence.
    CHECK_FALSE(in_EBPQ(bw(2, {1}), P({3}), P({2, 1})));
    CHECK(in_EBPQ(bw(2, {1, 1}), P({3}), P({2, 1})));
    CHECK(in_EBPQ(bw(2, {1, 1}), P({2, 1}), P({2, 1})));
    // Identity block braid: true exactly when canonical Q sits inside
    // canonical P blockwise.
    CHECK(in_EBPQ(bw(4, {}), P({3, 2}), P({2, 1, 1, 1})));
    CHECK_FALSE(in_EBPQ(bw(3, {}), P({3, 2}), P({2, 2, 1})));
    // Swapping the two singleton parts of (2|1|1|1) stays exterior.
    CHECK(in_EBPQ(bw(4, {3}), P({3, 2}), P({2, 1, 1, 1})));
    // Moving the 2-part of (2|1|1|1) across a singleton breaks sizes.
    CHECK_FALSE(in_EBPQ(bw(4, {1}), P({3, 2}), P({2, 1, 1, 1})));

    CHECK_THROWS_AS(in_EBPQ(bw(3, {}), P({3}), P({2, 1})), ValidationError);
    CHECK_THROWS_AS(in_EBPQ(bw(2, {}), P({2, 2}), P({3, 1})), ValidationError);

    // Endomorphism case: membership coincides with the stratum group test.
    Rng rng(2026);
    const auto q = P({2, 1});
    const StratumGroup g = stratum_pi1(q);
    for (int trial = 0; trial < 50; ++trial) {
        BraidWord w{2, {}};
        for (int i = 0; i < 6; ++i) w.letters.push_back(rng.flip() ? 1 : -1);
        CHECK(in_EBPQ(w, q, q) == g.contains(w));
    }
}

TEST_CASE("morphism construction and validation") {
    const auto p = P({3, 2});
    const auto q = P({2, 1, 1, 1});

    const HomMorphism id5 = identity_hom(p);
    CHECK(id5.braid.letters.empty());
    CHECK(id5.src == p);
    CHECK(id5.dst == p);

    const HomMorphism cabled = make_hom(p, q, bw(4, {3}));
    CHECK(cabled.braid.n == 5);
    CHECK(cabled.braid.letters == std::vector<int>{4});
    CHECK_THROWS_AS(make_hom(p, q, bw(4, {1})), ValidationError);

    // Raw-braid validation: the permutation must respect the refinement.
    CHECK_THROWS_AS(hom_from_braid(P({2, 1}), P({2, 1}), bw(3, {2})), ValidationError);
    CHECK_THROWS_AS(hom_from_braid(p, q, bw(4, {})), ValidationError);
    CHECK_THROWS_AS(hom_from_braid(P({2, 2}), P({3, 1}), bw(4, {})), ValidationError);
    CHECK_THROWS_AS(hom_from_braid(P({2, 1}), P({2, 1}), bw(3, {7})), ValidationError);

    // The pattern representative braid realizes exactly the canonical
    // double-coset permutation.
    for (int n = 2; n <= 5; ++n) {
        for (const auto& [pp, qq] : refinement_pairs(n)) {
            for (const auto& pat : double_cosets(pp, qq)) {
                const HomMorphism m = pattern_representative(pp, qq, pat);
                CHECK(permutation_of(m.braid) == pat.rep);
            }
        }
    }
    // Frozen instance: pattern {3 -> {2,1}, 2 -> {2}} for (3|2) <= (2|2|1)
    // cables the block crossing sigma_2 at widths (2,1,2) into sigma_3 sigma_4.
    const HomMorphism mis =
        pattern_representative(P({3, 2}), P({2, 2, 1}), {{2, 1}, {2}});
    CHECK(mis.braid.letters == std::vector<int>{3, 4});
    CHECK(permutation_of(mis.braid) == Permutation::from_images({0, 1, 4, 2, 3}));
}

TEST_CASE("hom_equal decides the internal-braid coset test") {
    // Top stratum endpoints: equality is braid equality.
    const auto fine = P({1, 1});
    const HomMorphism a = hom_from_braid(fine, fine, bw(2, {1, 1}));
    const HomMorphism b = hom_from_braid(fine, fine, bw(2, {1, 1, 1, 1}));
    CHECK_FALSE(hom_equal(a, b));
    CHECK(hom_equal(a, a));

    // Out of the bottom stratum of n = 2 every morphism class collapses.
    const HomMorphism c = hom_from_braid(P({2}), fine, bw(2, {1}));
    const HomMorphism d = hom_from_braid(P({2}), fine, bw(2, {-1, -1, -1}));
    CHECK(hom_equal(c, d));

    CHECK_THROWS_AS(hom_equal(a, c), ValidationError);

    // Internal twists of the source are invisible.
    const auto p = P({3, 2});
    const auto q = P({2, 1, 1, 1});
    const HomMorphism rep = pattern_representative(p, q, {{2, 1}, {1, 1}});
    const HomMorphism twisted =
        hom_from_braid(p, q, braid_concat(bw(5, {1, 2, -1, 4}), rep.braid));
    CHECK(hom_equal(rep, twisted));
    CHECK(project_pi0(twisted) == project_pi0(rep));

    // A crossing between the two source blocks is visible even though it
    // preserves the refinement pattern.
    const HomMorphism crossed = hom_from_braid(p, q, braid_concat(bw(5, {3}), rep.braid));
    CHECK(project_pi0(crossed) == project_pi0(rep));
    CHECK_FALSE(hom_equal(rep, crossed));

    // Appending a cabled exterior loop that links bundles in different
    // source blocks changes the class but not the pattern.
    const HomMorphism looped =
        hom_from_braid(p, q, braid_concat(rep.braid, cable(bw(4, {2, 2}), q.parts)));
    CHECK(project_pi0(looped) == project_pi0(rep));
    CHECK_FALSE(hom_equal(rep, looped));

    // Whereas a loop whose support stays inside one source block is internal
    // and therefore invisible.
    const HomMorphism inner_loop =
        hom_from_braid(p, q, braid_concat(rep.braid, cable(bw(4, {3, 3}), q.parts)));
    CHECK(hom_equal(rep, inner_loop));
}

TEST_CASE("hom_equal is an equivalence relation on sampled morphisms") {
    Rng rng(71);
    for (int n = 2; n <= 5; ++n) {
        const auto pairs = refinement_pairs(n);
        for (int trial = 0; trial < 6; ++trial) {
            const auto& [p, q] = pairs[rng.below(pairs.size())];
            const HomMorphism x = random_hom(p, q, rng);
            const HomMorphism y = random_hom(p, q, rng);
            const HomMorphism z = random_hom(p, q, rng);
            CHECK(hom_equal(x, x));
            CHECK(hom_equal(x, y) == hom_equal(y, x));
            if (hom_equal(x, y) && hom_equal(y, z)) CHECK(hom_equal(x, z));
            // The component projection is constant on equal classes.
            if (hom_equal(x, y)) CHECK(project_pi0(x) == project_pi0(y));
            if (project_pi0(x) != project_pi0(y)) CHECK_FALSE(hom_equal(x, y));
        }
    }
}

TEST_CASE("composition of exit paths") {
    const auto p = P({3, 2});
    const auto q = P({2, 1, 1, 1});
    const auto top = P({1, 1, 1, 1, 1});

    Rng rng(929);
    const HomMorphism m = random_hom(p, q, rng);
    CHECK(hom_equal(compose(identity_hom(p), m), m));
    CHECK(hom_equal(compose(m, identity_hom(q)), m));

    // n = 2: everything out of the bottom stratum composes to the same class.
    const HomMorphism split2 = pattern_representative(P({2}), P({1, 1}), {{1, 1}});
    const HomMorphism loop2 = hom_from_braid(P({1, 1}), P({1, 1}), bw(2, {1, 1}));
    CHECK(hom_equal(compose(split2, loop2), split2));

    // Associativity: concatenation is literally associative, and classes agree.
    const HomMorphism tail = random_hom(q, top, rng);
    const HomMorphism loop = random_hom(top, top, rng);
    const HomMorphism left = compose(compose(m, tail), loop);
    const HomMorphism right = compose(m, compose(tail, loop));
    CHECK(left.braid.letters == right.braid.letters);
    CHECK(hom_equal(left, right));

    CHECK_THROWS_AS(compose(m, loop), ValidationError);

    // Composites stay valid morphisms with composable patterns.
    const RefinementPattern pat = project_pi0(compose(m, tail));
    CHECK(pat.splits.size() == static_cast<size_t>(p.block_count()));
}

TEST_CASE("composition is well defined on hom classes") {
    Rng rng(4242);
    int done = 0;
    for (int n = 3; n <= 5 && done < 40; ++n) {
        const auto parts = all_partitions(n);
        for (const auto& pp : parts) {
            for (const auto& qq : parts) {
                if (!refines(pp, qq)) continue;
                for (const auto& rr : parts) {
                    if (!refines(qq, rr)) continue;
                    const HomMorphism m = random_hom(pp, qq, rng, 4);
                    const HomMorphism mm = random_hom(qq, rr, rng, 4);
                    const BraidWord i = random_internal_word(pp, rng, 4);
                    const BraidWord j = random_internal_word(qq, rng, 4);
                    const HomMorphism im =
                        hom_from_braid(pp, qq, braid_concat(i, m.braid));
                    const HomMorphism jmm =
                        hom_from_braid(qq, rr, braid_concat(j, mm.braid));
                    CHECK(hom_equal(compose(im, jmm), compose(m, mm)));
                    ++done;
                }
            }
        }
    }
    REQUIRE(done >= 40);
}

TEST_CASE("pi0 projection: identity, surjectivity, exact-sequence fibers") {
    // Identity morphisms project to the identity pattern.
    for (const auto& p : all_partitions(4)) {
        const RefinementPattern pat = project_pi0(identity_hom(p));
        for (int c = 0; c < p.block_count(); ++c)
            CHECK(pat.splits[static_cast<size_t>(c)] ==
                  std::vector<int>{p.parts[static_cast<size_t>(c)]});
    }

    // The glued-braid morphism: 3 splits as {2,1}, 2 splits as {1,1}.
    const auto p = P({3, 2});
    const auto q = P({2, 1, 1, 1});
    const HomMorphism glued = pattern_representative(p, q, {{2, 1}, {1, 1}});
    CHECK(project_pi0(glued).splits == std::vector<std::vector<int>>{{2, 1}, {1, 1}});

    // Round trip: every double coset is realized by its representative.
    for (int n = 2; n <= 5; ++n) {
        for (const auto& [pp, qq] : refinement_pairs(n)) {
            for (const auto& pat : double_cosets(pp, qq)) {
                CHECK(project_pi0(pattern_representative(pp, qq, pat)) == pat);
            }
        }
    }

    // Exact sequence at pi0: padding by internal braids in front and cabled
    // exterior braids behind never moves the component, and two morphisms in
    // the same component differ by an explicit cabled exterior witness
    // modulo internal braids.
    Rng rng(515);
    for (int n = 3; n <= 4; ++n) {
        const auto pairs = refinement_pairs(n);
        for (int trial = 0; trial < 12; ++trial) {
            const auto& [pp, qq] = pairs[rng.below(pairs.size())];
            const auto pats = double_cosets(pp, qq);
            const auto& pat = pats[rng.below(pats.size())];
            const HomMorphism rep = pattern_representative(pp, qq, pat);

            const BraidWord i1 = random_internal_word(pp, rng, 4);
            const BraidWord e1 = random_exterior_word(qq, rng, 4);
            const BraidWord i2 = random_internal_word(pp, rng, 4);
            const BraidWord e2 = random_exterior_word(qq, rng, 4);
            const HomMorphism m1 = hom_from_braid(
                pp, qq,
                braid_concat(braid_concat(i1, rep.braid), cable(e1, qq.parts)));
            const HomMorphism m2 = hom_from_braid(
                pp, qq,
                braid_concat(braid_concat(i2, rep.braid), cable(e2, qq.parts)));
            CHECK(project_pi0(m1) == pat);
            CHECK(project_pi0(m2) == pat);

            // Witness: m1 . cable(e1^-1 e2) is hom_equal to m2.
            const BraidWord witness = cable(braid_concat(braid_inverse(e1), e2), qq.parts);
            const HomMorphism moved =
                hom_from_braid(pp, qq, braid_concat(m1.braid, witness));
            CHECK(hom_equal(moved, m2));
        }
    }

    // Every hom class out of a fiber-connected bottom case is reachable as
    // (canonical refinement braid) . (cabled exterior braid): at n = 2 the
    // hom set (2) -> (1|1) is a single class.
    const HomMorphism canon = pattern_representative(P({2}), P({1, 1}), {{1, 1}});
    Rng rng2(808);
    for (int trial = 0; trial < 10; ++trial) {
        const HomMorphism any = random_hom(P({2}), P({1, 1}), rng2);
        const BraidWord e = random_exterior_word(P({1, 1}), rng2, 5);
        const HomMorphism reached = hom_from_braid(
            P({2}), P({1, 1}),
            braid_concat(canon.braid, cable(e, P({1, 1}).parts)));
        CHECK(hom_equal(any, reached));
    }
}

TEST_CASE("stratum fundamental groups") {
    // Top stratum: every braid on n strands is accepted.
    Rng rng(33);
    const StratumGroup top = stratum_pi1(P({1, 1, 1}));
    CHECK(top.es_generators.size() == 2);
    for (int trial = 0; trial < 20; ++trial) {
        BraidWord w{3, {}};
        for (int i = 0; i < 8; ++i) {
            const int g = 1 + static_cast<int>(rng.below(2));
            w.letters.push_back(rng.flip() ? g : -g);
        }
        CHECK(top.contains(w));
    }

    // Bottom stratum: one strand, only the trivial braid exists.
    const StratumGroup bottom = stratum_pi1(P({3}));
    CHECK(bottom.es_generators.empty());
    CHECK(bottom.contains(bw(1, {})));

    // (2|1): labels must be preserved, so only pure block braids pass.
    const StratumGroup mixed = stratum_pi1(P({2, 1}));
    CHECK(mixed.es_generators.empty());
    CHECK_FALSE(mixed.contains(bw(2, {1})));
    CHECK(mixed.contains(bw(2, {1, 1})));
    CHECK(mixed.contains(bw(2, {-1, -1})));
    CHECK_THROWS_AS(mixed.contains(bw(3, {})), ValidationError);

    CHECK(stratum_pi1(P({2, 2})).es_generators ==
          std::vector<Permutation>{Permutation::transposition(2, 0)});
    CHECK(stratum_pi1(P({2, 2, 1, 1})).es_generators.size() == 2);
    CHECK(stratum_pi1(P({3, 2, 1})).es_generators.empty());
}

TEST_CASE("stratum codimension") {
    CHECK(stratum_info(P({1, 1, 1, 1})).codimension == 0);
    CHECK(stratum_info(P({4})).codimension == 3);
    CHECK(stratum_info(P({2, 1})).codimension == 1);
    CHECK(stratum_info(P({2, 2, 1})).codimension == 2);
    // Strictly monotone down refinement chains.
    for (int n = 2; n <= 6; ++n) {
        for (const auto& [p, q] : refinement_pairs(n)) {
            if (p == q) continue;
            CHECK(stratum_info(p).codimension > stratum_info(q).codimension);
        }
    }
}

TEST_CASE("branched cover fibers and counts") {
    const BranchedCover two = branched_cover(2);
    CHECK(two.fiber(P({2})).size() == 1);
    CHECK(two.fiber(P({1, 1})).size() == 2);

    for (int n = 2; n <= 5; ++n) {
        const BranchedCover cover = branched_cover(n);
        for (const auto& p : all_partitions(n)) {
            long long expect = factorial(n);
            for (int part : p.parts) expect /= factorial(part);
            CHECK(static_cast<long long>(cover.fiber(p).size()) == expect);
        }
    }

    const BranchedCover three = branched_cover(3);
    const auto f21 = three.fiber(P({2, 1}));
    REQUIRE(f21.size() == 3);
    CHECK(f21[0] == Permutation::from_images({0, 1, 2}));
    CHECK(f21[1] == Permutation::from_images({0, 2, 1}));
    CHECK(f21[2] == Permutation::from_images({1, 2, 0}));

    CHECK_THROWS_AS(branched_cover(7), SizeLimitError);
    CHECK_THROWS_AS(branched_cover(0), ValidationError);
}

TEST_CASE("branched cover morphism action") {
    const BranchedCover three = branched_cover(3);

    // Canonical splitting (2|1) -> (1|1|1) with trivial braid: the fiber map
    // collapses S_3 onto the three cosets of the block stabilizer.
    const HomMorphism split =
        hom_from_braid(P({2, 1}), P({1, 1, 1}), bw(3, {}));
    CHECK(three.morphism_map(split) == std::vector<int>{0, 1, 0, 2, 1, 2});

    // Identity morphisms act as the identity map.
    for (const auto& p : all_partitions(3))
        for (size_t idx = 0; idx < three.fiber(p).size(); ++idx)
            CHECK(three.morphism_map(identity_hom(p))[idx] == static_cast<int>(idx));

    // The action is invariant under hom_equal.
    Rng rng(616);
    for (int n = 2; n <= 4; ++n) {
        const BranchedCover cover = branched_cover(n);
        const auto pairs = refinement_pairs(n);
        for (int trial = 0; trial < 8; ++trial) {
            const auto& [p, q] = pairs[rng.below(pairs.size())];
            const HomMorphism m = random_hom(p, q, rng, 4);
            const BraidWord i = random_internal_word(p, rng, 5);
            const HomMorphism im = hom_from_braid(p, q, braid_concat(i, m.braid));
            REQUIRE(hom_equal(im, m));
            CHECK(cover.morphism_map(im) == cover.morphism_map(m));
        }
    }
}

TEST_CASE("branched cover is functorial on composable pairs") {
    Rng rng(1417);
    for (int n = 2; n <= 4; ++n) {
        const BranchedCover cover = branched_cover(n);
        const auto parts = all_partitions(n);
        int done = 0;
        for (const auto& p : parts) {
            for (const auto& q : parts) {
                if (!refines(p, q)) continue;
                for (const auto& r : parts) {
                    if (!refines(q, r)) continue;
                    const HomMorphism m = random_hom(p, q, rng, 4);
                    const HomMorphism mm = random_hom(q, r, rng, 4);
                    const auto map_m = cover.morphism_map(m);
                    const auto map_mm = cover.morphism_map(mm);
                    const auto map_composite = cover.morphism_map(compose(m, mm));
                    REQUIRE(map_composite.size() == map_mm.size());
                    for (size_t t = 0; t < map_mm.size(); ++t)
                        CHECK(map_composite[t] == map_m[static_cast<size_t>(map_mm[t])]);
                    ++done;
                }
            }
        }
        REQUIRE(done > 0);
    }
}
