#include <catch2/catch_amalgamated.hpp>

#include "stratcat/oracles.hpp"
#include "stratcat/presentation.hpp"
#include "stratcat/thin_category.hpp"

using namespace stratcat;

namespace {

std::vector<std::string> ids(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("p" + std::to_string(i));
    return v;
}

Poset chain(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return Poset(Preorder::from_pairs(ids(n), pairs));
}

Poset pseudocircle() {
    return Poset(Preorder::from_pairs({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
}

Poset square() {
    return Poset(Preorder::from_pairs(ids(4), {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

}  // namespace

TEST_CASE("poset categories are thin with hom matching the order") {
    ThinCategory c3 = poset_category(chain(3));
    REQUIRE(c3.morphism_count() == 6);  // 3 identities + 3 strict
    ThinCategory anti = poset_category(Poset(Preorder::discrete(ids(3))));
    REQUIRE(anti.morphism_count() == 3);
    ThinCategory pc = poset_category(pseudocircle());
    REQUIRE(pc.morphism_count() == 8);  // 4 identities + 4 strict
    for (const Poset& p : all_posets(4)) {
        ThinCategory c = poset_category(p);
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) REQUIRE(c.hom(x, y) == p.leq(x, y));
    }
    // invariants are enforced: no identity, or broken composition closure
    REQUIRE_THROWS_AS(ThinCategory({"u"}, {{0}}), ValidationError);
    REQUIRE_THROWS_AS(ThinCategory({"u", "v", "w"}, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}),
                      ValidationError);
}

TEST_CASE("present_poset on classic posets") {
    FinPresCategory two = present_poset(chain(2));
    REQUIRE(two.arrows.size() == 1);
    REQUIRE(two.relations.empty());

    FinPresCategory three = present_poset(chain(3));
    REQUIRE(three.arrows.size() == 2);  // the long pair 0 < 2 is not a cover
    REQUIRE(three.relations.empty());

    FinPresCategory sq = present_poset(square());
    REQUIRE(sq.arrows.size() == 4);
    REQUIRE(sq.relations.size() == 1);
    auto [u, v] = sq.relations[0];
    REQUIRE(u.size() == 2);
    REQUIRE(v.size() == 2);
    REQUIRE(word_endpoints(sq, u) == word_endpoints(sq, v));
    REQUIRE(u != v);

    FinPresCategory pc = present_poset(pseudocircle());
    REQUIRE(pc.arrows.size() == 4);
    REQUIRE(pc.relations.empty());

    REQUIRE_THROWS_AS(present_poset(chain(13)), SizeLimitError);
    REQUIRE_NOTHROW(validate_category(sq));
}

TEST_CASE("presented posets have thin word closures, exhaustive to 5") {
    REQUIRE(all_posets(3).size() == 7);
    REQUIRE(all_posets(4).size() == 40);
    for (int n = 1; n <= 5; ++n)
        for (const Poset& p : all_posets(n)) {
            FinPresCategory c = present_poset(p);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    WordClosure wc = hom_classes(c, x, y);
                    REQUIRE(wc.exact);
                    REQUIRE(wc.class_count == (p.leq(x, y) ? 1 : 0));
                }
        }
}

TEST_CASE("rp skeleton shape") {
    REQUIRE_THROWS_AS(rp_skeleton(0), ValidationError);
    FinPresCategory r1 = rp_skeleton(1);
    REQUIRE(r1.objects.size() == 2);
    REQUIRE(r1.arrows.size() == 2);
    REQUIRE(r1.relations.empty());
    FinPresCategory r2 = rp_skeleton(2);
    REQUIRE(r2.arrows.size() == 4);
    REQUIRE(r2.relations.size() == 2);
    REQUIRE(rp_skeleton(3).relations.size() == 4);
    REQUIRE_NOTHROW(validate_category(r2));

    SignedSkeleton s = signed_skeleton(2);
    REQUIRE(s.hom(0, 0) == std::vector<int>{+1});
    REQUIRE(s.hom(0, 2) == std::vector<int>{+1, -1});
    REQUIRE(s.hom(2, 0).empty());
    REQUIRE(SignedSkeleton::compose(-1, -1) == +1);
}

TEST_CASE("rp skeleton hom classes realize the sign bijection") {
    for (int n = 2; n <= 4; ++n) {
        FinPresCategory c = rp_skeleton(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                WordClosure wc = hom_classes(c, i, j);
                REQUIRE(wc.exact);
                if (i == j) {
                    REQUIRE(wc.class_count == 1);
                    REQUIRE(wc.words == std::vector<std::vector<int>>{{}});
                } else if (i > j) {
                    REQUIRE(wc.class_count == 0);
                } else {
                    REQUIRE(wc.words.size() == (1ULL << (j - i)));
                    REQUIRE(wc.class_count == 2);
                    // the class of a word is determined by its sign
                    std::vector<int> class_sign(2, 0);
                    for (size_t w = 0; w < wc.words.size(); ++w) {
                        int s = sign_of_word(c, wc.words[w]);
                        int& slot = class_sign[static_cast<size_t>(wc.cls[w])];
                        if (slot == 0) slot = s;
                        REQUIRE(slot == s);
                    }
                    REQUIRE(class_sign[0] == -class_sign[1]);
                }
            }
    }
}

TEST_CASE("word closures flag unverifiable loops as inexact") {
    // one object with a loop arrow and no relations: the census cannot close
    FinPresCategory loop;
    loop.objects = {"x"};
    loop.arrows = {Arrow{"e", 0, 0}};
    WordClosure wc = hom_classes(loop, 0, 0, 5);
    REQUIRE_FALSE(wc.exact);
    REQUIRE(wc.class_count == 6);  // census of lengths 0..5, nothing identified

    // adding e = id collapses the census but stays honest about the cap
    loop.relations.push_back({{0}, {}});
    wc = hom_classes(loop, 0, 0, 5);
    REQUIRE_FALSE(wc.exact);
    REQUIRE(wc.class_count == 1);
    GroupPresentation g = localize_vertex_group(loop, 0);
    CosetResult cr = coset_enumerate(g, 10);
    REQUIRE(cr.completed);
    REQUIRE(cr.order == 1);
}

TEST_CASE("localized vertex groups of classic categories") {
    GroupPresentation g = localize_vertex_group(present_poset(chain(2)), 0);
    REQUIRE(g.generators.size() == 1);
    CosetResult cr = coset_enumerate(g, 10);
    REQUIRE(cr.completed);
    REQUIRE(cr.order == 1);

    REQUIRE(abelianization(localize_vertex_group(rp_skeleton(1), 0)) ==
            Abelianization{{}, 1});

    GroupPresentation rp2 = localize_vertex_group(rp_skeleton(2), 0);
    cr = coset_enumerate(rp2, 100);
    REQUIRE(cr.completed);
    REQUIRE(cr.order == 2);
    REQUIRE(abelianization(rp2) == Abelianization{{2}, 0});

    for (int n = 3; n <= 4; ++n) {
        cr = coset_enumerate(localize_vertex_group(rp_skeleton(n), 0), 1000);
        REQUIRE(cr.completed);
        REQUIRE(cr.order == 2);
    }

    REQUIRE(abelianization(localize_vertex_group(present_poset(pseudocircle()), 0)) ==
            Abelianization{{}, 1});

    // base object can be any vertex of a connected graph
    REQUIRE(coset_enumerate(localize_vertex_group(rp_skeleton(2), 2), 100).order == 2);

    REQUIRE_THROWS_AS(localize_vertex_group(present_poset(Poset(Preorder::discrete(ids(2)))), 0),
                      ValidationError);
    REQUIRE_THROWS_AS(localize_vertex_group(rp_skeleton(2), 7), ValidationError);
}

TEST_CASE("nerve homology oracle on classic posets") {
    REQUIRE(nerve_h1(chain(3), 0) == Abelianization{{}, 0});
    REQUIRE(nerve_h1(pseudocircle(), 0) == Abelianization{{}, 1});
    REQUIRE(nerve_h1(chain(1), 0) == Abelianization{{}, 0});
    // base component only: an antichain component is a point
    REQUIRE(nerve_h1(Poset(Preorder::discrete(ids(3))), 1) == Abelianization{{}, 0});
}

TEST_CASE("localization abelianized agrees with nerve homology, exhaustive to 5") {
    for (int n = 1; n <= 5; ++n)
        for (const Poset& p : all_posets(n))
            for (const std::vector<int>& comp : comparability_components(p)) {
                Poset q = induced_subposet(p, comp);
                Abelianization viaCovers =
                    abelianization(localize_vertex_group(present_poset(q), 0));
                Abelianization viaNerve = nerve_h1(q, 0);
                REQUIRE(viaCovers == viaNerve);
                REQUIRE(nerve_h1(p, comp[0]) == viaNerve);
            }
}
