#include <catch2/catch_amalgamated.hpp>

#include "stratcat/group.hpp"

using namespace stratcat;

TEST_CASE("free reduction") {
    REQUIRE(free_reduce({1, -1}).empty());
    REQUIRE(free_reduce({1, 2, -2, -1}).empty());
    REQUIRE(free_reduce({1, 2, -1}) == std::vector<int>{1, 2, -1});
}

TEST_CASE("coset enumeration on small groups") {
    GroupPresentation z2 = make_presentation({"b"}, {{1, 1}});
    CosetResult r = coset_enumerate(z2, 100);
    REQUIRE(r.completed);
    REQUIRE(r.order == 2);

    GroupPresentation trivial = make_presentation({}, {});
    r = coset_enumerate(trivial, 10);
    REQUIRE(r.completed);
    REQUIRE(r.order == 1);

    GroupPresentation free1 = make_presentation({"a"}, {});
    r = coset_enumerate(free1, 100);
    REQUIRE_FALSE(r.completed);

    // symmetric group S3 = <a,b | a^2, b^2, (ab)^3>
    GroupPresentation s3 = make_presentation({"a", "b"}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}});
    r = coset_enumerate(s3, 100);
    REQUIRE(r.completed);
    REQUIRE(r.order == 6);

    // quaternion group <i,j | i^4, i^2 j^-2, j^-1 i j i>
    GroupPresentation q8 =
        make_presentation({"i", "j"}, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}});
    r = coset_enumerate(q8, 100);
    REQUIRE(r.completed);
    REQUIRE(r.order == 8);

    // Z/6 as <a,b | a^2, b^3, a b a^-1 b^-1>
    GroupPresentation z6 = make_presentation({"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, -1, -2}});
    r = coset_enumerate(z6, 100);
    REQUIRE(r.completed);
    REQUIRE(r.order == 6);

    // bound exhaustion on a finite group is inconclusive, never wrong
    r = coset_enumerate(s3, 2);
    REQUIRE_FALSE(r.completed);
}

TEST_CASE("abelianization invariants") {
    GroupPresentation z2 = make_presentation({"b"}, {{1, 1}});
    Abelianization ab = abelianization(z2);
    REQUIRE(ab.torsion == std::vector<long long>{2});
    REQUIRE(ab.rank == 0);

    GroupPresentation free1 = make_presentation({"a"}, {});
    ab = abelianization(free1);
    REQUIRE(ab.torsion.empty());
    REQUIRE(ab.rank == 1);

    // S3 abelianizes to Z/2
    GroupPresentation s3 = make_presentation({"a", "b"}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}});
    ab = abelianization(s3);
    REQUIRE(ab.torsion == std::vector<long long>{2});
    REQUIRE(ab.rank == 0);

    // rows (2,4,0) and (4,8,0) are dependent: Z/2 x Z^2
    GroupPresentation g = make_presentation(
        {"x", "y", "z"}, {{1, 1, 2, 2, 2, 2}, {1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2}});
    ab = abelianization(g);
    REQUIRE(ab.torsion == std::vector<long long>{2});
    REQUIRE(ab.rank == 2);

    // diag(2,3) must normalize to the invariant factor 6
    GroupPresentation h = make_presentation({"x", "y"}, {{1, 1}, {2, 2, 2}});
    ab = abelianization(h);
    REQUIRE(ab.torsion == std::vector<long long>{6});
    REQUIRE(ab.rank == 0);
}
