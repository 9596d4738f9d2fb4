#include <catch2/catch_amalgamated.hpp>

#include "stratcat/finite_space.hpp"
#include "stratcat/po_space.hpp"
#include "stratcat/preorder.hpp"
#include "stratcat/rng.hpp"

using namespace stratcat;

namespace {

std::vector<std::string> ids(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("p" + std::to_string(i));
    return v;
}

Poset pseudocircle() {
    // a, b minimal; c, d maximal; a,b <= c,d
    return Poset(Preorder::from_pairs({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
}

Preorder random_preorder(Rng& rng, int n) {
    std::vector<std::pair<int, int>> pairs;
    int k = rng.range(0, 2 * n);
    for (int t = 0; t < k; ++t) pairs.emplace_back(rng.range(0, n - 1), rng.range(0, n - 1));
    return Preorder::from_pairs(ids(n), pairs);
}

// Random finite space: close a random family under union and intersection.
FiniteSpace random_space(Rng& rng, int n) {
    const std::uint32_t full = (1U << n) - 1U;
    std::vector<std::uint32_t> family{0U, full};
    int k = rng.range(0, n + 2);
    for (int t = 0; t < k; ++t) family.push_back(static_cast<std::uint32_t>(rng.below(full + 1)));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> snapshot = family;
        for (std::uint32_t a : snapshot)
            for (std::uint32_t b : snapshot)
                for (std::uint32_t m : {a | b, a & b})
                    if (std::find(family.begin(), family.end(), m) == family.end()) {
                        family.push_back(m);
                        grew = true;
                    }
    }
    return FiniteSpace::from_opens(ids(n), family);
}

// All reflexive-transitive relations on n elements, as row bitmasks.
std::vector<std::vector<std::uint32_t>> all_preorder_rows(int n) {
    std::vector<std::vector<std::uint32_t>> out;
    const int offbits = n * (n - 1);
    for (std::uint64_t code = 0; code < (1ULL << offbits); ++code) {
        std::vector<std::uint32_t> row(static_cast<size_t>(n), 0);
        int bit = 0;
        for (int x = 0; x < n; ++x) {
            row[static_cast<size_t>(x)] |= 1U << x;
            for (int y = 0; y < n; ++y) {
                if (y == x) continue;
                if (code & (1ULL << bit)) row[static_cast<size_t>(x)] |= 1U << y;
                ++bit;
            }
        }
        bool transitive = true;
        for (int x = 0; x < n && transitive; ++x)
            for (int y = 0; y < n; ++y)
                if ((row[static_cast<size_t>(x)] >> y) & 1U)
                    if ((row[static_cast<size_t>(y)] & ~row[static_cast<size_t>(x)]) != 0) {
                        transitive = false;
                        break;
                    }
        if (transitive) out.push_back(std::move(row));
    }
    return out;
}

Preorder preorder_from_rows(const std::vector<std::uint32_t>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<std::vector<char>> rel(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if ((rows[static_cast<size_t>(x)] >> y) & 1U) rel[static_cast<size_t>(x)][static_cast<size_t>(y)] = 1;
    return Preorder::close(ids(n), std::move(rel));
}

}  // namespace

TEST_CASE("preorder closure and poset validation") {
    Preorder p = Preorder::from_pairs(ids(3), {{0, 1}, {1, 2}});
    REQUIRE(p.leq(0, 2));  // transitivity filled in
    REQUIRE(p.leq(1, 1));
    REQUIRE(p.is_antisymmetric());
    REQUIRE_NOTHROW(Poset(p));
    Preorder loop = Preorder::from_pairs(ids(2), {{0, 1}, {1, 0}});
    REQUIRE_FALSE(loop.is_antisymmetric());
    REQUIRE_THROWS_AS(Poset(loop), ValidationError);
    REQUIRE_THROWS_AS(Preorder::from_pairs({"a", "a"}, {}), ValidationError);
}

TEST_CASE("specialisation of classic spaces") {
    // Sierpinski: only {b} and the full set are nonempty opens
    FiniteSpace sier = FiniteSpace::from_opens({"a", "b"}, {0U, 2U, 3U});
    Preorder s = specialisation(sier);
    REQUIRE(s.leq(0, 1));
    REQUIRE_FALSE(s.leq(1, 0));

    // discrete space: only reflexive pairs
    FiniteSpace disc = FiniteSpace::from_opens(ids(3), {0, 1, 2, 3, 4, 5, 6, 7});
    Preorder d = specialisation(disc);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) REQUIRE(d.leq(x, y) == (x == y));
}

TEST_CASE("alexandrov topologies of classic orders") {
    Preorder chain = Preorder::from_pairs(ids(3), {{0, 1}, {1, 2}});
    FiniteSpace up = alexandrov(chain);
    REQUIRE(up.opens() == std::vector<std::uint32_t>{0, 4, 6, 7});

    FiniteSpace disc = alexandrov(Preorder::discrete(ids(2)));
    REQUIRE(disc.opens() == std::vector<std::uint32_t>{0, 1, 2, 3});

    FiniteSpace pc = alexandrov(pseudocircle());
    REQUIRE(pc.opens() == std::vector<std::uint32_t>{0, 4, 8, 12, 13, 14, 15});
}

TEST_CASE("round trip specialisation(alexandrov(P)) = P, exhaustive to 5") {
    for (int n = 0; n <= 5; ++n) {
        long long count = 0;
        for (const auto& rows : all_preorder_rows(n)) {
            Preorder p = preorder_from_rows(rows);
            REQUIRE(specialisation(alexandrov(p)) == p);
            ++count;
        }
        if (n == 3) REQUIRE(count == 29);  // labeled preorders on 3 points
    }
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Preorder p = random_preorder(rng, rng.range(6, 7));
        REQUIRE(specialisation(alexandrov(p)) == p);
    }
}

TEST_CASE("downward space equals the Alexandrov space on finite carriers") {
    Preorder two_chain = Preorder::from_pairs(ids(2), {{0, 1}});
    FiniteSpace d = downward_space(two_chain);
    REQUIRE(d.opens() == std::vector<std::uint32_t>{0, 2, 3});
    REQUIRE(d == alexandrov(two_chain));

    // antichain: every subset is closed, hence every subset open
    FiniteSpace anti = downward_space(Preorder::discrete(ids(2)));
    REQUIRE(anti.opens() == std::vector<std::uint32_t>{0, 1, 2, 3});

    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Preorder p = random_preorder(rng, rng.range(1, 6));
        REQUIRE(downward_space(p) == alexandrov(p));
    }
}

TEST_CASE("poset quotients") {
    Preorder loop = Preorder::from_pairs(ids(2), {{0, 1}, {1, 0}});
    PosetQuotient q = poset_quotient(loop);
    REQUIRE(q.poset.size() == 1);
    REQUIRE(q.cls == std::vector<int>{0, 0});

    Poset pc = pseudocircle();
    q = poset_quotient(pc);
    REQUIRE(static_cast<const Preorder&>(q.poset) == static_cast<const Preorder&>(pc));
    REQUIRE(q.cls == std::vector<int>{0, 1, 2, 3});

    // two symmetric pairs, one below the other, collapse to a 2-chain
    Preorder pairs = Preorder::from_pairs(ids(4), {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {0, 2}});
    q = poset_quotient(pairs);
    REQUIRE(q.poset.size() == 2);
    REQUIRE(q.cls == std::vector<int>{0, 0, 1, 1});
    REQUIRE(q.poset.leq(0, 1));
    REQUIRE_FALSE(q.poset.leq(1, 0));
}

TEST_CASE("every finite space is Alexandrov: the adjunction unit is a homeomorphism") {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteSpace x = random_space(rng, rng.range(1, 5));
        FiniteSpace ax = alexandrov(specialisation(x));
        // identity is continuous in both directions and the spaces coincide
        std::vector<int> id(static_cast<size_t>(x.size()));
        for (int i = 0; i < x.size(); ++i) id[static_cast<size_t>(i)] = i;
        REQUIRE(is_continuous(ax, x, id));
        REQUIRE(ax == x);
    }
}

TEST_CASE("monotone iff continuous between Alexandrov spaces") {
    Rng rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        int n = rng.range(1, 4), m = rng.range(1, 4);
        Preorder p = random_preorder(rng, n);
        Preorder q = random_preorder(rng, m);
        std::vector<int> f(static_cast<size_t>(n));
        for (auto& v : f) v = rng.range(0, m - 1);
        REQUIRE(is_monotone(p, q, f) == is_continuous(alexandrov(p), alexandrov(q), f));
    }
    REQUIRE_THROWS_AS(MonotoneMap(Preorder::from_pairs(ids(2), {{0, 1}}), Preorder::discrete(ids(2)),
                                  std::vector<int>{0, 1}),
                      ValidationError);
    REQUIRE_NOTHROW(MonotoneMap(Preorder::from_pairs(ids(2), {{0, 1}}),
                                Preorder::from_pairs(ids(2), {{0, 1}}), std::vector<int>{0, 1}));
}

TEST_CASE("compatibility classification") {
    // an Alexandrov space with its own order is well-filtered
    Preorder p = Preorder::from_pairs(ids(3), {{0, 1}, {0, 2}});
    PoSpace ps(alexandrov(p), p);
    CompatibilityResult c = compatibility(ps);
    REQUIRE(c.level == Compatibility::C2WellFiltered);
    REQUIRE(c.stratum_of == std::vector<int>{0, 1, 2});

    // discrete topology makes any order well-filtered
    FiniteSpace disc = FiniteSpace::from_opens(ids(2), {0, 1, 2, 3});
    c = compatibility(PoSpace(disc, Preorder::from_pairs(ids(2), {{0, 1}})));
    REQUIRE(c.level == Compatibility::C2WellFiltered);

    // 2-chain with only {0} open: D_0 = {0} is not closed and U_1 = {1} is
    // not open, so this space is neither filtered nor well-filtered
    FiniteSpace half = FiniteSpace::from_opens(ids(2), {0U, 1U, 3U});
    c = compatibility(PoSpace(half, Preorder::from_pairs(ids(2), {{0, 1}})));
    REQUIRE(c.level == Compatibility::None);

    // indiscrete topology with a strict order fails both conditions too
    FiniteSpace indisc = FiniteSpace::from_opens(ids(2), {0U, 3U});
    c = compatibility(PoSpace(indisc, Preorder::from_pairs(ids(2), {{0, 1}})));
    REQUIRE(c.level == Compatibility::None);
}

TEST_CASE("C1 and C2 coincide on finite po-spaces, exhaustively at 3 points") {
    // enumerate all topologies on 3 points
    std::vector<FiniteSpace> spaces;
    for (std::uint32_t code = 0; code < (1U << 6); ++code) {
        std::vector<std::uint32_t> family{0U, 7U};
        for (int m = 1; m <= 6; ++m)
            if (code & (1U << (m - 1))) family.push_back(static_cast<std::uint32_t>(m));
        bool closed = true;
        for (std::uint32_t a : family)
            for (std::uint32_t b : family) {
                auto has = [&family](std::uint32_t v) {
                    return std::find(family.begin(), family.end(), v) != family.end();
                };
                if (!has(a | b) || !has(a & b)) {
                    closed = false;
                    break;
                }
            }
        if (closed) spaces.push_back(FiniteSpace::from_opens(ids(3), family));
    }
    REQUIRE(spaces.size() > 10);
    std::vector<std::vector<std::uint32_t>> orders = all_preorder_rows(3);
    for (const FiniteSpace& s : spaces) {
        for (const auto& rows : orders) {
            Preorder o = preorder_from_rows(rows);
            bool ups_open = true, downs_closed = true;
            for (int x = 0; x < 3; ++x) {
                std::uint32_t up = 0, down = 0;
                for (int y = 0; y < 3; ++y) {
                    if (o.leq(x, y)) up |= 1U << y;
                    if (o.leq(y, x)) down |= 1U << y;
                }
                ups_open = ups_open && s.is_open(up);
                downs_closed = downs_closed && s.is_closed(down);
            }
            REQUIRE(ups_open == downs_closed);  // finite: filtered iff well-filtered
            CompatibilityResult c = compatibility(PoSpace(s, o));
            REQUIRE((c.level == Compatibility::C2WellFiltered) == ups_open);
            REQUIRE((c.level == Compatibility::C1Filtered) == false);
        }
    }
}

TEST_CASE("stratified map checks") {
    Preorder chain = Preorder::from_pairs(ids(2), {{0, 1}});
    PoSpace x(alexandrov(chain), chain);

    StratifiedMapResult r = stratified_map_check({0, 1}, x, x);
    REQUIRE(r.ok);
    REQUIRE(r.g == std::vector<int>{0, 1});

    // constant map to the point
    Preorder pt = Preorder::discrete({"q"});
    PoSpace y(alexandrov(pt), pt);
    r = stratified_map_check({0, 0}, x, y);
    REQUIRE(r.ok);
    REQUIRE(r.g == std::vector<int>{0, 0});

    // the strata projection of a well-filtered space is stratified with g = id
    Preorder withpair = Preorder::from_pairs(ids(3), {{0, 1}, {1, 0}, {0, 2}});
    PoSpace big(alexandrov(withpair), withpair);
    PosetQuotient q = poset_quotient(withpair);
    PoSpace small(alexandrov(q.poset), q.poset);
    r = stratified_map_check(q.cls, big, small);
    REQUIRE(r.ok);
    REQUIRE(r.g == std::vector<int>{0, 1});

    // swapping a chain against its own topology is not even continuous
    r = stratified_map_check({1, 0}, x, x);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure == "not-continuous");

    // an indiscrete stratum mapping onto two strata splits
    Preorder total = Preorder::from_pairs(ids(2), {{0, 1}, {1, 0}});
    PoSpace blob(FiniteSpace::from_opens(ids(2), {0U, 3U}), total);
    PoSpace two(FiniteSpace::from_opens(ids(2), {0U, 3U}), Preorder::discrete(ids(2)));
    r = stratified_map_check({0, 1}, blob, two);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure == "splits-stratum");

    // continuous but order-reversing: the induced g is not increasing
    PoSpace dchain(FiniteSpace::from_opens(ids(2), {0, 1, 2, 3}), chain);
    r = stratified_map_check({1, 0}, dchain, dchain);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure == "g-not-increasing");
}

TEST_CASE("components and local connectivity") {
    FiniteSpace pc = alexandrov(pseudocircle());
    REQUIRE(is_connected(pc, pc.full_mask()));
    REQUIRE(connected_components(pc, pc.full_mask()).size() == 1);

    // two disjoint chains
    Preorder twochains = Preorder::from_pairs(ids(4), {{0, 1}, {2, 3}});
    FiniteSpace tc = alexandrov(twochains);
    std::vector<std::uint32_t> comps = connected_components(tc, tc.full_mask());
    REQUIRE(comps == std::vector<std::uint32_t>{3U, 12U});
    REQUIRE_FALSE(is_connected(tc, tc.full_mask()));
    REQUIRE(connected_components(tc, 0U).empty());

    // minimal opens are connected in every finite space
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteSpace s = random_space(rng, rng.range(1, 6));
        for (int x = 0; x < s.size(); ++x) REQUIRE(is_connected(s, s.minimal_open(x)));
    }
}
