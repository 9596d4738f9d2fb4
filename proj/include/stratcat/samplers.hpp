#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/finite_space.hpp"
#include "stratcat/poset_functor.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"
#include "stratcat/rng.hpp"
#include "stratcat/space_over.hpp"

namespace stratcat::samplers {

// Random naturally labeled poset: each index pair i < j is related with
// moderate probability, then closed transitively.
inline Poset random_poset(Rng& rng, int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.below(5) < 2) pairs.emplace_back(i, j);
    return Poset(Preorder::from_pairs(std::move(names), pairs));
}

// Random functor on a naturally labeled poset. Points are processed along
// the linear extension given by the labels (ascending for covariant targets,
// descending for contravariant ones); at each new point the maps on its
// Hasse edges are drawn, the remaining maps are forced by composition, and a
// draw that makes two forced values disagree is retried, falling back to
// constant maps, which are always coherent.
inline PosetFunctor random_functor(Rng& rng, const Poset& base, int max_card,
                                   Variance variance, int max_total_card = 14) {
    const int n = base.size();
    PosetFunctor g;
    g.base = base;
    g.variance = variance;
    g.card.resize(static_cast<size_t>(n));
    while (true) {
        int total = 0;
        for (int x = 0; x < n; ++x) {
            g.card[static_cast<size_t>(x)] = rng.range(1, max_card);
            total += g.card[static_cast<size_t>(x)];
        }
        if (total <= max_total_card) break;
    }

    const auto covers = hasse_covers(base);
    std::vector<std::vector<int>> cover_below(static_cast<size_t>(n));  // y -> {z : z covered by y}
    std::vector<std::vector<int>> cover_above(static_cast<size_t>(n));  // x -> {z : z covers x}
    for (auto [a, b] : covers) {
        cover_below[static_cast<size_t>(b)].push_back(a);
        cover_above[static_cast<size_t>(a)].push_back(b);
    }
    auto random_fn = [&](int src_card, int dst_card, bool constant) {
        std::vector<int> fn(static_cast<size_t>(src_card));
        for (int& v : fn) v = constant ? 0 : rng.range(0, dst_card - 1);
        return fn;
    };

    if (variance == Variance::covariant) {
        for (int y = 0; y < n; ++y) {
            for (int attempt = 0;; ++attempt) {
                const bool fallback = attempt >= 50;
                std::map<std::pair<int, int>, std::vector<int>> trial;
                for (int z : cover_below[static_cast<size_t>(y)])
                    trial[{z, y}] = random_fn(g.card[static_cast<size_t>(z)],
                                              g.card[static_cast<size_t>(y)], fallback);
                bool ok = true;
                for (int x = 0; x < y && ok; ++x) {
                    if (!base.leq(x, y)) continue;
                    std::vector<int> forced;
                    for (int z : cover_below[static_cast<size_t>(y)]) {
                        if (!base.leq(x, z)) continue;
                        std::vector<int> comp(static_cast<size_t>(g.card[static_cast<size_t>(x)]));
                        for (int s = 0; s < g.card[static_cast<size_t>(x)]; ++s) {
                            const int mid = x == z ? s : g.maps.at({x, z})[static_cast<size_t>(s)];
                            comp[static_cast<size_t>(s)] = trial.at({z, y})[static_cast<size_t>(mid)];
                        }
                        if (forced.empty())
                            forced = std::move(comp);
                        else if (forced != comp)
                            ok = false;
                    }
                    if (ok) trial[{x, y}] = std::move(forced);
                }
                if (ok) {
                    for (auto& [k, v] : trial) g.maps[k] = std::move(v);
                    break;
                }
            }
        }
    } else {
        for (int x = n - 1; x >= 0; --x) {
            for (int attempt = 0;; ++attempt) {
                const bool fallback = attempt >= 50;
                std::map<std::pair<int, int>, std::vector<int>> trial;
                for (int z : cover_above[static_cast<size_t>(x)])
                    trial[{x, z}] = random_fn(g.card[static_cast<size_t>(z)],
                                              g.card[static_cast<size_t>(x)], fallback);
                bool ok = true;
                for (int y = n - 1; y > x && ok; --y) {
                    if (!base.leq(x, y)) continue;
                    std::vector<int> forced;
                    for (int z : cover_above[static_cast<size_t>(x)]) {
                        if (!base.leq(z, y)) continue;
                        std::vector<int> comp(static_cast<size_t>(g.card[static_cast<size_t>(y)]));
                        for (int t = 0; t < g.card[static_cast<size_t>(y)]; ++t) {
                            const int mid = z == y ? t : g.maps.at({z, y})[static_cast<size_t>(t)];
                            comp[static_cast<size_t>(t)] = trial.at({x, z})[static_cast<size_t>(mid)];
                        }
                        if (forced.empty())
                            forced = std::move(comp);
                        else if (forced != comp)
                            ok = false;
                    }
                    if (ok) trial[{x, y}] = std::move(forced);
                }
                if (ok) {
                    for (auto& [k, v] : trial) g.maps[k] = std::move(v);
                    break;
                }
            }
        }
    }
    validate_functor(g);
    return g;
}

// Random space over a base: a few germs over each point, related only along
// strict base relations, so the projection is monotone and thus continuous.
inline SpaceOverX random_space_over(Rng& rng, const FiniteSpace& base, int max_fiber,
                                    int max_total) {
    const Preorder sb = specialisation(base);
    while (true) {
        std::vector<int> fiber(static_cast<size_t>(base.size()));
        int total = 0;
        for (int x = 0; x < base.size(); ++x) {
            fiber[static_cast<size_t>(x)] = rng.range(0, max_fiber);
            total += fiber[static_cast<size_t>(x)];
        }
        if (total == 0 || total > max_total) continue;
        std::vector<std::string> names;
        std::vector<int> proj;
        std::vector<int> offset(static_cast<size_t>(base.size()) + 1, 0);
        for (int x = 0; x < base.size(); ++x) {
            offset[static_cast<size_t>(x) + 1] = offset[static_cast<size_t>(x)] + fiber[static_cast<size_t>(x)];
            for (int i = 0; i < fiber[static_cast<size_t>(x)]; ++i) {
                names.push_back("t" + std::to_string(proj.size()));
                proj.push_back(x);
            }
        }
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < total; ++a)
            for (int b = 0; b < total; ++b) {
                if (a == b || !sb.leq(proj[static_cast<size_t>(a)], proj[static_cast<size_t>(b)]))
                    continue;
                if (proj[static_cast<size_t>(a)] == proj[static_cast<size_t>(b)]) continue;
                if (rng.below(5) < 2) pairs.emplace_back(a, b);
            }
        SpaceOverX y;
        y.total = alexandrov(Preorder::from_pairs(std::move(names), pairs));
        y.base = base;
        y.projection = std::move(proj);
        validate_space_over(y);
        return y;
    }
}

// Break the gluing condition of a cosheaf, coherently. An open that is no
// point's minimal open contributes no costalk, so adding a fresh cosection
// there (whose outgoing extensions copy an existing element's) leaves every
// germ computation untouched while making that open's cosections outnumber
// the glued classes. Opens that are minimal for some point cannot be used:
// enlarging them enlarges a costalk and the result can glue again. Returns
// nothing when every nonempty open is pointed, in which case every
// precosheaf on the base glues and no counterexample exists.
inline std::optional<Precosheaf> mutate_non_cosheaf(Rng& rng, const Precosheaf& f) {
    std::vector<int> candidates;
    for (int u = 0; u < f.open_count(); ++u) {
        const std::uint32_t mask = f.open_mask(u);
        if (mask == 0 || f.card[static_cast<size_t>(u)] < 1) continue;
        bool pointed = false;
        for (int x = 0; x < f.base.size(); ++x)
            if (f.base.minimal_open(x) == mask) pointed = true;
        if (!pointed) candidates.push_back(u);
    }
    if (candidates.empty()) return std::nullopt;
    const int u = candidates[static_cast<size_t>(rng.below(candidates.size()))];
    Precosheaf g = f;
    g.card[static_cast<size_t>(u)] += 1;
    for (auto& [key, fn] : g.ext)
        if (key.first == u) fn.push_back(fn[0]);  // the new element shadows element 0
    validate_precosheaf(g);
    return g;
}

}  // namespace stratcat::samplers
