#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/group.hpp"
#include "stratcat/preorder.hpp"

namespace stratcat {

struct Arrow {
    std::string name;
    int src = 0;
    int dst = 0;
};

// A finitely presented category: objects, generating arrows, and relations
// between parallel generator words. Words are arrow-index sequences read
// left to right (apply the first arrow, then the second). A relation side
// may be empty only when the other side is a loop; the empty side then
// denotes the identity at that object.
struct FinPresCategory {
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;
};

// Source and target of a nonempty composable word; validates its letters.
inline std::pair<int, int> word_endpoints(const FinPresCategory& c, const std::vector<int>& w) {
    if (w.empty()) throw ValidationError("empty word has no intrinsic endpoints");
    const int m = static_cast<int>(c.arrows.size());
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k] < 0 || w[k] >= m) throw ValidationError("arrow index out of range");
        if (k + 1 < w.size() &&
            c.arrows[static_cast<size_t>(w[k])].dst != c.arrows[static_cast<size_t>(w[k + 1])].src)
            throw ValidationError("word is not composable");
    }
    return {c.arrows[static_cast<size_t>(w.front())].src,
            c.arrows[static_cast<size_t>(w.back())].dst};
}

inline void validate_category(const FinPresCategory& c) {
    const int n = static_cast<int>(c.objects.size());
    std::set<std::string> onames;
    for (const auto& o : c.objects) {
        if (o.empty()) throw ValidationError("empty object name");
        if (!onames.insert(o).second) throw ValidationError("duplicate object name");
    }
    std::set<std::string> anames;
    for (const auto& a : c.arrows) {
        if (a.name.empty()) throw ValidationError("empty arrow name");
        if (!anames.insert(a.name).second) throw ValidationError("duplicate arrow name");
        if (a.src < 0 || a.src >= n || a.dst < 0 || a.dst >= n)
            throw ValidationError("arrow endpoint out of range");
    }
    for (const auto& [u, v] : c.relations) {
        if (u.empty() && v.empty()) throw ValidationError("relation with two empty sides");
        if (u.empty() || v.empty()) {
            auto [s, t] = word_endpoints(c, u.empty() ? v : u);
            if (s != t) throw ValidationError("identity relation on a non-loop word");
        } else if (word_endpoints(c, u) != word_endpoints(c, v)) {
            throw ValidationError("relation sides are not parallel");
        }
    }
}

// Presents the exit-path category of a poset: one generator per covering
// relation, and for every ordered pair of elements one relation equating
// each directed cover path to the first such path. Thinness of the
// presented category follows from relating all parallel paths directly.
inline FinPresCategory present_poset(const Poset& p) {
    if (p.size() > 12) throw SizeLimitError("poset presentation limited to 12 elements");
    FinPresCategory c;
    c.objects = p.elements();
    for (auto [x, y] : hasse_covers(p))
        c.arrows.push_back(Arrow{p.elements()[static_cast<size_t>(x)] + ":" +
                                     p.elements()[static_cast<size_t>(y)],
                                 x, y});
    const int n = p.size();
    std::vector<std::vector<int>> out(static_cast<size_t>(n));
    for (size_t a = 0; a < c.arrows.size(); ++a)
        out[static_cast<size_t>(c.arrows[a].src)].push_back(static_cast<int>(a));
    for (int x = 0; x < n; ++x) {
        std::map<int, std::vector<std::vector<int>>> paths_to;
        std::vector<int> word;
        auto dfs = [&](auto&& self, int cur) -> void {
            for (int a : out[static_cast<size_t>(cur)]) {
                word.push_back(a);
                paths_to[c.arrows[static_cast<size_t>(a)].dst].push_back(word);
                self(self, c.arrows[static_cast<size_t>(a)].dst);
                word.pop_back();
            }
        };
        dfs(dfs, x);
        for (const auto& [y, paths] : paths_to)
            for (size_t k = 1; k < paths.size(); ++k) c.relations.emplace_back(paths[0], paths[k]);
    }
    return c;
}

// The sign skeleton of real projective n-space stratified by its standard
// flag: objects x0..xn, two generating arrows a_i, b_i : x_{i-1} -> x_i, and
// relations making the a/b choice multiplicative across consecutive strata:
// a_i a_{i+1} = b_i b_{i+1} and a_i b_{i+1} = b_i a_{i+1}.
inline FinPresCategory rp_skeleton(int n) {
    if (n < 1) throw ValidationError("rp_skeleton requires n >= 1");
    if (n > 1000) throw SizeLimitError("rp_skeleton limited to n <= 1000");
    FinPresCategory c;
    for (int i = 0; i <= n; ++i) c.objects.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
        c.arrows.push_back(Arrow{"a" + std::to_string(i), i - 1, i});
        c.arrows.push_back(Arrow{"b" + std::to_string(i), i - 1, i});
    }
    auto a = [](int i) { return 2 * (i - 1); };
    auto b = [](int i) { return 2 * (i - 1) + 1; };
    for (int i = 1; i < n; ++i) {
        c.relations.push_back({{a(i), a(i + 1)}, {b(i), b(i + 1)}});
        c.relations.push_back({{a(i), b(i + 1)}, {b(i), a(i + 1)}});
    }
    return c;
}

// Hom-sets of the sign skeleton as bare data: between distinct comparable
// strata there are exactly two morphisms, labeled by a sign, and
// composition multiplies signs.
struct SignedSkeleton {
    int n = 1;

    std::vector<int> hom(int i, int j) const {
        if (i < 0 || j > n || i > j) return {};
        if (i == j) return {+1};
        return {+1, -1};
    }
    static int compose(int s, int t) { return s * t; }
};

inline SignedSkeleton signed_skeleton(int n) {
    if (n < 1) throw ValidationError("signed_skeleton requires n >= 1");
    return SignedSkeleton{n};
}

// The sign character on words of rp_skeleton(n): each b-arrow contributes a
// factor of -1, each a-arrow +1.
inline int sign_of_word(const FinPresCategory& rp, const std::vector<int>& word) {
    int s = 1;
    for (int a : word) {
        if (a < 0 || a >= static_cast<int>(rp.arrows.size()))
            throw ValidationError("arrow index out of range");
        const std::string& name = rp.arrows[static_cast<size_t>(a)].name;
        if (!name.empty() && name[0] == 'a') continue;
        if (!name.empty() && name[0] == 'b') {
            s = -s;
            continue;
        }
        throw ValidationError("arrow is not part of a sign skeleton");
    }
    return s;
}

// Vertex group of the groupoid obtained by inverting every morphism: one
// group generator per arrow, with relators killing a breadth-first spanning
// tree of the underlying undirected graph and encoding each category
// relation u = v as u v^-1.
inline GroupPresentation localize_vertex_group(const FinPresCategory& c, int base) {
    validate_category(c);
    const int n = static_cast<int>(c.objects.size());
    if (base < 0 || base >= n) throw ValidationError("base object out of range");
    std::vector<char> visited(static_cast<size_t>(n), 0);
    std::vector<char> in_tree(c.arrows.size(), 0);
    std::queue<int> q;
    visited[static_cast<size_t>(base)] = 1;
    q.push(base);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (size_t a = 0; a < c.arrows.size(); ++a) {
            int v = -1;
            if (c.arrows[a].src == u && !visited[static_cast<size_t>(c.arrows[a].dst)])
                v = c.arrows[a].dst;
            else if (c.arrows[a].dst == u && !visited[static_cast<size_t>(c.arrows[a].src)])
                v = c.arrows[a].src;
            if (v >= 0) {
                in_tree[a] = 1;
                visited[static_cast<size_t>(v)] = 1;
                q.push(v);
            }
        }
    }
    for (int x = 0; x < n; ++x)
        if (!visited[static_cast<size_t>(x)])
            throw ValidationError("generator graph is disconnected");
    std::vector<std::string> gens;
    for (const auto& a : c.arrows) gens.push_back(a.name);
    std::vector<std::vector<int>> relators;
    for (size_t a = 0; a < c.arrows.size(); ++a)
        if (in_tree[a]) relators.push_back({static_cast<int>(a) + 1});
    for (const auto& [u, v] : c.relations) {
        std::vector<int> w;
        for (int a : u) w.push_back(a + 1);
        for (auto it = v.rbegin(); it != v.rend(); ++it) w.push_back(-(*it + 1));
        relators.push_back(std::move(w));
    }
    return make_presentation(std::move(gens), std::move(relators));
}

// Equivalence classes of generator words x -> y under the relation
// congruence, computed over all words of length <= cap. `exact` certifies
// completeness: no word x -> y exceeds the cap and no single rewrite leaves
// it, so the classes listed are exactly the hom-set of the presented
// category. When `exact` is false the count is a lower-bound census only.
struct WordClosure {
    bool exact = true;
    std::vector<std::vector<int>> words;  // ordered by length, then discovery
    std::vector<int> cls;                 // class index per word, by first appearance
    int class_count = 0;
};

inline WordClosure hom_classes(const FinPresCategory& c, int x, int y, int cap = 12) {
    validate_category(c);
    const int n = static_cast<int>(c.objects.size());
    if (x < 0 || x >= n || y < 0 || y >= n) throw ValidationError("object out of range");
    if (cap < 0) throw ValidationError("cap must be nonnegative");

    std::vector<std::vector<int>> out(static_cast<size_t>(n));
    for (size_t a = 0; a < c.arrows.size(); ++a)
        out[static_cast<size_t>(c.arrows[a].src)].push_back(static_cast<int>(a));

    WordClosure res;
    std::map<std::vector<int>, int> index;
    auto record = [&](const std::vector<int>& w) {
        index.emplace(w, static_cast<int>(res.words.size()));
        res.words.push_back(w);
    };
    std::vector<std::pair<int, std::vector<int>>> frontier{{x, {}}};
    if (x == y) record({});
    for (int len = 1; len <= cap && !frontier.empty(); ++len) {
        std::vector<std::pair<int, std::vector<int>>> next;
        for (const auto& [t, w] : frontier)
            for (int a : out[static_cast<size_t>(t)]) {
                std::vector<int> w2 = w;
                w2.push_back(a);
                int d = c.arrows[static_cast<size_t>(a)].dst;
                if (d == y) record(w2);
                next.emplace_back(d, std::move(w2));
            }
        if (res.words.size() + next.size() > 1000000)
            throw SizeLimitError("word closure exceeds the enumeration budget");
        frontier = std::move(next);
    }
    if (!frontier.empty()) {
        // words of length `cap` survive; check whether any extends to reach y
        std::vector<char> star(static_cast<size_t>(n), 0);  // reaches y in >= 0 steps
        star[static_cast<size_t>(y)] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& a : c.arrows)
                if (star[static_cast<size_t>(a.dst)] && !star[static_cast<size_t>(a.src)]) {
                    star[static_cast<size_t>(a.src)] = 1;
                    grew = true;
                }
        }
        for (const auto& [t, w] : frontier) {
            bool extends = false;
            for (int a : out[static_cast<size_t>(t)])
                if (star[static_cast<size_t>(c.arrows[static_cast<size_t>(a)].dst)]) extends = true;
            if (extends) {
                res.exact = false;
                break;
            }
        }
    }

    std::vector<int> parent(res.words.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };

    for (size_t wi = 0; wi < res.words.size(); ++wi) {
        const std::vector<int>& w = res.words[wi];
        for (const auto& rel : c.relations)
            for (int dir = 0; dir < 2; ++dir) {
                const std::vector<int>& from = dir ? rel.second : rel.first;
                const std::vector<int>& to = dir ? rel.first : rel.second;
                if (from.empty()) {
                    // insert the loop `to` wherever the running endpoint matches
                    int z = c.arrows[static_cast<size_t>(to.front())].src;
                    int t = x;
                    for (size_t p = 0; p <= w.size(); ++p) {
                        if (p > 0) t = c.arrows[static_cast<size_t>(w[p - 1])].dst;
                        if (t != z) continue;
                        if (static_cast<int>(w.size() + to.size()) > cap) {
                            res.exact = false;
                            continue;
                        }
                        std::vector<int> w2(w.begin(), w.begin() + static_cast<long>(p));
                        w2.insert(w2.end(), to.begin(), to.end());
                        w2.insert(w2.end(), w.begin() + static_cast<long>(p), w.end());
                        unite(static_cast<int>(wi), index.at(w2));
                    }
                } else {
                    for (size_t p = 0; p + from.size() <= w.size(); ++p) {
                        if (!std::equal(from.begin(), from.end(),
                                        w.begin() + static_cast<long>(p)))
                            continue;
                        std::vector<int> w2(w.begin(), w.begin() + static_cast<long>(p));
                        w2.insert(w2.end(), to.begin(), to.end());
                        w2.insert(w2.end(), w.begin() + static_cast<long>(p + from.size()), w.end());
                        if (static_cast<int>(w2.size()) > cap) {
                            res.exact = false;
                            continue;
                        }
                        unite(static_cast<int>(wi), index.at(w2));
                    }
                }
            }
    }

    std::map<int, int> root_to_cls;
    for (size_t wi = 0; wi < res.words.size(); ++wi) {
        int r = find(static_cast<int>(wi));
        auto it = root_to_cls.find(r);
        if (it == root_to_cls.end())
            it = root_to_cls.emplace(r, static_cast<int>(root_to_cls.size())).first;
        res.cls.push_back(it->second);
    }
    res.class_count = static_cast<int>(root_to_cls.size());
    return res;
}

}  // namespace stratcat
