#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "stratcat/core.hpp"

namespace stratcat {

// Finite presentation. Relators are words of signed 1-based generator
// indices, kept freely reduced.
struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> relators;
};

inline std::vector<int> free_reduce(const std::vector<int>& w) {
    std::vector<int> r;
    for (int a : w) {
        if (!r.empty() && r.back() == -a)
            r.pop_back();
        else
            r.push_back(a);
    }
    return r;
}

inline GroupPresentation make_presentation(std::vector<std::string> gens,
                                           std::vector<std::vector<int>> relators) {
    GroupPresentation g;
    g.generators = std::move(gens);
    for (auto& r : relators) {
        for (int a : r)
            if (a == 0 || std::abs(a) > static_cast<int>(g.generators.size()))
                throw ValidationError("relator letter out of range");
        std::vector<int> red = free_reduce(r);
        if (!red.empty()) g.relators.push_back(std::move(red));
    }
    return g;
}

struct CosetResult {
    bool completed = false;
    long long order = 0;  // meaningful only when completed
};

namespace detail {

// Bounded Todd-Coxeter over the trivial subgroup (HLT strategy with
// coincidence handling). Either completes, in which case the returned order
// is exactly the group order, or gives up when the live-coset count would
// exceed the bound.
class CosetTable {
public:
    CosetTable(const GroupPresentation& g, int bound)
        : g_(g), bound_(bound), cols_(2 * std::max<size_t>(1, g.generators.size())) {
        new_coset();
    }

    bool run() {
        for (size_t p = 0; p < act_.size(); ++p) {
            if (find(static_cast<int>(p)) != static_cast<int>(p)) continue;
            for (const auto& rel : g_.relators) {
                if (!scan_and_fill(static_cast<int>(p), rel)) return false;
                if (find(static_cast<int>(p)) != static_cast<int>(p)) break;
            }
            if (find(static_cast<int>(p)) != static_cast<int>(p)) continue;
            for (size_t d = 0; d < cols_; ++d) {
                if (entry(static_cast<int>(p), d) < 0) {
                    int q = new_coset();
                    if (q < 0) return false;
                    link(static_cast<int>(p), d, q);
                }
            }
        }
        // Verification sweeps: with a complete table every scan either closes
        // or forces a coincidence; repeat until stable.
        bool again = true;
        while (again) {
            again = false;
            for (size_t p = 0; p < act_.size(); ++p) {
                if (find(static_cast<int>(p)) != static_cast<int>(p)) continue;
                for (const auto& rel : g_.relators)
                    if (!scan_only(static_cast<int>(p), rel, again)) return false;
            }
        }
        return complete();
    }

    long long live() const {
        long long k = 0;
        for (size_t p = 0; p < parent_.size(); ++p)
            if (parent_[p] == static_cast<int>(p)) ++k;
        return k;
    }

private:
    static size_t col(int letter) {
        return letter > 0 ? 2 * static_cast<size_t>(letter - 1)
                          : 2 * static_cast<size_t>(-letter - 1) + 1;
    }
    static size_t inv(size_t c) { return c ^ 1U; }

    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }

    int entry(int p, size_t d) {
        int t = act_[static_cast<size_t>(p)][d];
        if (t < 0) return -1;
        t = find(t);
        act_[static_cast<size_t>(p)][d] = t;
        return t;
    }

    int new_coset() {
        if (live() >= bound_) return -1;
        act_.emplace_back(cols_, -1);
        parent_.push_back(static_cast<int>(parent_.size()));
        return static_cast<int>(act_.size()) - 1;
    }

    void link(int a, size_t d, int b) {
        a = find(a);
        b = find(b);
        int ta = entry(a, d);
        if (ta >= 0 && ta != b) {
            coincide(ta, b);
            return;
        }
        int tb = entry(b, inv(d));
        if (tb >= 0 && tb != a) {
            coincide(tb, a);
            return;
        }
        act_[static_cast<size_t>(a)][d] = b;
        act_[static_cast<size_t>(b)][inv(d)] = a;
    }

    void coincide(int a, int b) {
        std::deque<std::pair<int, int>> queue{{a, b}};
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (x > y) std::swap(x, y);
            parent_[static_cast<size_t>(y)] = x;
            for (size_t d = 0; d < cols_; ++d) {
                int t = act_[static_cast<size_t>(y)][d];
                if (t < 0) continue;
                t = find(t);
                int u = entry(x, d);
                if (u < 0) {
                    act_[static_cast<size_t>(x)][d] = t;
                    int back = entry(t, inv(d));
                    if (back < 0)
                        act_[static_cast<size_t>(t)][inv(d)] = x;
                    else if (back != x)
                        queue.emplace_back(back, x);
                } else if (u != t) {
                    queue.emplace_back(u, t);
                }
            }
        }
    }

    // HLT scan of one relator at one coset, defining new cosets to fill gaps.
    bool scan_and_fill(int c, const std::vector<int>& rel) {
        c = find(c);
        size_t i = 0, j = rel.size();
        int f = c, b = c;
        while (true) {
            while (i < j) {
                int t = entry(f, col(rel[i]));
                if (t < 0) break;
                f = t;
                ++i;
            }
            if (i == j) {
                if (f != b) coincide(f, b);
                return true;
            }
            while (j > i) {
                int t = entry(b, inv(col(rel[j - 1])));
                if (t < 0) break;
                b = t;
                --j;
            }
            if (j == i) {
                coincide(f, b);
                return true;
            }
            if (j == i + 1) {
                link(f, col(rel[i]), b);
                return true;
            }
            int q = new_coset();
            if (q < 0) return false;
            link(f, col(rel[i]), q);
            f = find(f);
            b = find(b);
            int t = entry(f, col(rel[i]));
            if (t < 0) return true;  // the link collapsed the gap another way
            f = t;
            ++i;
        }
    }

    bool scan_only(int c, const std::vector<int>& rel, bool& progressed) {
        c = find(c);
        int f = c;
        for (int a : rel) {
            int t = entry(f, col(a));
            if (t < 0) return true;  // incomplete row; caller re-runs
            f = t;
        }
        if (f != find(c)) {
            coincide(f, find(c));
            progressed = true;
        }
        return true;
    }

    bool complete() {
        for (size_t p = 0; p < act_.size(); ++p) {
            if (find(static_cast<int>(p)) != static_cast<int>(p)) continue;
            for (size_t d = 0; d < cols_; ++d)
                if (entry(static_cast<int>(p), d) < 0) return false;
        }
        return true;
    }

    const GroupPresentation& g_;
    long long bound_;
    size_t cols_;
    std::vector<std::vector<int>> act_;
    std::vector<int> parent_;
};

}  // namespace detail

// Bounded coset enumeration over the trivial subgroup. Completed results are
// exact group orders; running out of table space is reported as inconclusive,
// never as a guess.
inline CosetResult coset_enumerate(const GroupPresentation& g, int bound) {
    if (bound < 1) throw ValidationError("bound must be >= 1");
    if (g.generators.empty()) return {true, 1};
    detail::CosetTable table(g, bound);
    if (!table.run()) return {false, 0};
    return {true, table.live()};
}

struct Abelianization {
    std::vector<long long> torsion;  // invariant factors > 1, divisibility chain
    int rank = 0;

    bool operator==(const Abelianization& o) const {
        return torsion == o.torsion && rank == o.rank;
    }
};

// Smith normal form of the relator exponent matrix.
inline Abelianization abelianization(const GroupPresentation& g) {
    const size_t cols = g.generators.size();
    std::vector<std::vector<long long>> m;
    for (const auto& rel : g.relators) {
        std::vector<long long> row(cols, 0);
        for (int a : rel) row[static_cast<size_t>(std::abs(a) - 1)] += a > 0 ? 1 : -1;
        m.push_back(std::move(row));
    }
    const size_t rows = m.size();
    std::vector<long long> diag;
    size_t k = 0;
    while (k < rows && k < cols) {
        // min-abs pivot in the trailing submatrix
        size_t pi = k, pj = k;
        long long best = 0;
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < best)) {
                    best = std::abs(m[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(m[k], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = k + 1; i < rows; ++i) {
                if (m[i][k] == 0) continue;
                long long q = m[i][k] / m[k][k];
                for (size_t j = k; j < cols; ++j) m[i][j] -= q * m[k][j];
                if (m[i][k] != 0) {  // remainder became the smaller pivot
                    std::swap(m[k], m[i]);
                    clean = false;
                }
            }
            for (size_t j = k + 1; j < cols; ++j) {
                if (m[k][j] == 0) continue;
                long long q = m[k][j] / m[k][k];
                for (size_t i = k; i < rows; ++i) m[i][j] -= q * m[i][k];
                if (m[k][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility: pivot must divide the rest of the submatrix
            for (size_t i = k + 1; i < rows && clean; ++i)
                for (size_t j = k + 1; j < cols && clean; ++j)
                    if (m[i][j] % m[k][k] != 0) {
                        for (size_t jj = k; jj < cols; ++jj) m[k][jj] += m[i][jj];
                        clean = false;
                    }
        }
        diag.push_back(std::abs(m[k][k]));
        ++k;
    }
    Abelianization out;
    for (long long d : diag)
        if (d > 1) out.torsion.push_back(d);
    out.rank = static_cast<int>(cols - diag.size());
    return out;
}

}  // namespace stratcat
