#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <vector>

#include "stratcat/braid.hpp"
#include "stratcat/core.hpp"
#include "stratcat/permutation.hpp"

namespace stratcat {

// Left-weighted Garside normal form: Delta^delta . A_1 ... A_m where each A_t
// is a simple (permutation) braid, none is the identity or Delta, and
// adjacent factors satisfy S(A_{t+1}) subset-of F(A_t).
struct NormalForm {
    int n = 1;
    int delta = 0;
    std::vector<Permutation> factors;

    bool operator==(const NormalForm& o) const {
        return n == o.n && delta == o.delta && factors == o.factors;
    }
    bool operator!=(const NormalForm& o) const { return !(*this == o); }
};

// S(A): generators sigma_{c+1} left-dividing the simple braid A_pi, i.e.
// descents of the image array.
inline std::vector<int> starting_set(const Permutation& pi) { return pi.image_descents(); }

// F(A): generators right-dividing A_pi = descents of the inverse image array.
inline std::vector<int> finishing_set(const Permutation& pi) {
    return pi.inverse().image_descents();
}

inline bool left_weighted(const Permutation& a, const Permutation& b) {
    std::vector<char> fin(static_cast<size_t>(a.size()), 0);
    for (int c : finishing_set(a)) fin[static_cast<size_t>(c)] = 1;
    for (int c : starting_set(b))
        if (!fin[static_cast<size_t>(c)]) return false;
    return true;
}

// A positive word for the simple braid A_pi, one letter per inversion.
inline std::vector<int> positive_simple_word(Permutation pi) {
    std::vector<int> word;
    bool found = true;
    while (found) {
        found = false;
        for (int c = 0; c + 1 < pi.size(); ++c) {
            if (pi(c) > pi(c + 1)) {
                word.push_back(c + 1);  // 1-based generator
                pi.swap_entries(c);     // peel sigma_{c+1} off the left
                found = true;
                break;
            }
        }
    }
    return word;
}

inline NormalForm normal_form(const BraidWord& w) {
    w.validate();
    const int n = w.n;
    const Permutation w0 = Permutation::half_twist(n);

    // Rewrite sigma_i^-1 = Delta^-1 . (Delta sigma_i^-1) and push every
    // Delta^-1 to the front; tau(x) = Delta x Delta^-1 conjugates the simples
    // passed over, and tau^2 = id.
    int neg = 0;
    for (int a : w.letters)
        if (a < 0) ++neg;
    std::deque<Permutation> factors;
    int passed = 0;  // Delta^-1 markers strictly to the right of the current letter
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        int a = *it;
        int c = std::abs(a) - 1;
        Permutation s;
        if (a > 0) {
            s = Permutation::transposition(n, c);
        } else {
            s = w0;  // Delta sigma_i^-1: half twist with values c, c+1 swapped
            s.swap_values(c);
        }
        if ((passed & 1) != 0) {
            // tau(pi)(x) = n-1-pi(n-1-x)
            std::vector<int> img(static_cast<size_t>(n));
            for (int x = 0; x < n; ++x) img[static_cast<size_t>(x)] = n - 1 - s(n - 1 - x);
            s = Permutation::from_images(img);
        }
        if (a < 0) ++passed;
        if (!s.is_identity()) factors.push_front(s);
    }
    int delta = -neg;

    // Bubble the factor list to the left-weighted fixpoint. A slide moves the
    // initial crossing sigma_c of B (c in S(B) \ F(A)) onto the tail of A;
    // this strictly grows A, so sweeps terminate.
    std::vector<Permutation> f(factors.begin(), factors.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < f.size();) {
            Permutation& a = f[i];
            Permutation& b = f[i + 1];
            bool slid = false;
            while (true) {
                std::vector<char> fin(static_cast<size_t>(n), 0);
                for (int c : finishing_set(a)) fin[static_cast<size_t>(c)] = 1;
                int pick = -1;
                for (int c : starting_set(b)) {
                    if (!fin[static_cast<size_t>(c)]) {
                        pick = c;
                        break;
                    }
                }
                if (pick < 0) break;
                a.swap_values(pick);
                b.swap_entries(pick);
                slid = true;
                if (b.is_identity()) break;
            }
            if (slid) changed = true;
            if (b.is_identity()) {
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                if (i > 0) --i;  // the pair to the left may have broken
            } else {
                ++i;
            }
        }
    }

    // Leading half twists are Delta factors in disguise.
    size_t lead = 0;
    while (lead < f.size() && f[lead] == w0) ++lead;
    delta += static_cast<int>(lead);
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(lead));

    NormalForm nf;
    nf.n = n;
    nf.delta = delta;
    nf.factors = std::move(f);
    return nf;
}

inline BraidWord braid_from_normal_form(const NormalForm& nf) {
    BraidWord w{nf.n, {}};
    std::vector<int> dword = positive_simple_word(Permutation::half_twist(nf.n));
    if (nf.delta >= 0) {
        for (int k = 0; k < nf.delta; ++k) w.letters.insert(w.letters.end(), dword.begin(), dword.end());
    } else {
        for (int k = 0; k < -nf.delta; ++k)
            for (auto it = dword.rbegin(); it != dword.rend(); ++it) w.letters.push_back(-*it);
    }
    for (const Permutation& p : nf.factors) {
        std::vector<int> pw = positive_simple_word(p);
        w.letters.insert(w.letters.end(), pw.begin(), pw.end());
    }
    return w;
}

// Word problem: normal forms are canonical.
inline bool equal(const BraidWord& u, const BraidWord& v) {
    if (u.n != v.n) throw ValidationError("strand-count mismatch");
    return normal_form(u) == normal_form(v);
}

namespace detail {

inline std::vector<int> block_of_strand(const std::vector<int>& widths, int n) {
    std::vector<int> blk(static_cast<size_t>(n), -1);
    int p = 0, j = 0;
    for (int wdt : widths) {
        for (int t = 0; t < wdt; ++t) blk[static_cast<size_t>(p + t)] = j;
        p += wdt;
        ++j;
    }
    if (p != n) throw ValidationError("blocks must cover all strands");
    return blk;
}

inline bool preserves_blocks(const Permutation& pi, const std::vector<int>& blk) {
    for (int x = 0; x < pi.size(); ++x)
        if (blk[static_cast<size_t>(pi(x))] != blk[static_cast<size_t>(x)]) return false;
    return true;
}

}  // namespace detail

// Membership in the standard parabolic subgroup B_{w1} x ... x B_{wk}
// embedded blockwise (blocks are the consecutive intervals of the given
// widths). The naive normal-form factor test is only valid for positive
// braids, so the word is first made positive by multiplying with enough
// block half twists: if w lies in the subgroup, each blockwise component has
// a word with at most M negative crossings (delete the other blocks from w's
// own diagram), hence block-Delta^M w is blockwise positive. Positive
// membership then reduces to: zero delta exponent and every normal-form
// factor preserving the blocks, by divisor closure of parabolic submonoids.
inline bool parabolic_member(const BraidWord& w, const std::vector<int>& widths) {
    w.validate();
    for (int x : widths)
        if (x < 1) throw ValidationError("malformed blocks");
    std::vector<int> blk = detail::block_of_strand(widths, w.n);
    if (widths.size() == 1) return true;  // the whole group
    if (!detail::preserves_blocks(permutation_of(w), blk)) return false;

    BraidWord reduced = braid_free_reduce(w);
    int neg = 0;
    for (int a : reduced.letters)
        if (a < 0) ++neg;

    BraidWord padded{w.n, {}};
    for (int k = 0; k < neg; ++k) {
        int p = 0;
        for (int wdt : widths) {
            // half twist on the block [p, p+wdt)
            for (int len = 1; len < wdt; ++len)
                for (int q = p + len; q >= p + 1; --q) padded.letters.push_back(q);
            p += wdt;
        }
    }
    padded.letters.insert(padded.letters.end(), reduced.letters.begin(), reduced.letters.end());

    NormalForm nf = normal_form(padded);
    if (nf.delta != 0) return false;
    for (const Permutation& f : nf.factors)
        if (!detail::preserves_blocks(f, blk)) return false;
    return true;
}

}  // namespace stratcat
