#pragma once

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/permutation.hpp"

namespace stratcat {

// Word in the Artin generators of B_n. Letters are signed 1-based generator
// indices: +i is sigma_i, -i its inverse. sigma_i crosses the strand at
// position i over the strand at position i+1; words compose left to right.
struct BraidWord {
    int n = 1;
    std::vector<int> letters;

    void validate() const {
        if (n < 1) throw ValidationError("braid strand count must be >= 1");
        for (int a : letters) {
            int i = std::abs(a);
            if (a == 0 || i > n - 1) throw ValidationError("braid letter out of range");
        }
    }
};

inline BraidWord braid_inverse(const BraidWord& w) {
    BraidWord r{w.n, {}};
    r.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

inline BraidWord braid_concat(const BraidWord& a, const BraidWord& b) {
    if (a.n != b.n) throw ValidationError("strand-count mismatch");
    BraidWord r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

// Cancel adjacent sigma sigma^-1 pairs. Not a normal form, just shrinkage.
inline BraidWord braid_free_reduce(const BraidWord& w) {
    BraidWord r{w.n, {}};
    for (int a : w.letters) {
        if (!r.letters.empty() && r.letters.back() == -a)
            r.letters.pop_back();
        else
            r.letters.push_back(a);
    }
    return r;
}

inline Permutation permutation_of(const BraidWord& w) {
    std::vector<int> at(static_cast<size_t>(w.n));  // at[p] = strand currently at position p
    for (int x = 0; x < w.n; ++x) at[static_cast<size_t>(x)] = x;
    for (int a : w.letters) {
        int c = std::abs(a) - 1;
        std::swap(at[static_cast<size_t>(c)], at[static_cast<size_t>(c) + 1]);
    }
    std::vector<int> img(static_cast<size_t>(w.n));
    for (int p = 0; p < w.n; ++p) img[static_cast<size_t>(at[static_cast<size_t>(p)])] = p;
    return Permutation::from_images(img);
}

// ---- text and JSON-free parsing ----------------------------------------

// Format: optional leading "n=<k>", then whitespace-separated tokens
// s<i> or s<i>^-1 (general integer powers s<i>^<e> accepted on input).
inline BraidWord parse_braid(const std::string& text, int n_hint = -1) {
    BraidWord w;
    std::istringstream in(text);
    std::string tok;
    int n = n_hint;
    int maxgen = 0;
    bool first = true;
    while (in >> tok) {
        if (first && tok.rfind("n=", 0) == 0) {
            first = false;
            try {
                n = std::stoi(tok.substr(2));
            } catch (...) {
                throw ValidationError("bad strand header: " + tok);
            }
            continue;
        }
        first = false;
        if (tok[0] != 's') throw ValidationError("bad braid token: " + tok);
        size_t caret = tok.find('^');
        int i = 0, e = 1;
        try {
            i = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            if (caret != std::string::npos) e = std::stoi(tok.substr(caret + 1));
        } catch (...) {
            throw ValidationError("bad braid token: " + tok);
        }
        if (i < 1) throw ValidationError("bad braid token: " + tok);
        maxgen = std::max(maxgen, i);
        for (int k = 0; k < std::abs(e); ++k) w.letters.push_back(e >= 0 ? i : -i);
    }
    w.n = n >= 1 ? n : maxgen + 1;
    w.validate();
    return w;
}

inline std::string format_braid(const BraidWord& w) {
    std::ostringstream out;
    out << "n=" << w.n;
    for (int a : w.letters) {
        out << " s" << std::abs(a);
        if (a < 0) out << "^-1";
    }
    return out.str();
}

// ---- free-group action oracle -------------------------------------------

namespace detail {

// Words in F_n as signed 1-based indices, kept freely reduced.
inline void fg_append(std::vector<int>& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

inline void fg_append_word(std::vector<int>& w, const std::vector<int>& v, bool invert = false) {
    if (!invert) {
        for (int a : v) fg_append(w, a);
    } else {
        for (auto it = v.rbegin(); it != v.rend(); ++it) fg_append(w, -*it);
    }
}

inline std::vector<std::vector<int>> artin_action(const BraidWord& w) {
    std::vector<std::vector<int>> g(static_cast<size_t>(w.n));
    for (int i = 0; i < w.n; ++i) g[static_cast<size_t>(i)] = {i + 1};
    for (int a : w.letters) {
        size_t c = static_cast<size_t>(std::abs(a) - 1);
        if (a > 0) {
            // x_c -> x_c x_{c+1} x_c^-1, x_{c+1} -> x_c
            std::vector<int> conj;
            conj.reserve(2 * g[c].size() + g[c + 1].size());
            fg_append_word(conj, g[c]);
            fg_append_word(conj, g[c + 1]);
            fg_append_word(conj, g[c], true);
            g[c + 1] = std::move(g[c]);
            g[c] = std::move(conj);
        } else {
            // x_c -> x_{c+1}, x_{c+1} -> x_{c+1}^-1 x_c x_{c+1}
            std::vector<int> conj;
            conj.reserve(2 * g[c + 1].size() + g[c].size());
            fg_append_word(conj, g[c + 1], true);
            fg_append_word(conj, g[c]);
            fg_append_word(conj, g[c + 1]);
            g[c] = std::move(g[c + 1]);
            g[c + 1] = std::move(conj);
        }
    }
    return g;
}

}  // namespace detail

// Independent equality oracle: the faithful action of B_n on the free group
// F_n. Two words are equal iff the induced automorphisms agree on every
// generator.
inline bool artin_equal(const BraidWord& u, const BraidWord& v) {
    if (u.n != v.n) throw ValidationError("strand-count mismatch");
    return detail::artin_action(u) == detail::artin_action(v);
}

// ---- cabling --------------------------------------------------------------

namespace detail {

// Positive crossing of two adjacent bundles: the left bundle (width a,
// strand offset p, 0-based) passes over the right bundle (width b). Each
// right-bundle strand is walked to the left end one at a time.
inline void emit_block_crossing(std::vector<int>& out, int p, int a, int b, bool positive) {
    std::vector<int> word;
    for (int t = 0; t < b; ++t)
        for (int q = p + a + t; q >= p + t + 1; --q) word.push_back(q);  // 1-based generators
    if (positive) {
        out.insert(out.end(), word.begin(), word.end());
    } else {
        for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(-*it);
    }
}

}  // namespace detail

// Thicken strand j of b into widths[j] parallel strands. A crossing becomes a
// block crossing of the two bundles at their current widths; a negative
// crossing is the exact inverse of the positive block crossing that would
// undo it.
inline BraidWord cable(const BraidWord& b, const std::vector<int>& widths) {
    if (static_cast<int>(widths.size()) != b.n) throw ValidationError("width-length mismatch");
    int total = 0;
    for (int x : widths) {
        if (x < 1) throw ValidationError("widths must be positive");
        total += x;
    }
    std::vector<int> cur = widths;  // cur[j] = width of the bundle now at bundle position j
    BraidWord out{total, {}};
    for (int letter : b.letters) {
        int i = std::abs(letter);  // bundle positions i-1, i
        int p = 0;
        for (int j = 0; j < i - 1; ++j) p += cur[static_cast<size_t>(j)];
        int a = cur[static_cast<size_t>(i) - 1], bb = cur[static_cast<size_t>(i)];
        if (letter > 0)
            detail::emit_block_crossing(out.letters, p, a, bb, true);
        else
            detail::emit_block_crossing(out.letters, p, bb, a, false);
        std::swap(cur[static_cast<size_t>(i) - 1], cur[static_cast<size_t>(i)]);
    }
    return out;
}

// ---- strand deletion -------------------------------------------------------

namespace detail {

// Forget all strands outside keep (0-based strand ids). No precondition on
// the permutation; the result lives on |keep| strands ordered by start
// position.
inline BraidWord forget_strands(const BraidWord& w, const std::vector<char>& keep_mask, int kept) {
    std::vector<int> at(static_cast<size_t>(w.n));  // at[p] = strand at position p
    for (int x = 0; x < w.n; ++x) at[static_cast<size_t>(x)] = x;
    BraidWord out{kept, {}};
    for (int letter : w.letters) {
        int c = std::abs(letter) - 1;  // positions c, c+1
        int x = at[static_cast<size_t>(c)], y = at[static_cast<size_t>(c) + 1];
        if (keep_mask[static_cast<size_t>(x)] && keep_mask[static_cast<size_t>(y)]) {
            int rank = 0;  // kept strands strictly left of position c
            for (int p = 0; p < c; ++p)
                if (keep_mask[static_cast<size_t>(at[static_cast<size_t>(p)])]) ++rank;
            out.letters.push_back(letter > 0 ? rank + 1 : -(rank + 1));
        }
        std::swap(at[static_cast<size_t>(c)], at[static_cast<size_t>(c) + 1]);
    }
    return out;
}

}  // namespace detail

// Delete the strands outside keep (0-based ids). The kept set must be
// preserved setwise by the underlying permutation so that the result is a
// genuine braid on |keep| strands.
inline BraidWord delete_strands(const BraidWord& w, const std::vector<int>& keep) {
    if (keep.empty()) throw ValidationError("keep set must be nonempty");
    std::vector<char> mask(static_cast<size_t>(w.n), 0);
    for (int s : keep) {
        if (s < 0 || s >= w.n) throw ValidationError("keep strand out of range");
        mask[static_cast<size_t>(s)] = 1;
    }
    Permutation pi = permutation_of(w);
    for (int s = 0; s < w.n; ++s)
        if (mask[static_cast<size_t>(s)] && !mask[static_cast<size_t>(pi(s))])
            throw ValidationError("keep set not preserved by the braid's permutation");
    int kept = 0;
    for (char m : mask) kept += m;
    return detail::forget_strands(w, mask, kept);
}

}  // namespace stratcat
