#pragma once

#include <numeric>
#include <vector>

#include "stratcat/core.hpp"

namespace stratcat {

// Permutation of {0..n-1} stored as an image array: img[x] is where x goes.
// Composition is diagrammatic throughout the library: a.then(b) applies a
// first, then b.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(int n) : img_(static_cast<size_t>(n)) {
        std::iota(img_.begin(), img_.end(), 0);
    }

    static Permutation from_images(std::vector<int> img) {
        Permutation p;
        p.img_ = std::move(img);
        std::vector<char> seen(p.img_.size(), 0);
        for (int v : p.img_) {
            if (v < 0 || v >= static_cast<int>(p.img_.size()) || seen[static_cast<size_t>(v)])
                throw ValidationError("not a permutation image array");
            seen[static_cast<size_t>(v)] = 1;
        }
        return p;
    }

    // Swaps c and c+1 (0-based).
    static Permutation transposition(int n, int c) {
        Permutation p(n);
        std::swap(p.img_[static_cast<size_t>(c)], p.img_[static_cast<size_t>(c) + 1]);
        return p;
    }

    // x -> n-1-x, the underlying permutation of the half twist.
    static Permutation half_twist(int n) {
        Permutation p(n);
        for (int x = 0; x < n; ++x) p.img_[static_cast<size_t>(x)] = n - 1 - x;
        return p;
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[static_cast<size_t>(x)]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int x = 0; x < size(); ++x)
            if (img_[static_cast<size_t>(x)] != x) return false;
        return true;
    }

    // Apply this, then b.
    Permutation then(const Permutation& b) const {
        Permutation r;
        r.img_.resize(img_.size());
        for (size_t x = 0; x < img_.size(); ++x)
            r.img_[x] = b.img_[static_cast<size_t>(img_[x])];
        return r;
    }

    Permutation inverse() const {
        Permutation r;
        r.img_.resize(img_.size());
        for (int x = 0; x < size(); ++x) r.img_[static_cast<size_t>(img_[static_cast<size_t>(x)])] = x;
        return r;
    }

    // Positions c with img[c] > img[c+1].
    std::vector<int> image_descents() const {
        std::vector<int> out;
        for (int c = 0; c + 1 < size(); ++c)
            if (img_[static_cast<size_t>(c)] > img_[static_cast<size_t>(c) + 1]) out.push_back(c);
        return out;
    }

    int inversions() const {
        int count = 0;
        for (int x = 0; x < size(); ++x)
            for (int y = x + 1; y < size(); ++y)
                if (img_[static_cast<size_t>(x)] > img_[static_cast<size_t>(y)]) ++count;
        return count;
    }

    // In-place: right-multiply by the transposition (c c+1), i.e. this.then(t_c).
    // Swaps the two *values* c and c+1 wherever they occur.
    void swap_values(int c) {
        int pc = -1, pc1 = -1;
        for (int x = 0; x < size(); ++x) {
            if (img_[static_cast<size_t>(x)] == c) pc = x;
            if (img_[static_cast<size_t>(x)] == c + 1) pc1 = x;
        }
        std::swap(img_[static_cast<size_t>(pc)], img_[static_cast<size_t>(pc1)]);
    }

    // In-place: left-multiply by the transposition, i.e. t_c.then(this).
    // Swaps the two *entries* at positions c and c+1.
    void swap_entries(int c) {
        std::swap(img_[static_cast<size_t>(c)], img_[static_cast<size_t>(c) + 1]);
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
    std::vector<int> img_;
};

}  // namespace stratcat
