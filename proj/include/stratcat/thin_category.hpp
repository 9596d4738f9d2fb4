#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stratcat/core.hpp"
#include "stratcat/preorder.hpp"

namespace stratcat {

// A category with at most one morphism between any ordered pair of objects,
// stored as a hom-existence relation. Validated to contain identities and to
// be closed under composition.
class ThinCategory {
public:
    ThinCategory(std::vector<std::string> objects, std::vector<std::vector<char>> hom)
        : objects_(std::move(objects)), hom_(std::move(hom)) {
        const size_t n = objects_.size();
        if (hom_.size() != n) throw ValidationError("hom matrix size mismatch");
        for (const auto& row : hom_)
            if (row.size() != n) throw ValidationError("hom matrix size mismatch");
        for (size_t x = 0; x < n; ++x)
            if (!hom_[x][x]) throw ValidationError("missing identity morphism");
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y) {
                if (!hom_[x][y]) continue;
                for (size_t z = 0; z < n; ++z)
                    if (hom_[y][z] && !hom_[x][z])
                        throw ValidationError("hom relation not closed under composition");
            }
    }

    int size() const { return static_cast<int>(objects_.size()); }
    const std::vector<std::string>& objects() const { return objects_; }
    bool hom(int x, int y) const {
        return hom_[static_cast<size_t>(x)][static_cast<size_t>(y)] != 0;
    }
    long long morphism_count() const {
        long long total = 0;
        for (const auto& row : hom_)
            for (char v : row) total += v ? 1 : 0;
        return total;
    }

private:
    std::vector<std::string> objects_;
    std::vector<std::vector<char>> hom_;
};

// The exit-path category of a poset: one morphism x -> y exactly when x <= y.
inline ThinCategory poset_category(const Poset& p) {
    return ThinCategory(p.elements(), p.matrix());
}

}  // namespace stratcat
