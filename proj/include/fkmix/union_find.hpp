#pragma once

#include <numeric>
#include <vector>

namespace fkmix {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true if the union merged two distinct components.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        --components_;
        return true;
    }

    bool same(int a, int b) { return find(a) == find(b); }
    [[nodiscard]] int components() const { return components_; }
    [[nodiscard]] int size() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
    int components_;
};

}  // namespace fkmix
