#pragma once

#include <vector>

#include "fkmix/union_find.hpp"

namespace fkmix {

// Random-cluster boundary condition: a partition of {0..universe-1}. Only
// non-singleton classes are stored; everything else is an implicit singleton.
class BoundaryPartition {
public:
    BoundaryPartition() = default;
    explicit BoundaryPartition(int universe) : universe_(universe) {}
    BoundaryPartition(int universe, std::vector<std::vector<int>> classes);

    static BoundaryPartition free(int universe) { return BoundaryPartition(universe); }
    // All of `verts` in one class.
    static BoundaryPartition wired(int universe, std::vector<int> verts);

    [[nodiscard]] int universe() const { return universe_; }
    [[nodiscard]] const std::vector<std::vector<int>>& classes() const { return classes_; }

    // Number of classes, counting implicit singletons.
    [[nodiscard]] int component_count() const;

    // Number of vertices lying in classes of size >= 2 (K-Sparse measure).
    [[nodiscard]] int sparsity() const;

    // Seed a union-find with this partition's merges.
    void apply(UnionFind& uf) const;

    // Smallest common coarsening.
    [[nodiscard]] BoundaryPartition join(const BoundaryPartition& other) const;

    // True iff this partition is a refinement of (finer than or equal to) other.
    [[nodiscard]] bool refines(const BoundaryPartition& other) const;

    bool operator==(const BoundaryPartition& other) const;

private:
    int universe_ = 0;
    std::vector<std::vector<int>> classes_;  // each sorted; classes sorted by first element
};

// D(phi, phi') of the boundary-distance definition: c(phi) + c(phi') - 2 c(join).
int partition_distance(const BoundaryPartition& a, const BoundaryPartition& b);

}  // namespace fkmix
