#include "fkmix/partition.hpp"

#include <algorithm>
#include <map>

#include "fkmix/errors.hpp"

namespace fkmix {

namespace {

std::vector<std::vector<int>> canonicalize(int universe, std::vector<std::vector<int>> classes) {
    std::vector<char> seen(universe, 0);
    std::vector<std::vector<int>> out;
    for (auto& cls : classes) {
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        if (cls.size() < 2) continue;
        for (int v : cls) {
            if (v < 0 || v >= universe) throw InvalidInput("partition: vertex out of range");
            if (seen[v]) throw InvalidInput("partition: classes overlap");
            seen[v] = 1;
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<std::vector<int>> classes_from_uf(UnionFind& uf) {
    std::map<int, std::vector<int>> by_root;
    for (int v = 0; v < uf.size(); ++v) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : by_root)
        if (members.size() >= 2) out.push_back(std::move(members));
    return out;
}

}  // namespace

BoundaryPartition::BoundaryPartition(int universe, std::vector<std::vector<int>> classes)
    : universe_(universe), classes_(canonicalize(universe, std::move(classes))) {
    if (universe < 0) throw InvalidInput("partition: negative universe");
}

BoundaryPartition BoundaryPartition::wired(int universe, std::vector<int> verts) {
    return BoundaryPartition(universe, {std::move(verts)});
}

int BoundaryPartition::component_count() const {
    int c = universe_;
    for (const auto& cls : classes_) c -= static_cast<int>(cls.size()) - 1;
    return c;
}

int BoundaryPartition::sparsity() const {
    int s = 0;
    for (const auto& cls : classes_) s += static_cast<int>(cls.size());
    return s;
}

void BoundaryPartition::apply(UnionFind& uf) const {
    if (uf.size() < universe_) throw InvalidInput("partition: union-find too small");
    for (const auto& cls : classes_)
        for (std::size_t i = 1; i < cls.size(); ++i) uf.unite(cls[0], cls[i]);
}

BoundaryPartition BoundaryPartition::join(const BoundaryPartition& other) const {
    if (universe_ != other.universe_) throw InvalidInput("partition join: universe mismatch");
    UnionFind uf(universe_);
    apply(uf);
    other.apply(uf);
    return BoundaryPartition(universe_, classes_from_uf(uf));
}

bool BoundaryPartition::refines(const BoundaryPartition& other) const {
    if (universe_ != other.universe_) throw InvalidInput("partition refines: universe mismatch");
    return join(other) == other;
}

bool BoundaryPartition::operator==(const BoundaryPartition& other) const {
    return universe_ == other.universe_ && classes_ == other.classes_;
}

int partition_distance(const BoundaryPartition& a, const BoundaryPartition& b) {
    if (a.universe() != b.universe()) throw InvalidInput("partition_distance: universe mismatch");
    const BoundaryPartition j = a.join(b);
    return a.component_count() + b.component_count() - 2 * j.component_count();
}

}  // namespace fkmix
