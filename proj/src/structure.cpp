#include "fkmix/structure.hpp"

#include <cmath>

#include "fkmix/errors.hpp"
#include "fkmix/union_find.hpp"

namespace fkmix {

namespace {

int ball_excess(const MultiGraph& g, const Ball& b) {
    // components counted within the ball only
    UnionFind uf(g.n());
    int merges = 0;
    for (int e : b.edge_indices) {
        auto [u, v] = g.edge(e);
        if (uf.unite(u, v)) ++merges;
    }
    const int components = static_cast<int>(b.vertices.size()) - merges;
    return static_cast<int>(b.edge_indices.size()) - static_cast<int>(b.vertices.size()) +
           components;
}

}  // namespace

TreelikeReport is_LR_treelike(const MultiGraph& g, int L, int R) {
    if (L < 0 || R < 0) throw InvalidInput("is_LR_treelike: L, R must be non-negative");
    TreelikeReport rep;
    for (int v = 0; v < g.n(); ++v) {
        const int excess = ball_excess(g, ball(g, v, R));
        if (excess > rep.max_excess || rep.worst_vertex < 0) {
            rep.max_excess = excess;
            rep.worst_vertex = v;
        }
    }
    rep.ok = rep.max_excess <= L;
    return rep;
}

VolumeGrowthReport has_volume_growth(const MultiGraph& g, double gamma, double eps) {
    if (gamma <= 1.0) throw InvalidInput("has_volume_growth: gamma must be > 1");
    if (eps <= 0.0 || eps >= 0.5) throw InvalidInput("has_volume_growth: eps must be in (0, 1/2)");
    VolumeGrowthReport rep;
    const double logn = std::log(static_cast<double>(g.n())) / std::log(gamma);
    rep.r_lo = static_cast<int>(std::ceil(eps * logn));
    rep.r_hi = static_cast<int>(std::floor(0.5 * logn));
    if (rep.r_lo > rep.r_hi) return rep;  // empty window
    for (int v = 0; v < g.n(); ++v) {
        const auto dist = g.bfs_distances(v, rep.r_hi);
        std::vector<long long> count(rep.r_hi + 1, 0);
        for (int w = 0; w < g.n(); ++w)
            if (dist[w] >= 0 && dist[w] <= rep.r_hi) ++count[dist[w]];
        long long size = 0;
        for (int r = 0; r <= rep.r_hi; ++r) {
            size += count[r];
            if (r < rep.r_lo) continue;
            const double bound = std::pow(gamma, r);
            if (static_cast<double>(size) > bound) {
                rep.ok = false;
                rep.worst_vertex = v;
                rep.worst_radius = r;
                rep.worst_size = size;
                rep.bound = bound;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace fkmix
