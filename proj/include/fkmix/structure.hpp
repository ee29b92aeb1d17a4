#pragma once

#include "fkmix/multigraph.hpp"

namespace fkmix {

struct TreelikeReport {
    bool ok = true;
    int max_excess = 0;   // worst cycle excess over all balls
    int worst_vertex = -1;
};

// (L,R)-treelike: every radius-R ball has cycle excess <= L, where
// excess = |E| - |V| + (#components) of the induced ball subgraph.
TreelikeReport is_LR_treelike(const MultiGraph& g, int L, int R);

struct VolumeGrowthReport {
    bool ok = true;
    int worst_vertex = -1;
    int worst_radius = -1;
    long long worst_size = 0;
    double bound = 0.0;  // gamma^worst_radius
    int r_lo = 0, r_hi = -1;  // checked window, empty if r_lo > r_hi
};

// (gamma, eps)-volume growth: |B_r(v)| <= gamma^r for all v and all integer
// r in [eps log_gamma n, (1/2) log_gamma n]. Empty window is vacuously true.
VolumeGrowthReport has_volume_growth(const MultiGraph& g, double gamma, double eps);

}  // namespace fkmix
