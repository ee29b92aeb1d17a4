#pragma once

#include <cstdint>
#include <vector>

#include "fkmix/degree_sequence.hpp"
#include "fkmix/dynamics.hpp"
#include "fkmix/fit.hpp"
#include "fkmix/multigraph.hpp"
#include "fkmix/partition.hpp"
#include "fkmix/rc.hpp"
#include "fkmix/rng.hpp"

namespace fkmix {

struct ShatterReport {
    double t = 0.0;
    int n = 0;
    std::vector<int> max_cluster;                   // per seed
    std::vector<std::vector<int>> component_sizes;  // per seed, sorted descending
};

// Run X^1 (all-open start) to continuous time t per seed; record the final
// component structure (free boundary).
ShatterReport shatter_stats(const MultiGraph& g, const RcParams& params, double t, int n_seeds,
                            std::uint64_t seed, OracleKind kind = OracleKind::Auto);

// Final configurations of the same runs, for downstream sparsity checks.
std::vector<RcConfiguration> shatter_configs(const MultiGraph& g, const RcParams& params,
                                             double t, int n_seeds, std::uint64_t seed,
                                             OracleKind kind = OracleKind::Auto);

struct SparsityReport {
    bool ok = true;
    int max_sparsity = 0;
    int argmax_vertex = -1;
};

// For every v, the sparsity of the boundary partition induced on B_R(v) by
// omega restricted to the outside edges; true iff the maximum is <= K.
SparsityReport kr_sparse_check(const MultiGraph& g, const RcConfiguration& omega, int K, int R);

// Exact TV distance between the two boundary conditions' marginals on the
// edges incident to v (enumeration; ball must have <= 20 edges).
double influence_tv(const MultiGraph& g, const BoundaryPartition& xi, const BoundaryPartition& tau,
                    const RcParams& params, int v);

struct EscapeSample {
    std::int64_t steps = 0;
    bool censored = false;
};

struct BottleneckReport {
    int v_star = -1;
    int d_star = 0;
    double eps = 0.0;
    std::vector<EscapeSample> samples;

    [[nodiscard]] double median_sweeps(int n) const;  // censored-aware; see impl
};

// Initialize sigma with v_star and its neighborhood at spin 0 (the
// distinguished spin) and the rest uniform; run single-site Glauber and
// record steps until the chain first leaves
//   A_eps = { sigma_{v*} = 0, m_0 - max_{j!=0} m_j >= floor(eps d_{v*}) }.
BottleneckReport bottleneck_escape(const MultiGraph& g, double beta, int q, int v_star, double eps,
                                   int seeds, std::int64_t step_cap, std::uint64_t seed);

// Exact conductance of A_eps under single-site Glauber, q^n <= 10^6 only.
double potts_conductance(const MultiGraph& g, double beta, int q, int v_star, double eps);

// Generation sizes Z_0..Z_depth of a Galton-Watson tree.
std::vector<std::int64_t> gw_generation_sizes(const OffspringDistribution& law, int depth,
                                              Rng& rng);

}  // namespace fkmix
