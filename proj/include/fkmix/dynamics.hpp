#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fkmix/connectivity.hpp"
#include "fkmix/multigraph.hpp"
#include "fkmix/partition.hpp"
#include "fkmix/rc.hpp"
#include "fkmix/rng.hpp"

namespace fkmix {

enum class OracleKind { Auto, Naive, Hdt };

// Single-edge Glauber dynamics for the random-cluster model.
class FkChain {
public:
    FkChain(const MultiGraph& g, BoundaryPartition bc, RcParams params, RcConfiguration init,
            OracleKind kind = OracleKind::Auto);

    // One update at edge e with uniform u: open iff u <= rho, where rho is
    // phat at cut-edges and p otherwise.
    void update(int e, double u);

    // `steps` updates at uniform edges with fresh uniforms.
    void run_discrete(std::int64_t steps, Rng& rng);

    // Continuous time t: N ~ Poisson(t |E|) updates. Bit-identical to drawing
    // N yourself and calling run_discrete with the same generator.
    void run_continuous(double t, Rng& rng);

    [[nodiscard]] const RcConfiguration& config() const { return omega_; }
    [[nodiscard]] const RcParams& params() const { return params_; }
    [[nodiscard]] const MultiGraph& graph() const { return g_; }
    [[nodiscard]] ConnectivityOracle& oracle() { return *oracle_; }
    [[nodiscard]] std::int64_t steps() const { return steps_; }

private:
    MultiGraph g_;
    BoundaryPartition bc_;
    RcParams params_;
    RcConfiguration omega_;
    std::unique_ptr<ConnectivityOracle> oracle_;
    std::int64_t steps_ = 0;
};

struct CouplingResult {
    double time = 0.0;   // first event time with zero discrepancy
    bool coupled = false;
    std::int64_t events = 0;
    RcConfiguration final_upper;  // X^1 configuration when stopping
};

// Evolve X^1 (all open) and X^0 (all closed) under shared (time, edge,
// uniform) triples until they agree on every edge or t_max elapses.
CouplingResult couple_extremes(const MultiGraph& g, const BoundaryPartition& bc,
                               const RcParams& params, std::uint64_t seed, double t_max,
                               OracleKind kind = OracleKind::Auto);

// Single-site Potts Glauber dynamics with cached neighbor spin counts.
class PottsChain {
public:
    PottsChain(const MultiGraph& g, double beta, int q, PottsConfiguration init);

    // Resample sigma_v from the conditional law by inverse CDF on u.
    void glauber_step(int v, double u);

    void run_discrete(std::int64_t steps, Rng& rng);

    [[nodiscard]] const PottsConfiguration& config() const { return sigma_; }
    [[nodiscard]] int q() const { return q_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] const MultiGraph& graph() const { return g_; }

    // Neighbor spin counts for v (self-loops excluded, parallel edges double).
    [[nodiscard]] const std::vector<int>& neighbor_counts(int v) const { return counts_[v]; }

private:
    MultiGraph g_;
    double beta_;
    int q_;
    PottsConfiguration sigma_;
    std::vector<std::vector<int>> counts_;
};

// One Swendsen–Wang sweep: open monochromatic edges w.p. 1 - e^{-beta},
// then recolor each component uniformly.
void sw_step(const MultiGraph& g, double beta, int q, PottsConfiguration& sigma, Rng& rng);

}  // namespace fkmix
