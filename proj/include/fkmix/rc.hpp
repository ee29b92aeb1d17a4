#pragma once

#include <cstdint>
#include <vector>

#include "fkmix/multigraph.hpp"
#include "fkmix/partition.hpp"
#include "fkmix/rng.hpp"

namespace fkmix {

struct RcParams {
    double p;
    double q;
    double phat;  // p / (q(1-p) + p)

    RcParams(double p_, double q_);
};

// Open-edge indicator, indexed like the graph's edge list.
using RcConfiguration = std::vector<char>;

// Spin per vertex, values in {0..q-1}.
using PottsConfiguration = std::vector<int>;

// Components of the open subgraph after merging each boundary class.
int component_count(const MultiGraph& g, const BoundaryPartition& bc, const RcConfiguration& omega);

// log of p^{|omega|} (1-p)^{|E|-|omega|} q^{c(omega; bc)}.
double rc_log_weight(const MultiGraph& g, const BoundaryPartition& bc, const RcParams& params,
                     const RcConfiguration& omega);

// Brute-force oracle over all 2^{|E|} configurations.
class ExactRcDistribution {
public:
    static constexpr int kMaxEdges = 22;

    ExactRcDistribution(const MultiGraph& g, const BoundaryPartition& bc, const RcParams& params);

    [[nodiscard]] double log_weight(std::uint32_t mask) const { return log_weights_[mask]; }
    [[nodiscard]] double probability(std::uint32_t mask) const { return probabilities_[mask]; }
    [[nodiscard]] const std::vector<double>& probabilities() const { return probabilities_; }

    [[nodiscard]] double edge_marginal(int e) const;

    // P(u connected to v), boundary merges included.
    [[nodiscard]] double pair_connectivity(int u, int v) const;

    // P(u connected to at least one vertex of targets).
    [[nodiscard]] double set_connectivity(int u, const std::vector<int>& targets) const;

    [[nodiscard]] const MultiGraph& graph() const { return g_; }
    [[nodiscard]] const RcParams& params() const { return params_; }
    [[nodiscard]] const BoundaryPartition& boundary() const { return bc_; }

private:
    MultiGraph g_;
    BoundaryPartition bc_;
    RcParams params_;
    std::vector<double> log_weights_;
    std::vector<double> probabilities_;
};

// Number of edges whose endpoints carry different spins.
int disagreement_count(const MultiGraph& g, const PottsConfiguration& sigma);

double potts_log_weight(const MultiGraph& g, double beta, const PottsConfiguration& sigma);

// Exact Potts law over all q^n spin assignments (state index in base q,
// vertex 0 least significant).
class ExactPottsDistribution {
public:
    static constexpr double kMaxStates = 1e7;

    ExactPottsDistribution(const MultiGraph& g, double beta, int q);

    [[nodiscard]] int q() const { return q_; }
    [[nodiscard]] std::size_t states() const { return probabilities_.size(); }
    [[nodiscard]] double probability(std::size_t state) const { return probabilities_[state]; }
    [[nodiscard]] const std::vector<double>& probabilities() const { return probabilities_; }

    [[nodiscard]] PottsConfiguration decode(std::size_t state) const;
    [[nodiscard]] std::size_t encode(const PottsConfiguration& sigma) const;

    [[nodiscard]] double pair_agreement(int u, int v) const;

private:
    MultiGraph g_;
    int q_;
    std::vector<double> probabilities_;
};

// Uniform independent spin per omega-component.
PottsConfiguration es_coloring(const MultiGraph& g, const RcConfiguration& omega, int q, Rng& rng);

// Exact pushforward of the random-cluster law through component coloring:
// a distribution over the q^n spin states, comparable to ExactPottsDistribution
// at beta = -ln(1-p).
std::vector<double> es_pushforward(const ExactRcDistribution& rc, int q);

// Partition of ball vertices by connectivity in omega restricted to the edges
// outside the ball (universe is the whole graph; classes touch only the ball).
BoundaryPartition induced_boundary(const MultiGraph& g, const RcConfiguration& omega,
                                   const std::vector<int>& ball_vertices);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace fkmix
