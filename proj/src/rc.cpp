#include "fkmix/rc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fkmix/errors.hpp"
#include "fkmix/union_find.hpp"

namespace fkmix {

namespace {

double logsumexp(const std::vector<double>& xs) {
    const double m = *std::max_element(xs.begin(), xs.end());
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

UnionFind open_components(const MultiGraph& g, const BoundaryPartition& bc,
                          const RcConfiguration& omega) {
    UnionFind uf(g.n());
    bc.apply(uf);
    for (int e = 0; e < g.m(); ++e)
        if (omega[e]) uf.unite(g.edge(e).first, g.edge(e).second);
    return uf;
}

RcConfiguration mask_config(std::uint32_t mask, int m) {
    RcConfiguration omega(m, 0);
    for (int e = 0; e < m; ++e) omega[e] = (mask >> e) & 1u;
    return omega;
}

}  // namespace

RcParams::RcParams(double p_, double q_) : p(p_), q(q_) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("RcParams: p must be in (0,1)");
    if (!(q > 0.0)) throw InvalidInput("RcParams: q must be > 0");
    phat = p / (q * (1.0 - p) + p);
}

int component_count(const MultiGraph& g, const BoundaryPartition& bc,
                    const RcConfiguration& omega) {
    if (static_cast<int>(omega.size()) != g.m())
        throw InvalidInput("component_count: configuration size mismatch");
    return open_components(g, bc, omega).components();
}

double rc_log_weight(const MultiGraph& g, const BoundaryPartition& bc, const RcParams& params,
                     const RcConfiguration& omega) {
    if (static_cast<int>(omega.size()) != g.m())
        throw InvalidInput("rc_log_weight: configuration size mismatch");
    int open = 0;
    for (char bit : omega) open += bit ? 1 : 0;
    const int c = component_count(g, bc, omega);
    return open * std::log(params.p) + (g.m() - open) * std::log(1.0 - params.p) +
           c * std::log(params.q);
}

ExactRcDistribution::ExactRcDistribution(const MultiGraph& g, const BoundaryPartition& bc,
                                         const RcParams& params)
    : g_(g), bc_(bc), params_(params) {
    if (g.m() > kMaxEdges) throw TooLarge("ExactRcDistribution: too many edges");
    if (bc.universe() != g.n()) throw InvalidInput("ExactRcDistribution: boundary universe mismatch");
    const std::uint32_t total = 1u << g.m();
    log_weights_.resize(total);
    for (std::uint32_t mask = 0; mask < total; ++mask)
        log_weights_[mask] = rc_log_weight(g_, bc_, params_, mask_config(mask, g.m()));
    const double logz = logsumexp(log_weights_);
    probabilities_.resize(total);
    for (std::uint32_t mask = 0; mask < total; ++mask)
        probabilities_[mask] = std::exp(log_weights_[mask] - logz);
}

double ExactRcDistribution::edge_marginal(int e) const {
    if (e < 0 || e >= g_.m()) throw InvalidInput("edge_marginal: bad edge index");
    double acc = 0.0;
    for (std::uint32_t mask = 0; mask < probabilities_.size(); ++mask)
        if ((mask >> e) & 1u) acc += probabilities_[mask];
    return acc;
}

double ExactRcDistribution::pair_connectivity(int u, int v) const {
    return set_connectivity(u, {v});
}

double ExactRcDistribution::set_connectivity(int u, const std::vector<int>& targets) const {
    double acc = 0.0;
    for (std::uint32_t mask = 0; mask < probabilities_.size(); ++mask) {
        UnionFind uf = open_components(g_, bc_, mask_config(mask, g_.m()));
        for (int t : targets) {
            if (uf.same(u, t)) {
                acc += probabilities_[mask];
                break;
            }
        }
    }
    return acc;
}

int disagreement_count(const MultiGraph& g, const PottsConfiguration& sigma) {
    if (static_cast<int>(sigma.size()) != g.n())
        throw InvalidInput("disagreement_count: spin vector size mismatch");
    int d = 0;
    for (auto [u, v] : g.edges())
        if (sigma[u] != sigma[v]) ++d;
    return d;
}

double potts_log_weight(const MultiGraph& g, double beta, const PottsConfiguration& sigma) {
    return -beta * disagreement_count(g, sigma);
}

ExactPottsDistribution::ExactPottsDistribution(const MultiGraph& g, double beta, int q)
    : g_(g), q_(q) {
    if (q < 2) throw InvalidInput("ExactPottsDistribution: q must be an integer >= 2");
    const double count = std::pow(static_cast<double>(q), static_cast<double>(g.n()));
    if (count > kMaxStates) throw TooLarge("ExactPottsDistribution: state space too large");
    const auto total = static_cast<std::size_t>(count + 0.5);
    std::vector<double> log_weights(total);
    for (std::size_t s = 0; s < total; ++s)
        log_weights[s] = potts_log_weight(g_, beta, decode(s));
    const double logz = logsumexp(log_weights);
    probabilities_.resize(total);
    for (std::size_t s = 0; s < total; ++s) probabilities_[s] = std::exp(log_weights[s] - logz);
}

PottsConfiguration ExactPottsDistribution::decode(std::size_t state) const {
    PottsConfiguration sigma(g_.n());
    for (int v = 0; v < g_.n(); ++v) {
        sigma[v] = static_cast<int>(state % q_);
        state /= q_;
    }
    return sigma;
}

std::size_t ExactPottsDistribution::encode(const PottsConfiguration& sigma) const {
    std::size_t state = 0;
    for (int v = g_.n() - 1; v >= 0; --v) state = state * q_ + sigma[v];
    return state;
}

double ExactPottsDistribution::pair_agreement(int u, int v) const {
    double acc = 0.0;
    for (std::size_t s = 0; s < probabilities_.size(); ++s) {
        const PottsConfiguration sigma = decode(s);
        if (sigma[u] == sigma[v]) acc += probabilities_[s];
    }
    return acc;
}

PottsConfiguration es_coloring(const MultiGraph& g, const RcConfiguration& omega, int q,
                               Rng& rng) {
    if (q < 2) throw InvalidInput("es_coloring: q must be an integer >= 2");
    if (static_cast<int>(omega.size()) != g.m())
        throw InvalidInput("es_coloring: configuration size mismatch");
    UnionFind uf(g.n());
    for (int e = 0; e < g.m(); ++e)
        if (omega[e]) uf.unite(g.edge(e).first, g.edge(e).second);
    std::vector<int> color(g.n(), -1);
    PottsConfiguration sigma(g.n());
    for (int v = 0; v < g.n(); ++v) {
        const int root = uf.find(v);
        if (color[root] < 0) color[root] = static_cast<int>(rng.uniform_int(q));
        sigma[v] = color[root];
    }
    return sigma;
}

std::vector<double> es_pushforward(const ExactRcDistribution& rc, int q) {
    const MultiGraph& g = rc.graph();
    const double count = std::pow(static_cast<double>(q), static_cast<double>(g.n()));
    if (count > ExactPottsDistribution::kMaxStates) throw TooLarge("es_pushforward: too large");
    std::vector<double> out(static_cast<std::size_t>(count + 0.5), 0.0);
    const BoundaryPartition free_bc(g.n());
    if (!(rc.boundary() == free_bc))
        throw InvalidInput("es_pushforward: requires free boundary conditions");
    for (std::uint32_t mask = 0; mask < rc.probabilities().size(); ++mask) {
        const double pw = rc.probability(mask);
        if (pw <= 0.0) continue;
        UnionFind uf(g.n());
        for (int e = 0; e < g.m(); ++e)
            if ((mask >> e) & 1u) uf.unite(g.edge(e).first, g.edge(e).second);
        // roots and per-vertex component ids
        std::vector<int> root_of(g.n());
        std::vector<int> roots;
        for (int v = 0; v < g.n(); ++v) {
            const int r = uf.find(v);
            root_of[v] = r;
        }
        std::vector<int> comp_id(g.n(), -1);
        for (int v = 0; v < g.n(); ++v) {
            if (comp_id[root_of[v]] < 0) {
                comp_id[root_of[v]] = static_cast<int>(roots.size());
                roots.push_back(root_of[v]);
            }
        }
        const int c = static_cast<int>(roots.size());
        const double per = pw / std::pow(static_cast<double>(q), static_cast<double>(c));
        // enumerate colorings of the c components
        std::vector<int> colors(c, 0);
        while (true) {
            std::size_t state = 0;
            for (int v = g.n() - 1; v >= 0; --v) state = state * q + colors[comp_id[root_of[v]]];
            out[state] += per;
            int i = 0;
            for (; i < c; ++i) {
                if (++colors[i] < q) break;
                colors[i] = 0;
            }
            if (i == c) break;
        }
    }
    return out;
}

BoundaryPartition induced_boundary(const MultiGraph& g, const RcConfiguration& omega,
                                   const std::vector<int>& ball_vertices) {
    if (static_cast<int>(omega.size()) != g.m())
        throw InvalidInput("induced_boundary: configuration size mismatch");
    std::vector<char> inside(g.n(), 0);
    for (int v : ball_vertices) inside[v] = 1;
    UnionFind uf(g.n());
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        const bool ball_edge = inside[u] && inside[v];
        if (omega[e] && !ball_edge) uf.unite(u, v);
    }
    // group ball vertices by outside-connectivity root
    std::vector<std::vector<int>> by_root(g.n());
    for (int v : ball_vertices) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> classes;
    for (auto& members : by_root)
        if (members.size() >= 2) classes.push_back(std::move(members));
    return BoundaryPartition(g.n(), std::move(classes));
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw InvalidInput("total_variation: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return 0.5 * acc;
}

}  // namespace fkmix
