#include "fkmix/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "fkmix/errors.hpp"
#include "fkmix/union_find.hpp"

namespace fkmix {

namespace {

std::unique_ptr<ConnectivityOracle> build_oracle(const MultiGraph& g, const BoundaryPartition& bc,
                                                 const RcConfiguration& omega, OracleKind kind) {
    switch (kind) {
        case OracleKind::Naive:
            return make_naive_oracle(g, bc, omega);
        case OracleKind::Hdt:
            return make_hdt_oracle(g, bc, omega);
        default:
            return make_oracle(g, bc, omega);
    }
}

}  // namespace

FkChain::FkChain(const MultiGraph& g, BoundaryPartition bc, RcParams params, RcConfiguration init,
                 OracleKind kind)
    : g_(g), bc_(std::move(bc)), params_(params), omega_(std::move(init)) {
    if (static_cast<int>(omega_.size()) != g_.m())
        throw InvalidInput("FkChain: configuration size mismatch");
    oracle_ = build_oracle(g_, bc_, omega_, kind);
}

void FkChain::update(int e, double u) {
    if (e < 0 || e >= g_.m()) throw InvalidInput("FkChain: bad edge index");
    // Close e first so the cut-edge query never sees e itself, then decide.
    if (omega_[e]) oracle_->set_edge(e, false);
    auto [a, b] = g_.edge(e);
    const bool cut = (a != b) && !oracle_->connected(a, b);
    const double rho = cut ? params_.phat : params_.p;
    const bool open = u <= rho;
    omega_[e] = open ? 1 : 0;
    if (open) oracle_->set_edge(e, true);
    ++steps_;
}

void FkChain::run_discrete(std::int64_t steps, Rng& rng) {
    const int m = g_.m();
    if (m == 0) return;
    for (std::int64_t i = 0; i < steps; ++i) {
        const int e = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m)));
        update(e, rng.uniform());
    }
}

void FkChain::run_continuous(double t, Rng& rng) {
    if (t < 0) throw InvalidInput("FkChain: negative time");
    if (g_.m() == 0 || t == 0.0) return;
    const auto events = static_cast<std::int64_t>(rng.poisson(t * g_.m()));
    run_discrete(events, rng);
}

CouplingResult couple_extremes(const MultiGraph& g, const BoundaryPartition& bc,
                               const RcParams& params, std::uint64_t seed, double t_max,
                               OracleKind kind) {
    if (t_max <= 0) throw InvalidInput("couple_extremes: t_max must be > 0");
    CouplingResult result;
    const int m = g.m();
    if (m == 0) {
        result.coupled = true;
        return result;
    }
    FkChain upper(g, bc, params, RcConfiguration(m, 1), kind);
    FkChain lower(g, bc, params, RcConfiguration(m, 0), kind);
    int discrepancy = m;
    Rng rng(seed);
    Rng clock = rng.stream(0);
    Rng schedule = rng.stream(1);
    double t = 0.0;
    while (true) {
        t += clock.exponential(static_cast<double>(m));
        if (t > t_max) break;
        const int e = static_cast<int>(schedule.uniform_int(static_cast<std::uint64_t>(m)));
        const double u = schedule.uniform();
        const bool before = upper.config()[e] == lower.config()[e];
        upper.update(e, u);
        lower.update(e, u);
        const bool after = upper.config()[e] == lower.config()[e];
        if (before != after) discrepancy += after ? -1 : 1;
        ++result.events;
        if (discrepancy == 0) {
            result.coupled = true;
            result.time = t;
            break;
        }
    }
    if (!result.coupled) result.time = t_max;
    result.final_upper = upper.config();
    return result;
}

PottsChain::PottsChain(const MultiGraph& g, double beta, int q, PottsConfiguration init)
    : g_(g), beta_(beta), q_(q), sigma_(std::move(init)) {
    if (q < 2) throw InvalidInput("PottsChain: q must be an integer >= 2");
    if (static_cast<int>(sigma_.size()) != g_.n())
        throw InvalidInput("PottsChain: spin vector size mismatch");
    for (int s : sigma_)
        if (s < 0 || s >= q) throw InvalidInput("PottsChain: spin out of range");
    counts_.assign(g_.n(), std::vector<int>(q, 0));
    for (int v = 0; v < g_.n(); ++v)
        for (auto [w, e] : g_.neighbors(v))
            if (w != v) ++counts_[v][sigma_[w]];
}

void PottsChain::glauber_step(int v, double u) {
    if (v < 0 || v >= g_.n()) throw InvalidInput("PottsChain: bad vertex");
    const auto& cnt = counts_[v];
    const int cmax = *std::max_element(cnt.begin(), cnt.end());
    double total = 0.0;
    std::vector<double> w(q_);
    for (int i = 0; i < q_; ++i) {
        w[i] = std::exp(beta_ * (cnt[i] - cmax));
        total += w[i];
    }
    int pick = q_ - 1;
    double acc = 0.0;
    for (int i = 0; i < q_; ++i) {
        acc += w[i] / total;
        if (u <= acc) {
            pick = i;
            break;
        }
    }
    const int old = sigma_[v];
    if (pick == old) return;
    sigma_[v] = pick;
    for (auto [nbr, e] : g_.neighbors(v)) {
        if (nbr == v) continue;
        --counts_[nbr][old];
        ++counts_[nbr][pick];
    }
}

void PottsChain::run_discrete(std::int64_t steps, Rng& rng) {
    for (std::int64_t i = 0; i < steps; ++i) {
        const int v = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(g_.n())));
        glauber_step(v, rng.uniform());
    }
}

void sw_step(const MultiGraph& g, double beta, int q, PottsConfiguration& sigma, Rng& rng) {
    if (q < 2) throw InvalidInput("sw_step: q must be an integer >= 2");
    if (beta < 0) throw InvalidInput("sw_step: beta must be >= 0");
    const double p = 1.0 - std::exp(-beta);
    UnionFind uf(g.n());
    for (auto [u, v] : g.edges())
        if (sigma[u] == sigma[v] && rng.uniform() < p) uf.unite(u, v);
    std::vector<int> color(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        const int root = uf.find(v);
        if (color[root] < 0) color[root] = static_cast<int>(rng.uniform_int(q));
        sigma[v] = color[root];
    }
}

}  // namespace fkmix
