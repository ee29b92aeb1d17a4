#include "fkmix/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fkmix/errors.hpp"
#include "fkmix/union_find.hpp"

namespace fkmix {

namespace {

std::vector<int> open_component_sizes(const MultiGraph& g, const RcConfiguration& omega) {
    UnionFind uf(g.n());
    for (int e = 0; e < g.m(); ++e)
        if (omega[e]) uf.unite(g.edge(e).first, g.edge(e).second);
    std::vector<int> size_of(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) ++size_of[uf.find(v)];
    std::vector<int> sizes;
    for (int v = 0; v < g.n(); ++v)
        if (size_of[v] > 0) sizes.push_back(size_of[v]);
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

}  // namespace

std::vector<RcConfiguration> shatter_configs(const MultiGraph& g, const RcParams& params,
                                             double t, int n_seeds, std::uint64_t seed,
                                             OracleKind kind) {
    if (t < 0) throw InvalidInput("shatter: t must be >= 0");
    std::vector<RcConfiguration> out;
    out.reserve(n_seeds);
    Rng master(seed);
    for (int s = 0; s < n_seeds; ++s) {
        Rng rng = master.stream(static_cast<std::uint64_t>(s));
        FkChain chain(g, BoundaryPartition(g.n()), params, RcConfiguration(g.m(), 1), kind);
        chain.run_continuous(t, rng);
        out.push_back(chain.config());
    }
    return out;
}

ShatterReport shatter_stats(const MultiGraph& g, const RcParams& params, double t, int n_seeds,
                            std::uint64_t seed, OracleKind kind) {
    ShatterReport report;
    report.t = t;
    report.n = g.n();
    for (const auto& omega : shatter_configs(g, params, t, n_seeds, seed, kind)) {
        auto sizes = open_component_sizes(g, omega);
        report.max_cluster.push_back(sizes.empty() ? 0 : sizes.front());
        report.component_sizes.push_back(std::move(sizes));
    }
    return report;
}

SparsityReport kr_sparse_check(const MultiGraph& g, const RcConfiguration& omega, int K, int R) {
    if (K < 0 || R < 0) throw InvalidInput("kr_sparse_check: K, R must be non-negative");
    if (static_cast<int>(omega.size()) != g.m())
        throw InvalidInput("kr_sparse_check: configuration size mismatch");
    const int n = g.n();
    // The sparsity of each ball's induced boundary only depends on open
    // clusters that intersect the ball, so group open edges by cluster once
    // and redo connectivity locally per ball.
    UnionFind global(n);
    for (int e = 0; e < g.m(); ++e)
        if (omega[e]) global.unite(g.edge(e).first, g.edge(e).second);
    std::vector<std::vector<int>> cluster_edges(n);
    for (int e = 0; e < g.m(); ++e)
        if (omega[e]) cluster_edges[global.find(g.edge(e).first)].push_back(e);

    SparsityReport report;
    std::vector<int> inside(n, -1);  // version-stamped ball membership
    for (int v = 0; v < n; ++v) {
        const Ball b = ball(g, v, R);
        for (int w : b.vertices) inside[w] = v;
        // clusters intersecting the ball; counts are tiny, linear dedupe is fine
        std::vector<int> roots;
        for (int w : b.vertices) {
            const int r = global.find(w);
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
        // local union-find over the touched clusters' vertices, excluding
        // open edges with both endpoints inside the ball
        int next = 0;
        std::map<int, int> relabel;
        auto id_of = [&](int w) {
            auto [it, fresh] = relabel.emplace(w, next);
            if (fresh) ++next;
            return it->second;
        };
        std::vector<std::pair<int, int>> local_edges;
        for (int r : roots)
            for (int e : cluster_edges[r]) {
                auto [x, y] = g.edge(e);
                if (inside[x] == v && inside[y] == v) continue;
                local_edges.emplace_back(id_of(x), id_of(y));
            }
        for (int w : b.vertices) id_of(w);
        UnionFind uf(next);
        for (auto [x, y] : local_edges) uf.unite(x, y);
        std::map<int, int> class_count;
        for (int w : b.vertices) ++class_count[uf.find(relabel[w])];
        int sparsity = 0;
        for (auto [root, count] : class_count)
            if (count >= 2) sparsity += count;
        if (sparsity > report.max_sparsity || report.argmax_vertex < 0) {
            report.max_sparsity = sparsity;
            report.argmax_vertex = v;
        }
    }
    report.ok = report.max_sparsity <= K;
    return report;
}

double influence_tv(const MultiGraph& g, const BoundaryPartition& xi, const BoundaryPartition& tau,
                    const RcParams& params, int v) {
    if (g.m() > 20) throw TooLarge("influence_tv: ball has more than 20 edges");
    if (v < 0 || v >= g.n()) throw InvalidInput("influence_tv: bad vertex");
    std::vector<int> incident;
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edge(e);
        if (a == v || b == v) incident.push_back(e);
    }
    const std::size_t states = std::size_t{1} << incident.size();
    const ExactRcDistribution da(g, xi, params);
    const ExactRcDistribution db(g, tau, params);
    std::vector<double> ma(states, 0.0), mb(states, 0.0);
    for (std::uint32_t mask = 0; mask < (1u << g.m()); ++mask) {
        std::size_t sub = 0;
        for (std::size_t i = 0; i < incident.size(); ++i)
            if ((mask >> incident[i]) & 1u) sub |= std::size_t{1} << i;
        ma[sub] += da.probability(mask);
        mb[sub] += db.probability(mask);
    }
    return total_variation(ma, mb);
}

namespace {

// m_j counts distinct adjacent vertices, so multi-edges contribute once
std::vector<int> distinct_neighbors(const MultiGraph& g, int v) {
    std::vector<int> out;
    for (auto [w, e] : g.neighbors(v))
        if (w != v) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool in_bottleneck(const PottsConfiguration& sigma, int v_star, const std::vector<int>& nbrs,
                   int q, int gap) {
    if (sigma[v_star] != 0) return false;
    std::vector<int> cnt(q, 0);
    for (int w : nbrs) ++cnt[sigma[w]];
    int best_other = 0;
    for (int j = 1; j < q; ++j) best_other = std::max(best_other, cnt[j]);
    return cnt[0] - best_other >= gap;
}

}  // namespace

double BottleneckReport::median_sweeps(int n) const {
    std::vector<double> xs;
    int censored = 0;
    for (const auto& s : samples) {
        if (s.censored) ++censored;
        xs.push_back(static_cast<double>(s.steps) / n);
    }
    if (samples.empty() || censored * 5 > static_cast<int>(samples.size()))
        throw InvalidInput("median_sweeps: more than 20% of samples censored");
    return median(std::move(xs));
}

BottleneckReport bottleneck_escape(const MultiGraph& g, double beta, int q, int v_star, double eps,
                                   int seeds, std::int64_t step_cap, std::uint64_t seed) {
    if (q < 2) throw InvalidInput("bottleneck_escape: q must be an integer >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("bottleneck_escape: eps must be in (0,1)");
    if (v_star < 0 || v_star >= g.n()) throw InvalidInput("bottleneck_escape: bad vertex");
    BottleneckReport report;
    report.v_star = v_star;
    report.d_star = g.degree(v_star);
    report.eps = eps;
    const int gap = static_cast<int>(std::floor(eps * report.d_star));
    const auto nbrs = distinct_neighbors(g, v_star);
    const double p = -std::expm1(-beta);
    std::vector<int> free_edges;
    for (int e = 0; e < g.m(); ++e) {
        const auto [a, b] = g.edge(e);
        if (a != v_star && b != v_star) free_edges.push_back(e);
    }
    Rng master(seed);
    for (int s = 0; s < seeds; ++s) {
        Rng rng = master.stream(static_cast<std::uint64_t>(s));
        // Edwards-Sokal start: draw omega from the random-cluster measure at
        // p = 1 - e^{-beta} conditioned on the edges at v_star being open
        // (clamp them and update only the rest), color every open cluster iid
        // uniform, then relabel so the cluster of v_star carries the
        // distinguished spin (a global label swap keeps the others uniform).
        // Without the conditioning a fraction of starts would sit on the
        // boundary of A_eps and exit immediately, measuring nothing.
        RcConfiguration omega(g.m(), 1);
        if (p > 0.0 && !free_edges.empty()) {
            FkChain fk(g, BoundaryPartition(g.n()),
                       RcParams(p, static_cast<double>(q)), std::move(omega));
            const auto burn = static_cast<std::int64_t>(64) * g.m();
            for (std::int64_t it = 0; it < burn; ++it)
                fk.update(free_edges[rng.uniform_int(free_edges.size())], rng.uniform());
            omega = fk.config();
        } else if (p <= 0.0) {
            // beta = 0: the conditioned measure closes every non-star edge
            for (int e : free_edges) omega[e] = 0;
        }
        PottsConfiguration sigma = es_coloring(g, omega, q, rng);
        const int c = sigma[v_star];
        for (auto& x : sigma) {
            if (x == c)
                x = 0;
            else if (x == 0)
                x = c;
        }
        PottsChain chain(g, beta, q, std::move(sigma));
        EscapeSample sample;
        while (sample.steps < step_cap) {
            const int v = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(g.n())));
            chain.glauber_step(v, rng.uniform());
            ++sample.steps;
            if (!in_bottleneck(chain.config(), v_star, nbrs, q, gap)) break;
        }
        sample.censored =
            sample.steps >= step_cap && in_bottleneck(chain.config(), v_star, nbrs, q, gap);
        report.samples.push_back(sample);
    }
    return report;
}

double potts_conductance(const MultiGraph& g, double beta, int q, int v_star, double eps) {
    const double count = std::pow(static_cast<double>(q), static_cast<double>(g.n()));
    if (count > 1e6) throw TooLarge("potts_conductance: state space too large");
    const ExactPottsDistribution mu(g, beta, q);
    const int gap = static_cast<int>(std::floor(eps * g.degree(v_star)));
    const auto nbrs = distinct_neighbors(g, v_star);
    const auto member = [&](const PottsConfiguration& sigma) {
        return in_bottleneck(sigma, v_star, nbrs, q, gap);
    };
    double mass_a = 0.0;
    double flow = 0.0;
    const double n = static_cast<double>(g.n());
    for (std::size_t s = 0; s < mu.states(); ++s) {
        PottsConfiguration sigma = mu.decode(s);
        if (!member(sigma)) continue;
        mass_a += mu.probability(s);
        // Q(sigma, sigma') over single-site resamplings leaving A_eps
        for (int v = 0; v < g.n(); ++v) {
            std::vector<int> cnt(q, 0);
            for (auto [w, e] : g.neighbors(v))
                if (w != v) ++cnt[sigma[w]];
            double total = 0.0;
            std::vector<double> w(q);
            const int cmax = *std::max_element(cnt.begin(), cnt.end());
            for (int i = 0; i < q; ++i) {
                w[i] = std::exp(beta * (cnt[i] - cmax));
                total += w[i];
            }
            const int old = sigma[v];
            for (int i = 0; i < q; ++i) {
                if (i == old) continue;
                sigma[v] = i;
                if (!member(sigma)) flow += mu.probability(s) * (1.0 / n) * (w[i] / total);
                sigma[v] = old;
            }
        }
    }
    if (mass_a <= 0.0 || mass_a >= 1.0)
        throw InvalidInput("potts_conductance: A_eps is trivial under mu");
    return flow / (mass_a * (1.0 - mass_a));
}

std::vector<std::int64_t> gw_generation_sizes(const OffspringDistribution& law, int depth,
                                              Rng& rng) {
    if (depth < 0) throw InvalidInput("gw_generation_sizes: negative depth");
    std::vector<std::int64_t> z{1};
    for (int d = 0; d < depth; ++d) {
        std::int64_t next = 0;
        for (std::int64_t i = 0; i < z.back(); ++i) next += law.sample(rng);
        z.push_back(next);
        if (next == 0) {
            while (static_cast<int>(z.size()) <= depth) z.push_back(0);
            break;
        }
    }
    return z;
}

}  // namespace fkmix
