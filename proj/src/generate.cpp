#include "fkmix/generate.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "fkmix/errors.hpp"

namespace fkmix {

namespace {

MultiGraph match_half_edges(const DegreeSequence& dn, Rng& rng) {
    std::vector<int> half;  // half-edge i belongs to half[i]
    half.reserve(static_cast<std::size_t>(dn.sum()));
    for (int v = 0; v < dn.n(); ++v)
        for (int k = 0; k < dn.degrees[v]; ++k) half.push_back(v);
    // Fisher–Yates shuffle then pair consecutive entries: a uniform matching.
    for (std::size_t i = half.size(); i > 1; --i)
        std::swap(half[i - 1], half[rng.uniform_int(i)]);
    MultiGraph g(dn.n());
    for (std::size_t i = 0; i + 1 < half.size(); i += 2) g.add_edge(half[i], half[i + 1]);
    return g;
}

bool is_simple(const MultiGraph& g) {
    std::vector<std::pair<int, int>> es;
    es.reserve(g.edges().size());
    for (auto [u, v] : g.edges()) {
        if (u == v) return false;
        es.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(es.begin(), es.end());
    return std::adjacent_find(es.begin(), es.end()) == es.end();
}

}  // namespace

MultiGraph sample_configuration_model(const DegreeSequence& dn, std::uint64_t seed) {
    if (!dn.even_sum()) throw InvalidInput("configuration model: odd degree sum");
    Rng rng(seed);
    return match_half_edges(dn, rng);
}

MultiGraph sample_simple_graph(const DegreeSequence& dn, std::uint64_t seed, int max_attempts) {
    if (!dn.is_graphical()) throw InvalidInput("sample_simple_graph: sequence is not graphical");
    Rng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng child = rng.stream(static_cast<std::uint64_t>(attempt));
        MultiGraph g = match_half_edges(dn, child);
        if (is_simple(g)) return g;
    }
    throw RetryExhausted("sample_simple_graph: no simple graph in given attempts");
}

MultiGraph sample_er_poisson_cloning(int n, double lambda, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("poisson cloning: n must be >= 1");
    if (lambda <= 0) throw InvalidInput("poisson cloning: lambda must be > 0");
    Rng rng(seed);
    std::vector<int> deg(n);
    std::int64_t total = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(rng.poisson(lambda));
        total += deg[v];
    }
    while (total % 2 != 0) {
        const int v = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
        total -= deg[v];
        deg[v] = static_cast<int>(rng.poisson(lambda));
        total += deg[v];
    }
    DegreeSequence dn(std::move(deg));
    Rng match = rng.stream(0xC0FFEE);
    return match_half_edges(dn, match);
}

}  // namespace fkmix
