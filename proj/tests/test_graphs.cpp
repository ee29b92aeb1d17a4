#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "fkmix/degree_sequence.hpp"
#include "fkmix/errors.hpp"
#include "fkmix/generate.hpp"
#include "fkmix/multigraph.hpp"
#include "fkmix/structure.hpp"

using namespace fkmix;

namespace {

std::vector<std::pair<int, int>> canonical_edges(const MultiGraph& g) {
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : g.edges()) es.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(es.begin(), es.end());
    return es;
}

// All perfect matchings of the half-edge array, as canonical edge multisets.
void enumerate_matchings(std::vector<int>& half, std::vector<char>& used,
                         std::vector<std::pair<int, int>>& acc,
                         std::map<std::vector<std::pair<int, int>>, long>& out) {
    std::size_t first = 0;
    while (first < half.size() && used[first]) ++first;
    if (first == half.size()) {
        auto key = acc;
        std::sort(key.begin(), key.end());
        ++out[key];
        return;
    }
    used[first] = 1;
    for (std::size_t j = first + 1; j < half.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        acc.emplace_back(std::min(half[first], half[j]), std::max(half[first], half[j]));
        enumerate_matchings(half, used, acc, out);
        acc.pop_back();
        used[j] = 0;
    }
    used[first] = 0;
}

std::map<std::vector<std::pair<int, int>>, long> matching_law(const DegreeSequence& dn) {
    std::vector<int> half;
    for (int v = 0; v < dn.n(); ++v)
        for (int k = 0; k < dn.degrees[v]; ++k) half.push_back(v);
    std::vector<char> used(half.size(), 0);
    std::vector<std::pair<int, int>> acc;
    std::map<std::vector<std::pair<int, int>>, long> out;
    enumerate_matchings(half, used, acc, out);
    return out;
}

MultiGraph path_graph(int n) {
    MultiGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

MultiGraph cycle_graph(int n) {
    MultiGraph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

}  // namespace

TEST_CASE("effective offspring distribution") {
    SUBCASE("regular sequence is a point mass at degree minus one") {
        auto dist = effective_offspring(DegreeSequence({5, 5, 5, 5}));
        REQUIRE(dist.support.size() == 1);
        CHECK(dist.support[0] == 4);
        CHECK(dist.probabilities[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("mixed degrees") {
        auto dist = effective_offspring(DegreeSequence({1, 1, 2, 2}));
        REQUIRE(dist.support == std::vector<int>{0, 1});
        CHECK(dist.probabilities[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
        CHECK(dist.probabilities[1] == doctest::Approx(2.0 / 3).epsilon(1e-12));
        CHECK(dist.mean() == doctest::Approx(2.0 / 3).epsilon(1e-12));
    }
    SUBCASE("two leaves") {
        auto dist = effective_offspring(DegreeSequence({1, 1}));
        CHECK(dist.mean() == doctest::Approx(0.0));
    }
    SUBCASE("all-zero sequence is rejected") {
        CHECK_THROWS_AS(effective_offspring(DegreeSequence({0, 0})), InvalidInput);
    }
    SUBCASE("mean matches the closed form sum d(d-1)/sum d") {
        const DegreeSequence dn({1, 3, 3, 4, 7, 2, 2, 2});
        double num = 0, den = 0;
        for (int d : dn.degrees) {
            num += static_cast<double>(d) * (d - 1);
            den += d;
        }
        CHECK(effective_offspring(dn).mean() == doctest::Approx(num / den).epsilon(1e-12));
    }
}

TEST_CASE("truncated sequence") {
    CHECK_THROWS_AS(truncated_sequence(DegreeSequence({1, 1, 2})), InvalidInput);
    CHECK_THROWS_AS(truncated_sequence(DegreeSequence({1, 1, 2, 3})), InvalidInput);
    SUBCASE("removes the smallest ceil(2 sqrt n) entries") {
        std::vector<int> d(100, 1);
        d.insert(d.end(), 100, 3);
        const auto got = truncated_sequence(DegreeSequence(d));
        // ceil(2 sqrt 200) = 29 ones removed
        CHECK(got.n() == 171);
        CHECK(std::count(got.degrees.begin(), got.degrees.end(), 1) == 71);
        CHECK(std::count(got.degrees.begin(), got.degrees.end(), 3) == 100);
    }
    SUBCASE("permutation invariance") {
        std::vector<int> a{4, 1, 3, 2, 5, 9, 2, 2, 7, 1, 8, 3, 3, 6, 2, 4};
        std::vector<int> b = a;
        std::reverse(b.begin(), b.end());
        auto ta = truncated_sequence(DegreeSequence(a)).degrees;
        auto tb = truncated_sequence(DegreeSequence(b)).degrees;
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        CHECK(ta == tb);
    }
}

TEST_CASE("configuration model") {
    SUBCASE("odd degree sum is rejected") {
        CHECK_THROWS_AS(sample_configuration_model(DegreeSequence({1, 1, 1}), 7), InvalidInput);
    }
    SUBCASE("degrees are realized exactly, self-loops counting twice") {
        const DegreeSequence dn({2, 2, 2, 5, 1, 0, 4});
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto g = sample_configuration_model(dn, seed);
            for (int v = 0; v < dn.n(); ++v) CHECK(g.degree(v) == dn.degrees[v]);
        }
    }
    SUBCASE("single matching cases") {
        const auto g = sample_configuration_model(DegreeSequence({1, 1}), 3);
        REQUIRE(g.m() == 1);
        CHECK(canonical_edges(g) == std::vector<std::pair<int, int>>{{0, 1}});
    }
    SUBCASE("uniform over the three matchings of (2,2)") {
        // parallel pair {01,01} arises from 2 of 3 matchings
        const int trials = 30000;
        int parallel = 0;
        for (int seed = 0; seed < trials; ++seed) {
            const auto g = sample_configuration_model(DegreeSequence({2, 2}),
                                                      static_cast<std::uint64_t>(seed));
            const auto es = canonical_edges(g);
            if (es == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}}) ++parallel;
        }
        const double freq = static_cast<double>(parallel) / trials;
        const double sigma = std::sqrt((2.0 / 3) * (1.0 / 3) / trials);
        CHECK(std::abs(freq - 2.0 / 3) < 3.5 * sigma);
    }
    SUBCASE("sampled matchings match exhaustive enumeration on tiny sequences") {
        for (const auto& degrees :
             {std::vector<int>{2, 2}, std::vector<int>{1, 1, 2, 2}, std::vector<int>{3, 1, 1, 1}}) {
            const DegreeSequence dn(degrees);
            const auto law = matching_law(dn);
            long total = 0;
            for (const auto& [key, count] : law) total += count;
            const int trials = 20000;
            std::map<std::vector<std::pair<int, int>>, long> observed;
            for (int seed = 0; seed < trials; ++seed)
                ++observed[canonical_edges(
                    sample_configuration_model(dn, static_cast<std::uint64_t>(seed) + 999))];
            for (const auto& [key, count] : law) {
                const double expect = static_cast<double>(count) / total;
                const double freq = static_cast<double>(observed[key]) / trials;
                const double sigma = std::sqrt(expect * (1 - expect) / trials);
                CHECK(std::abs(freq - expect) < 4 * sigma + 1e-9);
            }
        }
    }
}

TEST_CASE("simple graph sampling") {
    SUBCASE("forced outcomes") {
        CHECK(canonical_edges(sample_simple_graph(DegreeSequence({1, 1}), 0, 100)) ==
              std::vector<std::pair<int, int>>{{0, 1}});
        const auto tri = sample_simple_graph(DegreeSequence({2, 2, 2}), 5, 1000);
        CHECK(canonical_edges(tri) ==
              std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    }
    SUBCASE("non-graphical sequences are rejected up front") {
        CHECK_THROWS_AS(sample_simple_graph(DegreeSequence({2, 2}), 0, 100), InvalidInput);
        CHECK_THROWS_AS(sample_simple_graph(DegreeSequence({3, 1}), 0, 100), InvalidInput);
    }
    SUBCASE("graphicality check") {
        CHECK(DegreeSequence({3, 3, 3, 3}).is_graphical());
        CHECK_FALSE(DegreeSequence({2, 2}).is_graphical());
        CHECK_FALSE(DegreeSequence({1, 1, 1}).is_graphical());
        CHECK(DegreeSequence({0, 0}).is_graphical());
    }
}

TEST_CASE("Poisson cloning") {
    SUBCASE("degree sum is always even") {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto g = sample_er_poisson_cloning(37, 1.7, seed);
            std::int64_t total = 0;
            for (int v = 0; v < g.n(); ++v) total += g.degree(v);
            CHECK(total % 2 == 0);
        }
    }
    SUBCASE("empirical mean degree concentrates") {
        const auto g = sample_er_poisson_cloning(10000, 2.0, 42);
        double mean = 0;
        for (int v = 0; v < g.n(); ++v) mean += g.degree(v);
        mean /= g.n();
        CHECK(std::abs(mean - 2.0) < 0.1);
    }
    SUBCASE("vanishing rate gives an empty graph") {
        const auto g = sample_er_poisson_cloning(100, 1e-9, 1);
        CHECK(g.m() == 0);
    }
}

TEST_CASE("balls") {
    SUBCASE("radius zero") {
        const auto g = path_graph(3);
        const auto b = ball(g, 1, 0);
        CHECK(b.vertices == std::vector<int>{1});
        CHECK(b.edge_indices.empty());
        CHECK(b.boundary == std::vector<int>{1});
    }
    SUBCASE("path center") {
        const auto g = path_graph(3);
        const auto b = ball(g, 1, 1);
        CHECK(b.vertices == std::vector<int>{0, 1, 2});
        CHECK(b.edge_indices.size() == 2);
        CHECK(b.boundary == std::vector<int>{0, 2});
    }
    SUBCASE("triangle includes the far edge") {
        const auto g = cycle_graph(3);
        const auto b = ball(g, 0, 1);
        CHECK(b.vertices.size() == 3);
        CHECK(b.edge_indices.size() == 3);
        CHECK(b.boundary == std::vector<int>{1, 2});
    }
}

TEST_CASE("treelikeness") {
    SUBCASE("trees have excess zero") {
        const auto rep = is_LR_treelike(path_graph(10), 0, 4);
        CHECK(rep.ok);
        CHECK(rep.max_excess == 0);
    }
    SUBCASE("triangle") {
        CHECK_FALSE(is_LR_treelike(cycle_graph(3), 0, 1).ok);
        CHECK(is_LR_treelike(cycle_graph(3), 1, 1).ok);
    }
    SUBCASE("two triangles sharing a vertex") {
        MultiGraph g(5);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        g.add_edge(0, 3);
        g.add_edge(3, 4);
        g.add_edge(4, 0);
        const auto rep = is_LR_treelike(g, 1, 1);
        CHECK_FALSE(rep.ok);
        CHECK(rep.max_excess == 2);
        CHECK(rep.worst_vertex == 0);
    }
    SUBCASE("monotone in L") {
        const auto g = cycle_graph(5);
        bool prev = false;
        for (int L = 0; L <= 3; ++L) {
            const bool ok = is_LR_treelike(g, L, 3).ok;
            CHECK((!prev || ok));
            prev = ok;
        }
    }
}

TEST_CASE("volume growth") {
    SUBCASE("empty window is vacuous") {
        CHECK(has_volume_growth(path_graph(2), 2.0, 0.4).ok);
    }
    SUBCASE("star violates growth at its center") {
        MultiGraph g(51);
        for (int v = 1; v <= 50; ++v) g.add_edge(0, v);
        const auto rep = has_volume_growth(g, 2.0, 0.1);
        CHECK_FALSE(rep.ok);
        CHECK(rep.worst_vertex == 0);
        CHECK(rep.worst_radius == 1);
    }
    SUBCASE("long cycles grow slowly") {
        for (int n : {64, 256, 1024}) CHECK(has_volume_growth(cycle_graph(n), 2.0, 0.45).ok);
    }
    SUBCASE("monotone in gamma") {
        MultiGraph g(51);
        for (int v = 1; v <= 50; ++v) g.add_edge(0, v);
        CHECK_FALSE(has_volume_growth(g, 2.0, 0.1).ok);
        CHECK(has_volume_growth(g, 60.0, 0.1).ok);
    }
}

TEST_CASE("edge list round trip") {
    auto g = cycle_graph(4);
    g.add_edge(2, 2);
    const std::string path = "/tmp/fkmix_edge_list_test.txt";
    write_edge_list_file(path, g);
    const auto h = read_edge_list_file(path);
    CHECK(h.n() == g.n());
    CHECK(h.edges() == g.edges());
}
