#include <cmath>

#include "doctest.h"
#include "fkmix/diagnostics.hpp"
#include "fkmix/errors.hpp"
#include "fkmix/thresholds.hpp"

using namespace fkmix;

namespace {

MultiGraph cycle_graph(int n) {
    MultiGraph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

}  // namespace

TEST_CASE("shatter statistics") {
    SUBCASE("t = 0 keeps the all-open configuration") {
        const auto g = cycle_graph(8);
        const auto rep = shatter_stats(g, RcParams(0.5, 2.0), 0.0, 3, 11);
        for (int mc : rep.max_cluster) CHECK(mc == 8);
    }
    SUBCASE("component sizes sum to n and tails are monotone") {
        const auto g = cycle_graph(30);
        const auto rep = shatter_stats(g, RcParams(0.4, 2.0), 10.0, 10, 21);
        for (const auto& sizes : rep.component_sizes) {
            int total = 0;
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                total += sizes[i];
                if (i > 0) CHECK(sizes[i] <= sizes[i - 1]);
            }
            CHECK(total == 30);
        }
    }
    SUBCASE("tiny p shatters everything") {
        const auto g = cycle_graph(40);
        const auto rep = shatter_stats(g, RcParams(0.01, 2.0), 40.0, 5, 31);
        for (int mc : rep.max_cluster) CHECK(mc <= 4);
    }
}

TEST_CASE("kr sparsity check") {
    SUBCASE("all closed is 0-sparse") {
        const auto g = cycle_graph(12);
        const auto rep = kr_sparse_check(g, RcConfiguration(12, 0), 0, 2);
        CHECK(rep.ok);
        CHECK(rep.max_sparsity == 0);
    }
    SUBCASE("open long cycle joins each ball's two arcs") {
        const auto g = cycle_graph(12);
        const auto rep = kr_sparse_check(g, RcConfiguration(12, 1), 1, 2);
        CHECK_FALSE(rep.ok);
        CHECK(rep.max_sparsity == 2);
        CHECK(kr_sparse_check(g, RcConfiguration(12, 1), 2, 2).ok);
    }
    SUBCASE("radius 0 balls are always 0-sparse") {
        const auto g = cycle_graph(9);
        CHECK(kr_sparse_check(g, RcConfiguration(9, 1), 0, 0).ok);
    }
    SUBCASE("monotone under closing edges") {
        const auto g = cycle_graph(10);
        RcConfiguration full(10, 1);
        RcConfiguration partial = full;
        partial[3] = partial[7] = 0;
        const int R = 2;
        // pointwise: sparsity under fewer open edges never increases
        for (int v = 0; v < g.n(); ++v) {
            const auto b = ball(g, v, R);
            const int s_full = induced_boundary(g, full, b.vertices).sparsity();
            const int s_partial = induced_boundary(g, partial, b.vertices).sparsity();
            CHECK(s_partial <= s_full);
        }
    }
}

TEST_CASE("influence decay on small balls") {
    const RcParams params(0.4, 2.0);
    SUBCASE("identical boundaries give zero") {
        MultiGraph g(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        const auto bc = BoundaryPartition::wired(3, {0, 2});
        CHECK(influence_tv(g, bc, bc, params, 1) == doctest::Approx(0.0));
    }
    SUBCASE("singleton classes equal free") {
        MultiGraph g(2);
        g.add_edge(0, 1);
        const BoundaryPartition a(2);
        const BoundaryPartition b(2, {{1}});
        CHECK(influence_tv(g, a, b, params, 0) == doctest::Approx(0.0));
    }
    SUBCASE("symmetry and triangle inequality through free") {
        MultiGraph g(4);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        const BoundaryPartition free_bc(4);
        const auto xi = BoundaryPartition::wired(4, {1, 2, 3});
        const auto tau = BoundaryPartition::wired(4, {1, 2});
        const double d_xt = influence_tv(g, xi, tau, params, 0);
        const double d_tx = influence_tv(g, tau, xi, params, 0);
        CHECK(d_xt == doctest::Approx(d_tx).epsilon(1e-12));
        const double d_xf = influence_tv(g, xi, free_bc, params, 0);
        const double d_tf = influence_tv(g, tau, free_bc, params, 0);
        CHECK(d_xt <= d_xf + d_tf + 1e-12);
    }
    SUBCASE("wired-vs-free influence decays with radius on binary trees") {
        const RcParams sub(0.7 * p_u(2.0, 2.0), 2.0);
        double prev = 1.0;
        for (int R = 1; R <= 3; ++R) {
            const auto t = regular_tree(2, R);
            const auto g = t.to_graph();
            const auto leaves = t.boundary();
            const auto wired = BoundaryPartition::wired(g.n(), leaves);
            const double tv = influence_tv(g, wired, BoundaryPartition(g.n()), sub, t.root());
            CHECK(tv > 0.0);
            CHECK(tv < prev);
            prev = tv;
        }
    }
    SUBCASE("ball size cap") {
        MultiGraph g(2);
        for (int i = 0; i < 21; ++i) g.add_edge(0, 1);
        CHECK_THROWS_AS(influence_tv(g, BoundaryPartition(2), BoundaryPartition(2), params, 0),
                        TooLarge);
    }
}

TEST_CASE("line fitting") {
    SUBCASE("recovers exact lines") {
        std::vector<double> xs, ys;
        for (int i = 1; i <= 9; ++i) {
            xs.push_back(std::log(static_cast<double>(i * 100)));
            ys.push_back(2.5 * xs.back() + 0.7);
        }
        const auto fit = fit_line(xs, ys);
        CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-9));
        CHECK(fit.intercept == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("median") {
        CHECK(median({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
        CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
    }
}

TEST_CASE("bottleneck escape") {
    SUBCASE("beta 0 escapes fast") {
        MultiGraph g(5);
        for (int v = 1; v <= 4; ++v) g.add_edge(0, v);
        const auto rep = bottleneck_escape(g, 0.0, 2, 0, 0.5, 20, 100000, 77);
        CHECK(rep.d_star == 4);
        for (const auto& s : rep.samples) {
            CHECK_FALSE(s.censored);
            CHECK(s.steps < 1000);
        }
    }
    SUBCASE("larger beta escapes slower") {
        MultiGraph g(7);
        for (int v = 1; v <= 6; ++v) g.add_edge(0, v);
        const auto cold = bottleneck_escape(g, 2.0, 2, 0, 0.5, 40, 2000000, 78);
        const auto warm = bottleneck_escape(g, 0.5, 2, 0, 0.5, 40, 2000000, 78);
        CHECK(cold.median_sweeps(7) > warm.median_sweeps(7));
    }
    SUBCASE("exact conductance consistency on a small star") {
        MultiGraph g(5);
        for (int v = 1; v <= 4; ++v) g.add_edge(0, v);
        const double beta = 1.0;
        const double phi = potts_conductance(g, beta, 2, 0, 0.5);
        CHECK(phi > 0.0);
        CHECK(phi <= 1.0);
        const auto rep = bottleneck_escape(g, beta, 2, 0, 0.5, 400, 4000000, 79);
        double mean_steps = 0;
        for (const auto& s : rep.samples) {
            REQUIRE_FALSE(s.censored);
            mean_steps += static_cast<double>(s.steps);
        }
        mean_steps /= static_cast<double>(rep.samples.size());
        // escape rate per step should be within a constant factor of the
        // conductance-style rate; generous factor-5 bracket
        const double implied_rate = 1.0 / mean_steps;
        const double reference = phi;
        CHECK(implied_rate < 5 * reference);
        CHECK(implied_rate > reference / 5);
    }
    SUBCASE("state cap for exact conductance") {
        CHECK_THROWS_AS(potts_conductance(MultiGraph(25), 1.0, 2, 0, 0.5), TooLarge);
    }
}
