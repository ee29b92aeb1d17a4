#include "fkmix/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fkmix/errors.hpp"

namespace fkmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// h on the log-y axis, with the analytic y->1 limit at s <= 0.
double h_logy(double s, double q, double gamma) {
    return h_func(std::exp(s), q, gamma);
}

double golden_min(double lo, double hi, double q, double gamma) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = h_logy(c, q, gamma);
    double fd = h_logy(d, q, gamma);
    while (b - a > 1e-13) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = h_logy(c, q, gamma);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = h_logy(d, q, gamma);
        }
    }
    return std::min(fc, fd);
}

}  // namespace

double h_func(double y, double q, double gamma) {
    if (!(y > 1.0)) throw InvalidInput("h_func: y must be > 1");
    const double yg = std::pow(y, gamma);
    return (y - 1.0) * (yg + q - 1.0) / (yg - y);
}

double g_func(double x, const RcParams& params) {
    if (std::isinf(x)) return 1.0 / (1.0 - params.p);
    if (!(x >= 1.0)) throw InvalidInput("g_func: x must be >= 1");
    const double p = params.p, q = params.q;
    return (x + (q - 1.0) * (1.0 - p)) / ((1.0 - p) * x + p + (q - 1.0) * (1.0 - p));
}

double p_u(double q, double gamma) {
    if (!(q >= 1.0)) throw InvalidInput("p_u: q must be >= 1");
    if (!(gamma > 1.0)) throw InvalidInput("p_u: gamma must be > 1");
    // Coarse scan over log y, golden-section refinement, plus the y->1
    // endpoint limit q/(gamma-1) as an explicit candidate (for q <= 2 the
    // infimum sits at the endpoint and interior search alone would miss it).
    constexpr int kGrid = 4000;
    constexpr double kLo = 1e-6, kHi = 20.0;
    int best = 0;
    double best_val = kInf;
    for (int i = 0; i <= kGrid; ++i) {
        const double s = kLo + (kHi - kLo) * i / kGrid;
        const double v = h_logy(s, q, gamma);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double step = (kHi - kLo) / kGrid;
    const double a = kLo + std::max(0, best - 1) * step;
    const double b = kLo + std::min(kGrid, best + 1) * step;
    const double interior = golden_min(a, b, q, gamma);
    const double endpoint = q / (gamma - 1.0);
    const double inf_h = std::min(interior, endpoint);
    return 1.0 - 1.0 / (1.0 + inf_h);
}

double beta_u(double q, double gamma) { return -std::log1p(-p_u(q, gamma)); }

bool check_alternate_form(double p, double q, double gamma) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("check_alternate_form: p must be in (0,1)");
    const RcParams params(p, q);
    // Near x = 1 the difference behaves like (g'(1) - 1/gamma)(x-1), so the
    // sup's sign at the endpoint is decided by phat vs 1/gamma exactly; a
    // value grid alone cannot resolve it.
    if (params.phat > 1.0 / gamma + 1e-12) return false;
    constexpr int kGrid = 4000;
    const double s_hi = std::log(1e4);
    double worst = -kInf;
    double worst_s = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
        const double s = s_hi * i / kGrid;
        const double x = std::exp(s);
        const double v = g_func(x, params) - std::pow(x, 1.0 / gamma);
        if (v > worst) {
            worst = v;
            worst_s = s;
        }
    }
    // local refinement around the grid maximum
    const double step = s_hi / kGrid;
    double lo = std::max(1e-12, worst_s - step), hi = std::min(s_hi, worst_s + step);
    for (int iter = 0; iter < 200; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        const auto eval = [&](double s) {
            const double x = std::exp(s);
            return g_func(x, params) - std::pow(x, 1.0 / gamma);
        };
        if (eval(m1) < eval(m2))
            lo = m1;
        else
            hi = m2;
    }
    {
        const double x = std::exp(0.5 * (lo + hi));
        worst = std::max(worst, g_func(x, params) - std::pow(x, 1.0 / gamma));
    }
    return worst <= 1e-9;
}

int TreeSpec::root() const {
    for (int v = 0; v < n(); ++v)
        if (parent[v] < 0) return v;
    throw InvalidInput("TreeSpec: no root");
}

std::vector<int> TreeSpec::depths() const {
    std::vector<int> depth(n(), -1);
    for (int v = 0; v < n(); ++v) {
        int u = v, d = 0;
        while (parent[u] >= 0) {
            u = parent[u];
            ++d;
            if (d > n()) throw InvalidInput("TreeSpec: parent cycle");
        }
        depth[v] = d;
    }
    return depth;
}

std::vector<int> TreeSpec::boundary() const {
    const auto depth = depths();
    std::vector<int> out;
    for (int v = 0; v < n(); ++v)
        if (depth[v] == height) out.push_back(v);
    return out;
}

MultiGraph TreeSpec::to_graph() const {
    MultiGraph g(n());
    for (int v = 0; v < n(); ++v)
        if (parent[v] >= 0) g.add_edge(parent[v], v);
    return g;
}

TreeSpec regular_tree(int arity, int height) {
    if (arity < 1 || height < 0) throw InvalidInput("regular_tree: bad parameters");
    TreeSpec t;
    t.height = height;
    t.parent.push_back(-1);
    std::vector<int> frontier{0};
    for (int d = 0; d < height; ++d) {
        std::vector<int> next;
        for (int v : frontier) {
            for (int k = 0; k < arity; ++k) {
                next.push_back(t.n());
                t.parent.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return t;
}

double tree_phi(const TreeSpec& tree, const RcParams& params) {
    const auto depth = tree.depths();
    const int n = tree.n();
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v)
        if (tree.parent[v] >= 0) children[tree.parent[v]].push_back(v);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
    std::vector<double> f(n, 1.0);
    for (int v : order) {
        if (depth[v] == tree.height) {
            f[v] = kInf;
            continue;
        }
        double prod = 1.0;
        for (int w : children[v]) prod *= g_func(f[w], params);
        f[v] = prod;
    }
    const double fr = f[tree.root()];
    if (std::isinf(fr)) return 1.0;
    return (fr - 1.0) / (fr - 1.0 + params.q);
}

double tree_phi_z(const TreeSpec& tree, const RcParams& params) {
    const auto depth = tree.depths();
    const int n = tree.n();
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v)
        if (tree.parent[v] >= 0) children[tree.parent[v]].push_back(v);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
    const double p = params.p, q = params.q;
    const double t = p / q + 1.0 - p;
    std::vector<double> z1(n), z0(n);
    for (int v : order) {
        if (depth[v] == tree.height) {
            z1[v] = 1.0;
            z0[v] = 0.0;
            continue;
        }
        double prod_a = 1.0, prod_b = 1.0;
        for (int w : children[v]) {
            prod_a *= z1[w] / q + t * z0[w] / q;
            prod_b *= (1.0 - p) * z1[w] / q + t * z0[w] / q;
        }
        // recursion is homogeneous of degree 1 in each child, so per-node
        // rescaling is exact and keeps values in range
        double a = q * (prod_a - prod_b);
        double b = q * q * prod_b;
        const double scale = std::max(a, b);
        if (scale > 0) {
            a /= scale;
            b /= scale;
        }
        z1[v] = a;
        z0[v] = b;
    }
    const int rho = tree.root();
    return z1[rho] / (z1[rho] + z0[rho]);
}

double tree_phi_regular(int arity, int height, const RcParams& params) {
    if (arity < 1 || height < 0) throw InvalidInput("tree_phi_regular: bad parameters");
    // f is constant on each depth level, so iterate one value upward
    double f = kInf;  // depth == height
    for (int d = height - 1; d >= 0; --d) f = std::pow(g_func(f, params), arity);
    if (height == 0) return 1.0;
    if (std::isinf(f)) return 1.0;
    return (f - 1.0) / (f - 1.0 + params.q);
}

double decay_fit(const std::vector<std::pair<int, double>>& phis, int* dropped) {
    std::vector<double> xs, ys;
    int drop = 0;
    for (auto [h, phi] : phis) {
        if (phi <= 0.0) {
            ++drop;
            continue;
        }
        xs.push_back(static_cast<double>(h));
        ys.push_back(std::log(phi));
    }
    if (dropped) *dropped = drop;
    if (xs.size() < 3) throw InvalidInput("decay_fit: fewer than 3 positive points");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw InvalidInput("decay_fit: degenerate heights");
    return std::exp(sxy / sxx);
}

}  // namespace fkmix
