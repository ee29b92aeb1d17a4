#pragma once

#include <vector>

#include "fkmix/rc.hpp"

namespace fkmix {

// h(y) = (y-1)(y^gamma + q - 1) / (y^gamma - y), y > 1.
double h_func(double y, double q, double gamma);

// g(x) = (x + (q-1)(1-p)) / ((1-p)x + p + (q-1)(1-p)), x >= 1.
// Accepts +infinity, returning 1/(1-p).
double g_func(double x, const RcParams& params);

// Uniqueness threshold 1 - 1/(1 + inf_{y>1} h(y)).
double p_u(double q, double gamma);

// beta_u = -ln(1 - p_u).
double beta_u(double q, double gamma);

// True iff sup_{x>1} { g_p(x) - x^{1/gamma} } <= 0 on a log-spaced grid
// with local refinement.
bool check_alternate_form(double p, double q, double gamma);

// Rooted tree: parent[v] (-1 for the root), boundary = depth-h vertices.
struct TreeSpec {
    std::vector<int> parent;
    int height = 0;

    [[nodiscard]] int n() const { return static_cast<int>(parent.size()); }
    [[nodiscard]] int root() const;
    [[nodiscard]] std::vector<int> depths() const;
    [[nodiscard]] std::vector<int> boundary() const;  // depth exactly `height`
    [[nodiscard]] MultiGraph to_graph() const;
};

// Complete arity-regular tree of the given height.
TreeSpec regular_tree(int arity, int height);

// phi(rho) = wired-boundary probability that the root connects to the depth-h
// boundary, via the f(v) = prod g(f(w)) recursion.
double tree_phi(const TreeSpec& tree, const RcParams& params);

// Same quantity via the normalized (Z1, Z0) pair recursion; cross-check path.
double tree_phi_z(const TreeSpec& tree, const RcParams& params);

// phi(rho) on the complete arity-regular tree without materializing it.
double tree_phi_regular(int arity, int height, const RcParams& params);

// OLS fit of log(phi) against h; returns exp(slope). Zero phis are dropped;
// fewer than 3 usable points is an error. Returns the number dropped via
// *dropped when non-null.
double decay_fit(const std::vector<std::pair<int, double>>& phis, int* dropped = nullptr);

}  // namespace fkmix
