#include "fkmix/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fkmix/errors.hpp"

namespace fkmix {

int MultiGraph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InvalidInput("edge endpoint out of range");
    const int e = m();
    edges_.emplace_back(u, v);
    adj_[u].emplace_back(v, e);
    adj_[v].emplace_back(u, e);  // self-loop listed twice, degree counts 2
    return e;
}

std::vector<int> MultiGraph::bfs_distances(int v, int max_dist) const {
    if (v < 0 || v >= n_) throw InvalidInput("bfs_distances: vertex out of range");
    std::vector<int> dist(n_, -1);
    std::deque<int> queue{v};
    dist[v] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (max_dist >= 0 && dist[u] >= max_dist) continue;
        for (auto [w, e] : adj_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

Ball ball(const MultiGraph& g, int v, int radius) {
    if (radius < 0) throw InvalidInput("ball: negative radius");
    const auto dist = g.bfs_distances(v, radius);
    Ball b;
    std::vector<char> inside(g.n(), 0);
    for (int w = 0; w < g.n(); ++w) {
        if (dist[w] >= 0 && dist[w] <= radius) {
            b.vertices.push_back(w);
            inside[w] = 1;
            if (dist[w] == radius) b.boundary.push_back(w);
        }
    }
    for (int e = 0; e < g.m(); ++e) {
        auto [a, c] = g.edge(e);
        if (inside[a] && inside[c]) b.edge_indices.push_back(e);
    }
    return b;
}

void write_edge_list(std::ostream& out, const MultiGraph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

MultiGraph read_edge_list(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw InvalidInput("edge list: missing header");
    MultiGraph g(n);
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw InvalidInput("edge list: truncated");
        g.add_edge(u, v);
    }
    return g;
}

MultiGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list_file(const std::string& path, const MultiGraph& g) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open " + path);
    write_edge_list(out, g);
}

}  // namespace fkmix
