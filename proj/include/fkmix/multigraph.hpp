#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fkmix {

// Half-edge-based multigraph: parallel edges and self-loops are permitted,
// edges are indexed, and self-loops contribute 2 to the degree.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n) : n_(n), adj_(n) {}

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int m() const { return static_cast<int>(edges_.size()); }
    [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    [[nodiscard]] std::pair<int, int> edge(int e) const { return edges_[e]; }
    [[nodiscard]] bool is_self_loop(int e) const { return edges_[e].first == edges_[e].second; }

    // (neighbor, edge index) pairs; a self-loop appears twice.
    [[nodiscard]] const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }

    [[nodiscard]] int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    int add_edge(int u, int v);

    // BFS distances from v; -1 for unreachable. max_dist < 0 means unbounded.
    [[nodiscard]] std::vector<int> bfs_distances(int v, int max_dist = -1) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Induced ball of radius R: vertex set, its induced edge indices, and the
// sphere of vertices at distance exactly R.
struct Ball {
    std::vector<int> vertices;      // sorted
    std::vector<int> edge_indices;  // edges of g with both endpoints inside
    std::vector<int> boundary;      // distance exactly R, sorted
};

Ball ball(const MultiGraph& g, int v, int radius);

// Edge-list format: header "n m" then m lines "u v" (0-based).
void write_edge_list(std::ostream& out, const MultiGraph& g);
MultiGraph read_edge_list(std::istream& in);
MultiGraph read_edge_list_file(const std::string& path);
void write_edge_list_file(const std::string& path, const MultiGraph& g);

}  // namespace fkmix
