#include <deque>
#include <vector>

#include "fkmix/connectivity.hpp"
#include "fkmix/errors.hpp"
#include "fkmix/union_find.hpp"

namespace fkmix {

namespace {

class NaiveOracle final : public ConnectivityOracle {
public:
    NaiveOracle(const MultiGraph& g, const BoundaryPartition& bc, const RcConfiguration& omega)
        : g_(g), open_(omega), merge_adj_(g.n()) {
        if (static_cast<int>(omega.size()) != g.m())
            throw InvalidInput("oracle: configuration size mismatch");
        if (bc.universe() != g.n()) throw InvalidInput("oracle: boundary universe mismatch");
        for (const auto& cls : bc.classes()) {
            for (std::size_t i = 1; i < cls.size(); ++i) {
                merge_adj_[cls[0]].push_back(cls[i]);
                merge_adj_[cls[i]].push_back(cls[0]);
            }
        }
    }

    bool connected(int u, int v) override {
        count_op();
        return bfs_connected(u, v, -1);
    }

    void set_edge(int e, bool open) override {
        count_op();
        check_index(e);
        open_[e] = open ? 1 : 0;
    }

    [[nodiscard]] bool edge_state(int e) const override { return open_[e] != 0; }

    bool is_cut_edge(int e) override {
        count_op();
        check_index(e);
        if (g_.is_self_loop(e)) return false;
        auto [u, v] = g_.edge(e);
        return !bfs_connected(u, v, e);
    }

    int component_count() override {
        count_op();
        UnionFind uf(g_.n());
        for (int v = 0; v < g_.n(); ++v)
            for (int w : merge_adj_[v]) uf.unite(v, w);
        for (int e = 0; e < g_.m(); ++e)
            if (open_[e]) uf.unite(g_.edge(e).first, g_.edge(e).second);
        return uf.components();
    }

private:
    void check_index(int e) const {
        if (e < 0 || e >= g_.m()) throw InvalidInput("oracle: bad edge index");
    }

    bool bfs_connected(int u, int v, int excluded) {
        if (u == v) return true;
        std::vector<char> seen(g_.n(), 0);
        std::deque<int> queue{u};
        seen[u] = 1;
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            auto visit = [&](int y) {
                if (!seen[y]) {
                    if (y == v) return true;
                    seen[y] = 1;
                    queue.push_back(y);
                }
                return false;
            };
            for (auto [y, e] : g_.neighbors(x)) {
                if (e == excluded || !open_[e]) continue;
                if (visit(y)) return true;
            }
            for (int y : merge_adj_[x])
                if (visit(y)) return true;
        }
        return false;
    }

    MultiGraph g_;
    RcConfiguration open_;
    std::vector<std::vector<int>> merge_adj_;
};

}  // namespace

std::unique_ptr<ConnectivityOracle> make_naive_oracle(const MultiGraph& g,
                                                      const BoundaryPartition& bc,
                                                      const RcConfiguration& omega) {
    return std::make_unique<NaiveOracle>(g, bc, omega);
}

std::unique_ptr<ConnectivityOracle> make_oracle(const MultiGraph& g, const BoundaryPartition& bc,
                                                const RcConfiguration& omega) {
    if (g.m() <= 512) return make_naive_oracle(g, bc, omega);
    return make_hdt_oracle(g, bc, omega);
}

}  // namespace fkmix
