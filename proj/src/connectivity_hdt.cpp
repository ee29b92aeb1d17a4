// Hierarchical dynamic connectivity (Euler-tour forests with edge levels).
// Amortized polylog insert/delete, O(log n) connectivity queries.

#include <cmath>
#include <utility>
#include <vector>

#include "fkmix/connectivity.hpp"
#include "fkmix/errors.hpp"
#include "fkmix/rng.hpp"

namespace fkmix {

namespace {

// Treap node of an Euler tour. A tour contains one node per vertex plus two
// arc nodes per tree edge; the sequence is a rotation of the Euler tour.
struct Node {
    Node* l = nullptr;
    Node* r = nullptr;
    Node* p = nullptr;
    std::uint64_t prio = 0;
    int size = 1;
    int vcount = 0;      // number of vertex nodes in subtree
    bool self_v = false;  // vertex node with nontree edges pending at this level
    bool self_e = false;  // designated arc of a tree edge whose level equals this forest's
    bool agg_v = false;
    bool agg_e = false;
    int vert = -1;  // vertex id, or -1 for arc nodes
    int edge = -1;  // edge id, or -1 for vertex nodes
};

int sz(const Node* n) { return n ? n->size : 0; }
int vc(const Node* n) { return n ? n->vcount : 0; }
bool av(const Node* n) { return n && n->agg_v; }
bool ae(const Node* n) { return n && n->agg_e; }

void pull(Node* n) {
    n->size = 1 + sz(n->l) + sz(n->r);
    n->vcount = (n->vert >= 0 ? 1 : 0) + vc(n->l) + vc(n->r);
    n->agg_v = n->self_v || av(n->l) || av(n->r);
    n->agg_e = n->self_e || ae(n->l) || ae(n->r);
}

void update_path(Node* n) {
    while (n) {
        pull(n);
        n = n->p;
    }
}

Node* root_of(Node* n) {
    while (n->p) n = n->p;
    return n;
}

int index_of(Node* n) {
    int idx = sz(n->l);
    while (n->p) {
        if (n == n->p->r) idx += sz(n->p->l) + 1;
        n = n->p;
    }
    return idx;
}

Node* merge(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    if (a->prio > b->prio) {
        Node* m = merge(a->r, b);
        a->r = m;
        m->p = a;
        pull(a);
        return a;
    }
    Node* m = merge(a, b->l);
    b->l = m;
    m->p = b;
    pull(b);
    return b;
}

// First k nodes vs the rest; t must be a root.
std::pair<Node*, Node*> split(Node* t, int k) {
    if (!t) return {nullptr, nullptr};
    if (sz(t->l) >= k) {
        Node* left = t->l;
        if (left) {
            left->p = nullptr;
            t->l = nullptr;
        }
        auto [a, b] = split(left, k);
        t->l = b;
        if (b) b->p = t;
        pull(t);
        return {a, t};
    }
    Node* right = t->r;
    if (right) {
        right->p = nullptr;
        t->r = nullptr;
    }
    auto [a, b] = split(right, k - sz(t->l) - 1);
    t->r = a;
    if (a) a->p = t;
    pull(t);
    return {t, b};
}

Node* find_flag_e(Node* t) {
    while (true) {
        if (t->self_e) return t;
        t = (t->l && t->l->agg_e) ? t->l : t->r;
    }
}

Node* find_flag_v(Node* t) {
    while (true) {
        if (t->self_v) return t;
        t = (t->l && t->l->agg_v) ? t->l : t->r;
    }
}

class HdtOracle final : public ConnectivityOracle {
public:
    HdtOracle(const MultiGraph& g, const BoundaryPartition& bc, const RcConfiguration& omega)
        : g_(g), n_(g.n()), prio_rng_(0x48445443) {
        if (static_cast<int>(omega.size()) != g.m())
            throw InvalidInput("oracle: configuration size mismatch");
        if (bc.universe() != g.n()) throw InvalidInput("oracle: boundary universe mismatch");
        levels_ = 2;
        while ((1 << (levels_ - 2)) < std::max(n_, 2)) ++levels_;
        vnode_.assign(levels_, std::vector<Node*>(n_, nullptr));
        adj_.assign(levels_, std::vector<std::vector<int>>(n_));
        comp_ = n_;
        real_m_ = g.m();
        edges_.resize(real_m_);
        for (int e = 0; e < real_m_; ++e) {
            edges_[e].u = g.edge(e).first;
            edges_[e].v = g.edge(e).second;
        }
        for (const auto& cls : bc.classes()) {
            for (std::size_t i = 1; i < cls.size(); ++i) {
                EdgeRec rec;
                rec.u = cls[0];
                rec.v = cls[i];
                rec.open = true;
                const int id = static_cast<int>(edges_.size());
                edges_.push_back(rec);
                struct_insert(id);
            }
        }
        for (int e = 0; e < real_m_; ++e)
            if (omega[e]) {
                edges_[e].open = true;
                if (edges_[e].u != edges_[e].v) struct_insert(e);
            }
    }

    ~HdtOracle() override {
        for (auto& level : vnode_)
            for (Node* n : level) delete n;
        for (auto& rec : edges_)
            for (auto [a, b] : rec.arcs) {
                delete a;
                delete b;
            }
    }

    bool connected(int u, int v) override {
        count_op();
        if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InvalidInput("oracle: vertex out of range");
        if (u == v) return true;
        return root_of(vnode(0, u)) == root_of(vnode(0, v));
    }

    void set_edge(int e, bool open) override {
        count_op();
        check_index(e);
        EdgeRec& rec = edges_[e];
        if (rec.open == open) return;
        rec.open = open;
        if (rec.u == rec.v) return;  // self-loops never enter the structure
        if (open)
            struct_insert(e);
        else
            struct_delete(e);
    }

    [[nodiscard]] bool edge_state(int e) const override {
        if (e < 0 || e >= real_m_) throw InvalidInput("oracle: bad edge index");
        return edges_[e].open;
    }

    bool is_cut_edge(int e) override {
        count_op();
        check_index(e);
        const EdgeRec& rec = edges_[e];
        if (rec.u == rec.v) return false;
        if (!rec.open || !rec.in_struct) return !connected(rec.u, rec.v);
        if (!rec.tree) return false;  // an open nontree edge closes a cycle
        struct_delete(e);
        const bool cut = !connected(rec.u, rec.v);
        struct_insert(e);
        return cut;
    }

    int component_count() override {
        count_op();
        return comp_;
    }

private:
    struct EdgeRec {
        int u = -1, v = -1;
        bool open = false;
        bool in_struct = false;
        bool tree = false;
        int level = -1;
        std::vector<std::pair<Node*, Node*>> arcs;  // one pair per forest level 0..level
        int pos_u = -1, pos_v = -1;                 // slots in the nontree adjacency lists
    };

    void check_index(int e) const {
        if (e < 0 || e >= real_m_) throw InvalidInput("oracle: bad edge index");
    }

    Node* vnode(int level, int v) {
        Node*& n = vnode_[level][v];
        if (!n) {
            n = new Node;
            n->prio = prio_rng_.next_u64();
            n->vert = v;
            pull(n);
        }
        return n;
    }

    // Rotate the tour so it starts at v's vertex node; returns the new root.
    Node* reroot(int level, int v) {
        Node* nv = vnode(level, v);
        Node* r = root_of(nv);
        const int i = index_of(nv);
        if (i == 0) return r;
        auto [a, b] = split(r, i);
        return merge(b, a);
    }

    void tree_link_at(int eid, int level) {
        EdgeRec& rec = edges_[eid];
        Node* tu = reroot(level, rec.u);
        Node* tv = reroot(level, rec.v);
        Node* a = new Node;
        Node* b = new Node;
        a->prio = prio_rng_.next_u64();
        b->prio = prio_rng_.next_u64();
        a->edge = b->edge = eid;
        pull(a);
        pull(b);
        rec.arcs.emplace_back(a, b);
        merge(merge(merge(tu, a), tv), b);
    }

    void tree_cut_at(int eid, int level) {
        EdgeRec& rec = edges_[eid];
        Node* a = rec.arcs[level].first;
        Node* b = rec.arcs[level].second;
        int ia = index_of(a);
        int ib = index_of(b);
        if (ia > ib) {
            std::swap(a, b);
            std::swap(ia, ib);
        }
        Node* r = root_of(a);
        auto [prefix, rest1] = split(r, ia);
        auto [arc1, rest2] = split(rest1, 1);
        auto [middle, rest3] = split(rest2, ib - ia - 1);
        auto [arc2, suffix] = split(rest3, 1);
        (void)middle;
        (void)arc1;
        (void)arc2;
        merge(prefix, suffix);
        // detached arc nodes are freed by the caller, which owns rec.arcs
    }

    void make_tree_edge(int eid, int level) {
        EdgeRec& rec = edges_[eid];
        rec.tree = true;
        rec.level = level;
        rec.arcs.clear();
        for (int j = 0; j <= level; ++j) tree_link_at(eid, j);
        Node* mark = rec.arcs[level].first;
        mark->self_e = true;
        update_path(mark);
    }

    void nontree_add(int level, int eid) {
        EdgeRec& rec = edges_[eid];
        rec.tree = false;
        rec.level = level;
        rec.pos_u = static_cast<int>(adj_[level][rec.u].size());
        adj_[level][rec.u].push_back(eid);
        rec.pos_v = static_cast<int>(adj_[level][rec.v].size());
        adj_[level][rec.v].push_back(eid);
        set_vflag(level, rec.u);
        set_vflag(level, rec.v);
    }

    void nontree_remove_half(int level, int eid, int x, int pos) {
        auto& list = adj_[level][x];
        const int moved = list.back();
        list[pos] = moved;
        list.pop_back();
        if (moved != eid) {
            EdgeRec& mrec = edges_[moved];
            if (mrec.u == x)
                mrec.pos_u = pos;
            else
                mrec.pos_v = pos;
        }
        if (list.empty()) {
            Node* n = vnode(level, x);
            n->self_v = false;
            update_path(n);
        }
    }

    void nontree_remove(int level, int eid) {
        EdgeRec& rec = edges_[eid];
        nontree_remove_half(level, eid, rec.u, rec.pos_u);
        nontree_remove_half(level, eid, rec.v, rec.pos_v);
        rec.pos_u = rec.pos_v = -1;
    }

    void set_vflag(int level, int x) {
        Node* n = vnode(level, x);
        if (!n->self_v) {
            n->self_v = true;
            update_path(n);
        }
    }

    void struct_insert(int eid) {
        EdgeRec& rec = edges_[eid];
        rec.in_struct = true;
        if (root_of(vnode(0, rec.u)) == root_of(vnode(0, rec.v))) {
            nontree_add(0, eid);
        } else {
            make_tree_edge(eid, 0);
            --comp_;
        }
    }

    void struct_delete(int eid) {
        EdgeRec& rec = edges_[eid];
        rec.in_struct = false;
        if (!rec.tree) {
            nontree_remove(rec.level, eid);
            rec.level = -1;
            return;
        }
        const int l = rec.level;
        for (int j = 0; j <= l; ++j) tree_cut_at(eid, j);
        for (auto [a, b] : rec.arcs) {
            delete a;
            delete b;
        }
        rec.arcs.clear();
        rec.tree = false;
        rec.level = -1;
        for (int i = l; i >= 0; --i)
            if (try_replace(i, rec.u, rec.v)) return;
        ++comp_;
    }

    bool try_replace(int level, int u, int v) {
        Node* ru = root_of(vnode(level, u));
        Node* rv = root_of(vnode(level, v));
        Node* small = (ru->vcount <= rv->vcount) ? ru : rv;
        // Promote the smaller side's level-i tree edges one level up; this
        // preserves the n/2^i size invariant that bounds the level count.
        while (small->agg_e) {
            Node* t = find_flag_e(small);
            const int g = t->edge;
            t->self_e = false;
            update_path(t);
            if (level + 1 >= levels_) throw std::logic_error("connectivity: level overflow");
            edges_[g].level = level + 1;
            tree_link_at(g, level + 1);
            Node* mark = edges_[g].arcs[level + 1].first;
            mark->self_e = true;
            update_path(mark);
        }
        // Scan nontree edges incident to the smaller side: the first one that
        // reaches the other side is the replacement; the rest move up a level.
        while (small->agg_v) {
            Node* t = find_flag_v(small);
            const int x = t->vert;
            const int f = adj_[level][x].back();
            EdgeRec& frec = edges_[f];
            const int y = (frec.u == x) ? frec.v : frec.u;
            nontree_remove(level, f);
            if (root_of(vnode(level, y)) != small) {
                make_tree_edge(f, level);
                return true;
            }
            if (level + 1 >= levels_) throw std::logic_error("connectivity: level overflow");
            nontree_add(level + 1, f);
        }
        return false;
    }

    MultiGraph g_;
    int n_;
    int levels_;
    int real_m_ = 0;
    int comp_ = 0;
    std::vector<EdgeRec> edges_;
    std::vector<std::vector<Node*>> vnode_;
    std::vector<std::vector<std::vector<int>>> adj_;
    Rng prio_rng_;
};

}  // namespace

std::unique_ptr<ConnectivityOracle> make_hdt_oracle(const MultiGraph& g,
                                                    const BoundaryPartition& bc,
                                                    const RcConfiguration& omega) {
    return std::make_unique<HdtOracle>(g, bc, omega);
}

}  // namespace fkmix
