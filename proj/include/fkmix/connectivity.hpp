#pragma once

#include <cstdint>
#include <memory>

#include "fkmix/multigraph.hpp"
#include "fkmix/partition.hpp"
#include "fkmix/rc.hpp"

namespace fkmix {

// Dynamic connectivity over the open-edge subgraph, with boundary-class
// merges treated as permanent phantom edges. Answers are exact.
class ConnectivityOracle {
public:
    virtual ~ConnectivityOracle() = default;

    virtual bool connected(int u, int v) = 0;
    virtual void set_edge(int e, bool open) = 0;
    [[nodiscard]] virtual bool edge_state(int e) const = 0;

    // True iff flipping e's state changes the component count: the endpoints
    // are not connected once e itself is excluded. Self-loops never qualify.
    virtual bool is_cut_edge(int e) = 0;

    virtual int component_count() = 0;

    [[nodiscard]] std::uint64_t ops() const { return ops_; }

protected:
    void count_op() { ++ops_; }

private:
    std::uint64_t ops_ = 0;
};

std::unique_ptr<ConnectivityOracle> make_naive_oracle(const MultiGraph& g,
                                                      const BoundaryPartition& bc,
                                                      const RcConfiguration& omega);

std::unique_ptr<ConnectivityOracle> make_hdt_oracle(const MultiGraph& g,
                                                    const BoundaryPartition& bc,
                                                    const RcConfiguration& omega);

// Naive backend up to 512 edges, hierarchical backend above.
std::unique_ptr<ConnectivityOracle> make_oracle(const MultiGraph& g, const BoundaryPartition& bc,
                                                const RcConfiguration& omega);

}  // namespace fkmix
