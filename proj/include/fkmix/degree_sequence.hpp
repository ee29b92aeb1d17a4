#pragma once

#include <cstdint>
#include <vector>

#include "fkmix/rng.hpp"

namespace fkmix {

// Prescribed degrees d_1..d_n of an n-vertex (multi)graph.
struct DegreeSequence {
    std::vector<int> degrees;

    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<int> d);

    [[nodiscard]] int n() const { return static_cast<int>(degrees.size()); }
    [[nodiscard]] std::int64_t sum() const;
    [[nodiscard]] int max_degree() const;
    [[nodiscard]] bool even_sum() const { return sum() % 2 == 0; }

    // Erdős–Gallai test: does a simple graph with these degrees exist?
    [[nodiscard]] bool is_graphical() const;
};

// Size-biased law of (degree - 1): P(x) proportional to the total degree of
// vertices with degree x+1. Governs the local tree approximation of
// configuration-model neighborhoods.
struct OffspringDistribution {
    std::vector<int> support;
    std::vector<double> probabilities;

    [[nodiscard]] double mean() const;
    [[nodiscard]] double moment(double k) const;
    [[nodiscard]] int sample(Rng& rng) const;
};

OffspringDistribution effective_offspring(const DegreeSequence& dn);

// Remove the ceil(2*sqrt(n)) smallest entries (multiset semantics).
DegreeSequence truncated_sequence(const DegreeSequence& dn);

}  // namespace fkmix
