#pragma once

#include <cstdint>

#include "fkmix/degree_sequence.hpp"
#include "fkmix/multigraph.hpp"
#include "fkmix/rng.hpp"

namespace fkmix {

// Configuration model: uniform perfect matching of the half-edges.
MultiGraph sample_configuration_model(const DegreeSequence& dn, std::uint64_t seed);

// Configuration model conditioned on simplicity, by rejection.
MultiGraph sample_simple_graph(const DegreeSequence& dn, std::uint64_t seed, int max_attempts);

// Erdős–Rényi via Poisson cloning: i.i.d. Poisson(lambda) degrees, one entry
// resampled until the sum is even, then the configuration model.
MultiGraph sample_er_poisson_cloning(int n, double lambda, std::uint64_t seed);

}  // namespace fkmix
