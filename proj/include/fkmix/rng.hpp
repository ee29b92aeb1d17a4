#pragma once

#include <cmath>
#include <cstdint>

namespace fkmix {

// Counter-based seeded generator (splitmix64 core) with an explicit
// stream-split API. Every consumer of randomness derives a named child
// stream from the master seed, so replicas and schedule streams never
// collide and every run is reproducible from one seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : base_(seed), state_(mix(seed ^ 0x6A09E667F3BCC908ULL)) {}

    // Derive an independent stream. stream(i) depends only on the seed this
    // Rng was constructed with, not on how much it has been consumed.
    [[nodiscard]] Rng stream(std::uint64_t id) const {
        return Rng(mix(base_ + 0x9E3779B97F4A7C15ULL * (id + 1)));
    }
    [[nodiscard]] Rng stream(std::uint64_t a, std::uint64_t b) const { return stream(a).stream(b); }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // Lemire-style rejection-free-enough bounded draw.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Exponential with the given rate.
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    // Poisson by chunked Knuth multiplication; exact for any mean.
    std::uint64_t poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 16.0) {
            total += poisson_small(16.0);
            mean -= 16.0;
        }
        return total + poisson_small(mean);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

    std::uint64_t base_;
    std::uint64_t state_;
};

}  // namespace fkmix
