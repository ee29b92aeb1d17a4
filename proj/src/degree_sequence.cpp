#include "fkmix/degree_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fkmix/errors.hpp"

namespace fkmix {

DegreeSequence::DegreeSequence(std::vector<int> d) : degrees(std::move(d)) {
    if (degrees.empty()) throw InvalidInput("degree sequence must have n >= 1");
    for (int deg : degrees)
        if (deg < 0) throw InvalidInput("degrees must be non-negative");
}

std::int64_t DegreeSequence::sum() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
}

int DegreeSequence::max_degree() const {
    return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

bool DegreeSequence::is_graphical() const {
    if (sum() % 2 != 0) return false;
    std::vector<std::int64_t> d(degrees.begin(), degrees.end());
    std::sort(d.begin(), d.end(), std::greater<>());
    const auto n = static_cast<std::int64_t>(d.size());
    if (!d.empty() && d.front() >= n) return false;
    std::vector<std::int64_t> prefix(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) prefix[i + 1] = prefix[i] + d[i];
    for (std::int64_t k = 1; k <= n; ++k) {
        std::int64_t rhs = k * (k - 1);
        for (std::int64_t i = k; i < n; ++i) rhs += std::min(d[i], k);
        if (prefix[k] > rhs) return false;
    }
    return true;
}

double OffspringDistribution::mean() const { return moment(1.0); }

double OffspringDistribution::moment(double k) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
        acc += probabilities[i] * std::pow(static_cast<double>(support[i]), k);
    return acc;
}

int OffspringDistribution::sample(Rng& rng) const {
    double u = rng.uniform();
    for (std::size_t i = 0; i < support.size(); ++i) {
        u -= probabilities[i];
        if (u < 0) return support[i];
    }
    return support.back();
}

OffspringDistribution effective_offspring(const DegreeSequence& dn) {
    const double total = static_cast<double>(dn.sum());
    if (total <= 0) throw InvalidInput("effective_offspring: all-zero degree sequence");
    std::map<int, double> mass;  // support value -> unnormalized weight
    for (int deg : dn.degrees)
        if (deg > 0) mass[deg - 1] += static_cast<double>(deg);
    OffspringDistribution dist;
    for (auto& [x, w] : mass) {
        dist.support.push_back(x);
        dist.probabilities.push_back(w / total);
    }
    return dist;
}

DegreeSequence truncated_sequence(const DegreeSequence& dn) {
    const int n = dn.n();
    if (n < 4) throw InvalidInput("truncated_sequence: n too small");
    const int remove = static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
    if (remove >= n) throw InvalidInput("truncated_sequence: removal count >= n");
    std::vector<int> sorted = dn.degrees;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(sorted.begin(), sorted.begin() + remove);
    return DegreeSequence(std::move(sorted));
}

}  // namespace fkmix
