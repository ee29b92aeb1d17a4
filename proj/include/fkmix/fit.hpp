#pragma once

#include <vector>

namespace fkmix {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

// Ordinary least squares y = slope*x + intercept.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

double median(std::vector<double> xs);

}  // namespace fkmix
