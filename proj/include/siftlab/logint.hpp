#pragma once

// Offset logarithmic integral Li(x) = integral_2^x dt / ln t.

#include <cmath>
#include <stdexcept>

#include "siftlab/quadrature.hpp"

namespace siftlab {

inline double logarithmic_integral(double x) {
    if (!(x >= 2.0)) throw std::invalid_argument("logarithmic_integral: x must be >= 2");
    if (x == 2.0) return 0.0;
    auto integrand = [](double t) { return 1.0 / std::log(t); };
    return adaptive_simpson_rel(integrand, 2.0, x, 1e-8);
}

} // namespace siftlab
