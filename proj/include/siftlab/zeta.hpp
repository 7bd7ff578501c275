#pragma once

// zeta(s) at integer s >= 2: partial sum plus Euler-Maclaurin tail.

#include <array>
#include <cmath>
#include <stdexcept>

namespace siftlab {

inline double zeta_integer(int s) {
    if (s < 2) throw std::invalid_argument("zeta_integer: s must be >= 2");
    if (s > 1070) return 1.0; // 2^-s underflows; the tail is exactly 1 in doubles
    constexpr int M = 256;
    double sum = 0.0;
    for (int n = M - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    double Ms = std::pow(static_cast<double>(M), -s);
    double tail = Ms * M / (s - 1)            // integral term
                  + 0.5 * Ms                  // boundary
                  + s * Ms / M / 12.0         // B_2 correction
                  - static_cast<double>(s) * (s + 1) * (s + 2) * Ms / (static_cast<double>(M) * M * M) / 720.0;
    return sum + tail;
}

// Cached 1/zeta(k) for the r-series; k clamped to the table, beyond which
// zeta(k) is 1 to double precision.
inline double inv_zeta_cached(int k) {
    constexpr int kTop = 128;
    static const std::array<double, kTop + 1> table = [] {
        std::array<double, kTop + 1> t{};
        for (int i = 2; i <= kTop; ++i) t[i] = 1.0 / zeta_integer(i);
        return t;
    }();
    if (k < 2) throw std::invalid_argument("inv_zeta_cached: k must be >= 2");
    return k <= kTop ? table[k] : 1.0;
}

} // namespace siftlab
