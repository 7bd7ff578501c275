#pragma once

// Finite Mertens products and sums over the primes below a real cut z.

#include <cmath>
#include <stdexcept>

#include "siftlab/prime_table.hpp"

namespace siftlab {

struct MertensResult {
    double z = 0.0;
    u64 primes_used = 0;
    double product = 0.0;      // prod_{p < z} (1 - 1/p)
    double log_weight_sum = 0; // sum_{p < z} ln p / p
};

inline MertensResult mertens_product(const PrimeTable& table, double z) {
    if (!(z >= 3.0)) throw std::invalid_argument("mertens_product: z must be >= 3");
    if (z > static_cast<double>(table.limit()) + 1.0)
        throw std::out_of_range("mertens_product: z exceeds table limit");
    MertensResult r;
    r.z = z;
    double log_prod = 0.0;
    u64 hi = static_cast<u64>(std::ceil(z)); // primes p < z, strict
    table.for_each_prime(2, std::min(hi, table.limit()), [&](u64 p) {
        if (static_cast<double>(p) >= z) return;
        log_prod += std::log1p(-1.0 / static_cast<double>(p));
        r.log_weight_sum += std::log(static_cast<double>(p)) / static_cast<double>(p);
        ++r.primes_used;
    });
    r.product = std::exp(log_prod);
    return r;
}

// W(z) for the shifted set: prod_{p < z, p not dividing N} (1 - 1/(p - 1)).
// Scaled by e^gamma ln z / 2 this converges toward the singular series c(N).
inline double shifted_sieve_density(const PrimeTable& table, u64 N, double z) {
    if (!(z >= 3.0)) throw std::invalid_argument("shifted_sieve_density: z must be >= 3");
    if (z > static_cast<double>(table.limit()) + 1.0)
        throw std::out_of_range("shifted_sieve_density: z exceeds table limit");
    double log_prod = 0.0;
    u64 hi = static_cast<u64>(std::ceil(z));
    table.for_each_prime(3, std::min(hi, table.limit()), [&](u64 p) {
        if (static_cast<double>(p) >= z) return;
        if (N % p == 0) return;
        log_prod += std::log1p(-1.0 / static_cast<double>(p - 1));
    });
    return std::exp(log_prod);
}

} // namespace siftlab
