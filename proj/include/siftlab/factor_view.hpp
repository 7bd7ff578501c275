#pragma once

// Per-integer multiplicative profile over a range: smallest prime factor,
// Moebius mu, distinct-prime count omega, divisor count d(n), totient phi.
// Built segment-by-segment by sieving with the primes <= sqrt(range_end).

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "siftlab/prime_table.hpp"

namespace siftlab {

struct FactorView {
    u64 range_start = 0;
    u64 range_end = 0; // inclusive
    std::vector<u64> spf;   // 0 sentinel for n <= 1
    std::vector<i8> mu;     // -1 / 0 / +1
    std::vector<u8> omega;  // distinct prime divisors
    std::vector<u32> dcount;
    std::vector<u64> phi;

    u64 size() const { return range_end - range_start + 1; }
    u64 index_of(u64 n) const { return n - range_start; }
};

inline FactorView build_factor_view(const PrimeTable& primes, u64 range_start, u64 range_end) {
    if (range_end < range_start) throw std::invalid_argument("build_factor_view: empty range");
    u64 root = isqrt(range_end);
    if (primes.limit() < root)
        throw std::invalid_argument("build_factor_view: prime table smaller than sqrt(range_end)");

    u64 n_items = range_end - range_start + 1;
    FactorView v;
    v.range_start = range_start;
    v.range_end = range_end;
    v.spf.assign(n_items, 0);
    v.mu.assign(n_items, 0);
    v.omega.assign(n_items, 0);
    v.dcount.assign(n_items, 1);
    v.phi.assign(n_items, 1);

    std::vector<u64> rem(n_items);
    for (u64 i = 0; i < n_items; ++i) rem[i] = range_start + i;
    std::vector<u8> squareful(n_items, 0);

    primes.for_each_prime(2, root, [&](u64 p) {
        u64 start = std::max(p, ceil_div(range_start, p) * p);
        for (u64 j = start; j <= range_end; j += p) {
            u64 i = j - range_start;
            u64 r = rem[i];
            u32 e = 0;
            do {
                r /= p;
                ++e;
            } while (r % p == 0);
            rem[i] = r;
            if (v.spf[i] == 0) v.spf[i] = p;
            v.omega[i] += 1;
            v.dcount[i] *= (e + 1);
            u64 pe = p - 1;
            for (u32 t = 1; t < e; ++t) pe *= p;
            v.phi[i] *= pe;
            if (e >= 2) squareful[i] = 1;
        }
    });

    for (u64 i = 0; i < n_items; ++i) {
        u64 n = range_start + i;
        if (n == 0) {
            v.dcount[i] = 0;
            v.phi[i] = 0;
            continue;
        }
        if (n == 1) {
            v.mu[i] = 1; // dcount = phi = 1 already
            continue;
        }
        if (rem[i] > 1) {
            u64 q = rem[i]; // exactly one prime factor > sqrt(range_end)
            if (v.spf[i] == 0) v.spf[i] = q;
            v.omega[i] += 1;
            v.dcount[i] *= 2;
            v.phi[i] *= q - 1;
        }
        v.mu[i] = squareful[i] ? 0 : ((v.omega[i] & 1) ? -1 : 1);
    }
    return v;
}

// Streams factor profiles for [lo, hi] in segments of `segment_size` entries.
template <class Fn>
void for_each_factor_segment(const PrimeTable& primes, u64 lo, u64 hi, u64 segment_size, Fn&& fn) {
    if (segment_size == 0) segment_size = PrimeTable::kDefaultSegment;
    for (u64 start = lo; start <= hi; ) {
        u64 end = std::min(hi, start + segment_size - 1);
        FactorView v = build_factor_view(primes, start, end);
        fn(v);
        if (end == hi) break;
        start = end + 1;
    }
}

} // namespace siftlab
