#pragma once

// Immutable primality bitset over [0, limit], built by a segmented sieve of
// Eratosthenes (odd wheel). Every exact count downstream reduces to queries
// against this table.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "siftlab/parallel.hpp"
#include "siftlab/types.hpp"

namespace siftlab {

class PrimeTable {
public:
    static constexpr u64 kDefaultSegment = u64(1) << 20; // entries per segment
    static constexpr u64 kMaxLimit = u64(1) << 40;

    explicit PrimeTable(u64 limit, u64 segment_size = kDefaultSegment,
                        unsigned workers = 0) {
        if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
        if (limit > kMaxLimit) throw std::invalid_argument("PrimeTable: limit above 2^40");
        limit_ = limit;
        build(segment_size, workers);
    }

    // Adopts an existing bitset (cache loads). Trailing bits must be zero.
    static PrimeTable from_bits(u64 limit, std::vector<u64> words) {
        PrimeTable t(Adopt{}, limit, std::move(words));
        return t;
    }

    u64 limit() const { return limit_; }
    u64 prime_count_total() const { return prime_count_total_; }
    const std::vector<u64>& words() const { return words_; }

    bool is_prime(u64 n) const {
        return (words_[n >> 6] >> (n & 63)) & 1;
    }

    // pi(x) = #{p <= x}
    u64 prime_count(u64 x) const {
        if (x > limit_) throw std::out_of_range("prime_count: x exceeds table limit");
        u64 full = (x + 1) >> 6;
        u64 count = 0;
        for (u64 w = 0; w < full; ++w) count += std::popcount(words_[w]);
        unsigned rem = static_cast<unsigned>((x + 1) & 63);
        if (rem) count += std::popcount(words_[full] & ((u64(1) << rem) - 1));
        return count;
    }

    // Calls fn(p) for every prime p in [lo, hi], ascending.
    template <class Fn>
    void for_each_prime(u64 lo, u64 hi, Fn&& fn) const {
        if (hi > limit_) hi = limit_;
        if (lo > hi) return;
        u64 w = lo >> 6, w_end = hi >> 6;
        u64 bits = words_[w] & ~((u64(1) << (lo & 63)) - 1);
        for (;;) {
            if (w == w_end) bits &= mask_upto(hi & 63);
            while (bits) {
                unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                fn((w << 6) | b);
                bits &= bits - 1;
            }
            if (w == w_end) break;
            bits = words_[++w];
        }
    }

    // Least prime >= n, or 0 if none in table.
    u64 next_prime_geq(u64 n) const {
        if (n > limit_) return 0;
        u64 found = 0;
        // scan word by word; cheap enough for the query patterns we have
        u64 w = n >> 6;
        u64 bits = words_[w] & ~((u64(1) << (n & 63)) - 1);
        u64 nw = words_.size();
        while (w < nw) {
            if (bits) {
                found = (w << 6) | static_cast<unsigned>(std::countr_zero(bits));
                break;
            }
            ++w;
            if (w < nw) bits = words_[w];
        }
        return (found && found <= limit_) ? found : 0;
    }

private:
    struct Adopt {};
    PrimeTable(Adopt, u64 limit, std::vector<u64> words)
        : limit_(limit), words_(std::move(words)) {
        u64 need = (limit_ + 64) >> 6;
        if (words_.size() != need) throw std::invalid_argument("from_bits: wrong word count");
        prime_count_total_ = 0;
        for (u64 w : words_) prime_count_total_ += std::popcount(w);
    }

    static u64 mask_upto(u64 bit) {
        return bit == 63 ? ~u64(0) : ((u64(1) << (bit + 1)) - 1);
    }

    void build(u64 segment_size, unsigned workers) {
        if (segment_size < 128) segment_size = 128;
        segment_size = (segment_size + 127) & ~u64(127); // keep word writes disjoint

        words_.assign((limit_ + 64) >> 6, 0);
        words_[0] |= u64(1) << 2; // 2

        u64 root = isqrt(limit_);
        std::vector<u64> base = small_odd_primes(root);

        // Segments cover the odd numbers of [3, limit]. Each segment owns an
        // aligned block of integers, so bit writes never share a word.
        u64 span = limit_ - 3 + 1;
        u64 nseg = ceil_div(span, segment_size);

        parallel_chunks(nseg, workers, [&](u64 s) {
            u64 lo = 3 + s * segment_size;
            u64 hi = std::min(limit_, lo + segment_size - 1);
            sieve_segment(lo, hi, base);
        });

        prime_count_total_ = 0;
        for (u64 w : words_) prime_count_total_ += std::popcount(w);
    }

    // Simple odd sieve for the base primes p <= root, p >= 3.
    static std::vector<u64> small_odd_primes(u64 root) {
        std::vector<u64> primes;
        if (root < 3) return primes;
        u64 half = (root - 1) / 2; // index i <-> n = 2i+1, i >= 1
        std::vector<u8> comp(half + 1, 0);
        for (u64 i = 1; 2 * i * (i + 1) <= half; ++i) {
            if (comp[i]) continue;
            u64 p = 2 * i + 1;
            for (u64 j = 2 * i * (i + 1); j <= half; j += p) comp[j] = 1;
        }
        for (u64 i = 1; i <= half; ++i)
            if (!comp[i]) primes.push_back(2 * i + 1);
        return primes;
    }

    void sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base) {
        if ((lo & 1) == 0) ++lo;
        if (lo > hi) return;
        u64 count = (hi - lo) / 2 + 1;
        std::vector<u8> comp(count, 0);
        for (u64 p : base) {
            u64 start = std::max(p * p, ceil_div(lo, p) * p);
            if (start > hi) {
                if (p * p > hi) break;
                continue;
            }
            if ((start & 1) == 0) start += p;
            for (u64 j = start; j <= hi; j += 2 * p) comp[(j - lo) / 2] = 1;
        }
        for (u64 i = 0; i < count; ++i) {
            if (!comp[i]) {
                u64 n = lo + 2 * i;
                words_[n >> 6] |= u64(1) << (n & 63);
            }
        }
    }

    u64 limit_ = 0;
    u64 prime_count_total_ = 0;
    std::vector<u64> words_;
};

// pi(y; l, d) = #{p <= y : p prime, p = l (mod d)}
struct ApCount {
    u64 y = 0;
    u64 residue = 0;
    u64 modulus = 0;
    u64 count = 0;
};

inline ApCount count_primes_in_ap(const PrimeTable& table, u64 y, u64 l, u64 d) {
    if (d == 0) throw std::invalid_argument("count_primes_in_ap: modulus must be >= 1");
    if (y > table.limit()) throw std::out_of_range("count_primes_in_ap: y exceeds table limit");
    l %= d;
    ApCount r{y, l, d, 0};
    table.for_each_prime(2, y, [&](u64 p) {
        if (p % d == l) ++r.count;
    });
    return r;
}

} // namespace siftlab
