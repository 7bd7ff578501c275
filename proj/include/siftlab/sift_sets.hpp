#pragma once

// Exact construction and counting of the sifted integer sets: the z-rough set
// B(m) inside (1, N], its partition by prime-factor count B_k(m), the interval
// split B_l/B_r at a cut w, and the Goldbach shift intersections A cap B(m)
// where A = { N - p : p prime <= N }. One streaming pass classifies each
// surviving integer b by factor count, interval, and whether N - b is prime.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <vector>

#include "siftlab/factor_view.hpp"
#include "siftlab/logint.hpp"
#include "siftlab/parallel.hpp"
#include "siftlab/prime_table.hpp"

namespace siftlab {

namespace detail {

inline bool is_integral_exponent(double m, long long& k_out) {
    double r = std::nearbyint(m);
    if (std::fabs(m - r) <= 1e-9 * std::max(1.0, std::fabs(m))) {
        k_out = static_cast<long long>(r);
        return true;
    }
    return false;
}

// t^k >= target, exact in 128-bit arithmetic (t >= 2, target < 2^81).
inline bool ipow_at_least(u64 t, long long k, u128 target) {
    u128 acc = 1;
    for (long long i = 0; i < k; ++i) {
        if (acc >= target) return true;
        acc *= t;
    }
    return acc >= target;
}

inline bool ipow_at_most(u64 t, long long k, u128 target) {
    u128 acc = 1;
    for (long long i = 0; i < k; ++i) {
        if (acc > target / t) return false; // acc * t would exceed target
        acc *= t;
    }
    return acc <= target;
}

} // namespace detail

// Least integer t >= 2 with t^m >= N; membership "spf(b) >= N^(1/m)" is
// exactly "spf(b) >= t". Extended precision plus an exact integer test for
// integral m keeps boundary primes from flipping on roundoff.
inline u64 sift_threshold(u64 N, double m) {
    if (N < 2) throw std::invalid_argument("sift_threshold: N must be >= 2");
    if (!(m >= 1.0)) throw std::invalid_argument("sift_threshold: m must be >= 1");
    long long k = 0;
    bool integral = detail::is_integral_exponent(m, k);
    long double z = powl(static_cast<long double>(N), 1.0L / static_cast<long double>(m));
    u64 t = static_cast<u64>(floorl(z));
    t = (t > 4) ? t - 2 : 2;
    auto at_least = [&](u64 c) {
        if (integral) return detail::ipow_at_least(c, k, u128(N));
        long double v = powl(static_cast<long double>(c), static_cast<long double>(m));
        return v >= static_cast<long double>(N) * (1.0L - 1e-9L);
    };
    while (!at_least(t)) ++t;
    while (t > 2 && at_least(t - 1)) --t;
    return t;
}

// Greatest integer t >= 1 with t^m <= N^2, i.e. t <= N^(2/m) inclusive.
inline u64 power_cut_n2m(u64 N, double m) {
    if (!(m >= 1.0)) throw std::invalid_argument("power_cut_n2m: m must be >= 1");
    long long k = 0;
    bool integral = detail::is_integral_exponent(m, k);
    u128 target = u128(N) * N;
    long double bound = powl(static_cast<long double>(N), 2.0L / static_cast<long double>(m));
    if (bound > 4.0e18L) throw std::invalid_argument("power_cut_n2m: N^(2/m) exceeds 64-bit range");
    u64 t = static_cast<u64>(floorl(bound));
    t = (t > 4) ? t - 2 : 1;
    auto at_most = [&](u64 c) {
        if (c <= 1) return true;
        if (integral) return detail::ipow_at_most(c, k, target);
        long double v = powl(static_cast<long double>(c), static_cast<long double>(m));
        return v <= static_cast<long double>(N) * static_cast<long double>(N) * (1.0L + 1e-9L);
    };
    while (at_most(t + 1)) ++t;
    while (t > 1 && !at_most(t)) --t;
    return t;
}

struct SiftParams {
    u64 N = 0;
    double m = 0.0;
    double z = 0.0; // N^(1/m)
    std::optional<double> w;

    static SiftParams make(u64 N, double m, std::optional<double> w = {}) {
        if (N < 6 || (N & 1)) throw std::invalid_argument("SiftParams: N must be even and >= 6");
        if (!(m >= 1.0)) throw std::invalid_argument("SiftParams: m must be >= 1");
        SiftParams p;
        p.N = N;
        p.m = m;
        p.z = std::pow(static_cast<double>(N), 1.0 / m);
        p.w = w;
        return p;
    }
};

struct RoughPartitionReport {
    SiftParams params;
    u64 threshold = 0; // integer sift threshold t: membership is spf >= t

    u64 b_total = 0, a_total = 0;
    std::vector<u64> b_by_k, a_by_k; // index k-1, Omega (with multiplicity)
    u64 b_left = 0, b_right = 0;     // split at w: left = { b <= w }
    u64 a_left = 0, a_right = 0;

    // Distinct-prime-count variant for k <= 3, so the Omega-vs-omega reading
    // of the factor-sort partition stays visible in output.
    std::array<u64, 3> b_by_omega_distinct{};
    std::array<u64, 3> a_by_omega_distinct{};

    u64 b_k(u64 k) const { return (k >= 1 && k <= b_by_k.size()) ? b_by_k[k - 1] : 0; }
    u64 a_k(u64 k) const { return (k >= 1 && k <= a_by_k.size()) ? a_by_k[k - 1] : 0; }
};

struct SiftScanOptions {
    u64 segment_size = PrimeTable::kDefaultSegment;
    unsigned workers = 0;
    bool need_k = true; // classify by number of prime factors
    bool need_a = true; // classify membership of the Goldbach shift set
};

namespace detail {

constexpr int kMaxOmega = 64;

struct SegmentTally {
    u64 b_total = 0, a_total = 0;
    u64 b_left = 0, a_left = 0;
    std::array<u64, kMaxOmega + 1> b_k{};
    std::array<u64, kMaxOmega + 1> a_k{};
    std::array<u64, 3> b_dist{};
    std::array<u64, 3> a_dist{};
};

} // namespace detail

// The streaming classify pass over (1, N].
inline RoughPartitionReport partition_scan(const PrimeTable& table, u64 N, double m,
                                           std::optional<double> w = {},
                                           SiftScanOptions opt = {}) {
    SiftParams params = SiftParams::make(N, m, w);
    if (table.limit() < N) throw std::invalid_argument("partition_scan: prime table smaller than N");
    if (w && !(*w >= 0.0 && *w < 0.5 * static_cast<double>(N)))
        throw std::domain_error("partition_scan: cut w must satisfy 0 <= w < 0.5 N");

    u64 threshold = sift_threshold(N, m);
    u64 w_floor = 0; // left part is { b : 1 < b <= floor(w) }
    if (w) w_floor = static_cast<u64>(std::floor(*w));

    u64 seg = std::max<u64>(opt.segment_size, 1u << 12);
    u64 span = N - 1; // integers 2..N
    u64 nseg = ceil_div(span, seg);
    u64 root_n = isqrt(N);

    std::vector<detail::SegmentTally> tallies(nseg);

    parallel_chunks(nseg, opt.workers, [&](u64 s) {
        u64 lo = 2 + s * seg;
        u64 hi = std::min(N, lo + seg - 1);
        u64 len = hi - lo + 1;
        detail::SegmentTally& tl = tallies[s];

        std::vector<u8> alive(len, 1);
        table.for_each_prime(2, threshold - 1, [&](u64 p) {
            for (u64 j = ceil_div(lo, p) * p; j <= hi; j += p) alive[j - lo] = 0;
        });

        std::vector<u64> rem;
        std::vector<u8> omega_mult, omega_dist;
        if (opt.need_k) {
            rem.resize(len);
            for (u64 i = 0; i < len; ++i) rem[i] = lo + i;
            omega_mult.assign(len, 0);
            omega_dist.assign(len, 0);
            u64 p_hi = std::min(root_n, isqrt(hi));
            if (threshold <= p_hi) {
                table.for_each_prime(threshold, p_hi, [&](u64 p) {
                    for (u64 j = ceil_div(lo, p) * p; j <= hi; j += p) {
                        u64 i = j - lo;
                        if (!alive[i]) continue;
                        u64 r = rem[i];
                        u8 e = 0;
                        do {
                            r /= p;
                            ++e;
                        } while (r % p == 0);
                        rem[i] = r;
                        omega_mult[i] += e;
                        omega_dist[i] += 1;
                    }
                });
            }
        }

        for (u64 i = 0; i < len; ++i) {
            if (!alive[i]) continue;
            u64 b = lo + i;
            bool left = (w && b <= w_floor);
            ++tl.b_total;
            if (left) ++tl.b_left;

            int k = 0, kd = 0;
            if (opt.need_k) {
                k = omega_mult[i];
                kd = omega_dist[i];
                if (rem[i] > 1) { ++k; ++kd; } // one prime factor above sqrt(N)
                if (k > detail::kMaxOmega) k = detail::kMaxOmega;
                ++tl.b_k[k];
                if (kd >= 1 && kd <= 3) ++tl.b_dist[kd - 1];
            }

            if (opt.need_a) {
                u64 p = N - b;
                if (p >= 2 && table.is_prime(p)) {
                    ++tl.a_total;
                    if (left) ++tl.a_left;
                    if (opt.need_k) {
                        ++tl.a_k[k];
                        if (kd >= 1 && kd <= 3) ++tl.a_dist[kd - 1];
                    }
                }
            }
        }
    });

    RoughPartitionReport rep;
    rep.params = params;
    rep.threshold = threshold;

    int kmax_floor = std::max(1, static_cast<int>(std::floor(m + 1e-9)));
    int kmax_seen = 0;
    for (const auto& tl : tallies)
        for (int k = detail::kMaxOmega; k > kmax_seen; --k)
            if (tl.b_k[k] || tl.a_k[k]) { kmax_seen = k; break; }
    int kmax = std::max(kmax_floor, kmax_seen);
    rep.b_by_k.assign(kmax, 0);
    rep.a_by_k.assign(kmax, 0);

    for (const auto& tl : tallies) {
        rep.b_total += tl.b_total;
        rep.a_total += tl.a_total;
        rep.b_left += tl.b_left;
        rep.a_left += tl.a_left;
        for (int k = 1; k <= kmax; ++k) {
            rep.b_by_k[k - 1] += tl.b_k[k];
            rep.a_by_k[k - 1] += tl.a_k[k];
        }
        for (int k = 0; k < 3; ++k) {
            rep.b_by_omega_distinct[k] += tl.b_dist[k];
            rep.a_by_omega_distinct[k] += tl.a_dist[k];
        }
    }
    rep.b_right = rep.b_total - rep.b_left;
    rep.a_right = rep.a_total - rep.a_left;
    return rep;
}

// |B(m)|: integers 1 < b <= N whose prime factors are all >= N^(1/m).
inline u64 rough_count(const PrimeTable& table, u64 N, double m, SiftScanOptions opt = {}) {
    opt.need_k = false;
    opt.need_a = false;
    return partition_scan(table, N, m, {}, opt).b_total;
}

// |B_k(m)| with k counted with multiplicity (b = p_1 ... p_k, all p_i >= N^(1/m)).
inline u64 rough_count_by_omega(const PrimeTable& table, u64 N, double m, u64 k,
                                SiftScanOptions opt = {}) {
    if (k < 1) throw std::invalid_argument("rough_count_by_omega: k must be >= 1");
    opt.need_a = false;
    opt.need_k = true;
    return partition_scan(table, N, m, {}, opt).b_k(k);
}

// |A cap B(m)|: p <= N prime with a = N - p satisfying 1 < a and spf(a) >= N^(1/m).
inline u64 goldbach_rough_count(const PrimeTable& table, u64 N, double m,
                                SiftScanOptions opt = {}) {
    opt.need_k = false;
    opt.need_a = true;
    return partition_scan(table, N, m, {}, opt).a_total;
}

inline u64 goldbach_rough_by_omega(const PrimeTable& table, u64 N, double m, u64 k,
                                   SiftScanOptions opt = {}) {
    if (k < 1) throw std::invalid_argument("goldbach_rough_by_omega: k must be >= 1");
    opt.need_a = true;
    opt.need_k = true;
    return partition_scan(table, N, m, {}, opt).a_k(k);
}

enum class SetTag { B, A };

// (left, right) interval counts at cut w for B(m) or A cap B(m).
inline std::pair<u64, u64> interval_counts(const PrimeTable& table, u64 N, double m, double w,
                                           SetTag which, SiftScanOptions opt = {}) {
    if (!(w < 0.5 * static_cast<double>(N)))
        throw std::domain_error("interval_counts: cut must satisfy w < 0.5 N");
    opt.need_k = false;
    opt.need_a = (which == SetTag::A);
    RoughPartitionReport rep = partition_scan(table, N, m, w, opt);
    if (which == SetTag::B) return {rep.b_left, rep.b_right};
    return {rep.a_left, rep.a_right};
}

// D(m, N): primes q <= N^(2/m) with N - q prime.
inline u64 goldbach_small_prime_count(const PrimeTable& table, u64 N, double m) {
    if (N < 6 || (N & 1)) throw std::invalid_argument("goldbach_small_prime_count: N must be even and >= 6");
    if (!(m >= 2.0)) throw std::invalid_argument("goldbach_small_prime_count: m must be >= 2");
    if (table.limit() < N) throw std::invalid_argument("goldbach_small_prime_count: table smaller than N");
    u64 cut = power_cut_n2m(N, m);
    if (cut < 2) return 0;
    cut = std::min(cut, N);
    u64 count = 0;
    table.for_each_prime(2, cut, [&](u64 q) {
        u64 p = N - q;
        if (p >= 2 && table.is_prime(p)) ++count;
    });
    return count;
}

// |E_b(x)| = #{ t : b < t <= x, t prime, t - b prime }.
inline u64 twin_count(const PrimeTable& table, u64 x, u64 b) {
    if (b < 2 || (b & 1)) throw std::invalid_argument("twin_count: b must be a positive even integer");
    if (x > table.limit()) throw std::out_of_range("twin_count: x exceeds table limit");
    if (x <= b + 1) return 0;
    u64 count = 0;
    table.for_each_prime(b + 1, x, [&](u64 t) {
        if (table.is_prime(t - b)) ++count;
    });
    return count;
}

struct RemainderDiagnostic {
    u64 d = 0;
    u64 actual = 0;
    double main_term = 0.0;
    double r_d = 0.0;
    SetTag set_tag = SetTag::B;
    bool boundary_flag = false; // d = 1 on set B: the excluded b = 1 makes r_d = -1
};

namespace detail {

inline bool squarefree_and_phi(u64 d, u64& phi_out) {
    phi_out = 1;
    u64 r = d;
    for (u64 p = 2; u128(p) * p <= r; ++p) {
        if (r % p == 0) {
            r /= p;
            if (r % p == 0) return false;
            phi_out *= p - 1;
        }
    }
    if (r > 1) phi_out *= r - 1;
    return true;
}

} // namespace detail

// r_d diagnostics from the sieve main-term decomposition:
//   set B: actual = #{1 < b <= N : d | b},      main = N / d
//   set A: actual = pi(N; N mod d, d),          main = Li(N) / phi(d)
inline RemainderDiagnostic remainder_diagnostic(const PrimeTable& table, u64 N, u64 d, SetTag tag) {
    if (d < 1) throw std::invalid_argument("remainder_diagnostic: d must be >= 1");
    u64 phi = 1;
    if (!detail::squarefree_and_phi(d, phi))
        throw std::invalid_argument("remainder_diagnostic: d must be squarefree");
    RemainderDiagnostic r;
    r.d = d;
    r.set_tag = tag;
    if (tag == SetTag::B) {
        u64 mult = N / d;
        if (d == 1) {
            mult -= 1; // b = 1 is outside the set
            r.boundary_flag = true;
        }
        r.actual = mult;
        r.main_term = static_cast<double>(N) / static_cast<double>(d);
    } else {
        if (std::gcd(d, N) != 1)
            throw std::invalid_argument("remainder_diagnostic: set A needs gcd(d, N) = 1");
        r.actual = count_primes_in_ap(table, N, N % d, d).count;
        r.main_term = logarithmic_integral(static_cast<double>(N)) / static_cast<double>(phi);
    }
    r.r_d = static_cast<double>(r.actual) - r.main_term;
    return r;
}

} // namespace siftlab
