#pragma once

// Analytic main terms for the sifted sets: the Jurkat-Richert upper/lower
// bounds for |B(m)| and |A cap B(m)| (scaled by (N - w)/N when only the tail
// interval (w, N] is sifted), the bracketing bounds for the proportionality
// ratio alpha(m, N), and the divisor-sum lemma checks.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "siftlab/factor_view.hpp"
#include "siftlab/linear_sieve.hpp"
#include "siftlab/mertens.hpp"
#include "siftlab/singular_series.hpp"

namespace siftlab {

struct SievePrediction {
    u64 N = 0;
    double m = 0.0;
    std::optional<double> w;

    double mertens_W = 0.0; // prod_{p < N^(1/m)} (1 - 1/p); exact if a table was given
    bool mertens_exact = false;
    double cN = 0.0;
    double cN_error = 0.0;

    double F_m = 0.0, f_m = 0.0;     // F(m), f(m)
    double F_m2 = 0.0, f_m2 = 0.0;   // F(m/2), f(m/2); NaN when m < 2

    double jr_upper_B = 0.0, jr_lower_B = 0.0;
    double jr_upper_AB = 0.0, jr_lower_AB = 0.0; // NaN when m < 2

    double alpha_lo = 0.0; // f(m/2) / F(m)
    double alpha_hi = 0.0; // F(m/2) / f(m); +inf when f(m) = 0
};

inline SievePrediction jurkat_richert_main_terms(u64 N, double m,
                                                 std::optional<double> w = {},
                                                 const PrimeTable* table = nullptr,
                                                 u64 cutoff = 1'000'000) {
    if (N < 6 || (N & 1)) throw std::invalid_argument("jurkat_richert_main_terms: N must be even and >= 6");
    if (!(m >= 1.0)) throw std::invalid_argument("jurkat_richert_main_terms: m must be >= 1");
    if (w && !(*w >= 0.0 && *w < 0.5 * static_cast<double>(N)))
        throw std::invalid_argument("jurkat_richert_main_terms: w must satisfy 0 <= w < 0.5 N");

    SievePrediction p;
    p.N = N;
    p.m = m;
    p.w = w;

    double lnN = std::log(static_cast<double>(N));
    double z = std::pow(static_cast<double>(N), 1.0 / m);
    double scale_N = static_cast<double>(N) - (w ? *w : 0.0);

    if (table && z <= static_cast<double>(table->limit()) && z >= 3.0) {
        p.mertens_W = mertens_product(*table, z).product;
        p.mertens_exact = true;
    } else {
        p.mertens_W = m * std::exp(-kEulerGamma) / lnN;
    }

    auto c = singular_series_c_ex(N, cutoff);
    p.cN = c.value;
    p.cN_error = c.tail_error;

    p.F_m = linear_sieve_F(m);
    p.f_m = linear_sieve_f(m);
    double me = m * std::exp(-kEulerGamma);
    p.jr_upper_B = me * scale_N / lnN * p.F_m;
    p.jr_lower_B = me * scale_N / lnN * p.f_m;

    if (m >= 2.0) {
        p.F_m2 = linear_sieve_F(m / 2.0);
        p.f_m2 = linear_sieve_f(m / 2.0);
        p.jr_upper_AB = 2.0 * me * p.cN * scale_N / (lnN * lnN) * p.F_m2;
        p.jr_lower_AB = 2.0 * me * p.cN * scale_N / (lnN * lnN) * p.f_m2;
        p.alpha_lo = p.f_m2 / p.F_m;
        p.alpha_hi = (p.f_m > 0.0) ? p.F_m2 / p.f_m
                                   : std::numeric_limits<double>::infinity();
    } else {
        double nan = std::numeric_limits<double>::quiet_NaN();
        p.F_m2 = p.f_m2 = p.jr_upper_AB = p.jr_lower_AB = nan;
        p.alpha_lo = p.alpha_hi = nan;
    }
    return p;
}

// Divisor-function growth checks:
//  (a) mu(n)^2 3^omega(n) <= d(n)^2 for every n <= x_max (violations counted),
//  (b) sum_{n <= x} d(n)^2 / (x ln^3 x) sampled at decade points.
struct LemmaReport {
    u64 x_max = 0;
    u64 mu3_violations = 0;
    std::vector<std::pair<u64, double>> d2_ratio_by_decade;
    double ratio_spread = 0.0; // max / min over the sampled decades
};

inline LemmaReport lemma_checks(const PrimeTable& table, u64 x_max,
                                u64 segment_size = PrimeTable::kDefaultSegment) {
    if (x_max < 10) throw std::invalid_argument("lemma_checks: x_max too small");
    LemmaReport rep;
    rep.x_max = x_max;

    std::vector<u64> decades;
    for (u64 d = 10'000; d <= x_max; d *= 10) decades.push_back(d);
    if (decades.empty() || decades.back() != x_max) decades.push_back(x_max);

    u64 d2_sum = 0;
    size_t next_decade = 0;
    for_each_factor_segment(table, 1, x_max, segment_size, [&](const FactorView& v) {
        for (u64 i = 0; i < v.size(); ++i) {
            u64 n = v.range_start + i;
            u64 d = v.dcount[i];
            if (v.mu[i] != 0) {
                u64 lhs = 1;
                for (u8 t = 0; t < v.omega[i]; ++t) lhs *= 3;
                if (lhs > d * d) ++rep.mu3_violations;
            }
            d2_sum += d * d;
            while (next_decade < decades.size() && n == decades[next_decade]) {
                double x = static_cast<double>(n);
                double lx = std::log(x);
                rep.d2_ratio_by_decade.emplace_back(
                    n, static_cast<double>(d2_sum) / (x * lx * lx * lx));
                ++next_decade;
            }
        }
    });

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (auto& [x, ratio] : rep.d2_ratio_by_decade) {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    rep.ratio_spread = (lo > 0.0 && std::isfinite(lo)) ? hi / lo : 0.0;
    return rep;
}

} // namespace siftlab
