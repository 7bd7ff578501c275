#pragma once

// Confronts predictions with exact counts: Goldbach representation counts
// against the singular-series main term and its integral refinement, the
// empirical proportionality ratio alpha-hat against its linear-sieve bounds,
// per-sort and per-interval proportionality, the small-prime count D(m, N),
// the n-prime expectation D_n(N), and twin-prime counts.

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "siftlab/sieve_theory.hpp"
#include "siftlab/sift_sets.hpp"

namespace siftlab {

// Ordered representation count #{p <= N prime : N - p prime}; the symmetric
// pair {p, q} with p != q contributes twice, p = q = N/2 once.
inline u64 goldbach_count(const PrimeTable& table, u64 N) {
    if (N < 4 || (N & 1)) throw std::invalid_argument("goldbach_count: N must be even and >= 4");
    if (N > table.limit()) throw std::out_of_range("goldbach_count: N exceeds table limit");
    u64 count = 0;
    table.for_each_prime(2, N, [&](u64 p) {
        u64 q = N - p;
        if (q >= 2 && table.is_prime(q)) ++count;
    });
    return count;
}

// Fast positivity probe: tries small p first and stops at the first hit; the
// least prime in a representation is tiny for every feasible N.
inline bool goldbach_has_representation(const PrimeTable& table, u64 N) {
    if (N < 4 || (N & 1)) return false;
    if (table.is_prime(N - 2)) return true;
    for (u64 p = 3; p <= N - 2; p += 2)
        if (table.is_prime(p) && table.is_prime(N - p)) return true;
    return false;
}

// 2 c(N) N / ln^2 N.
inline double predicted_goldbach(u64 N, u64 cutoff = 1'000'000) {
    if (N < 6 || (N & 1)) throw std::invalid_argument("predicted_goldbach: N must be even and >= 6");
    double lnN = std::log(static_cast<double>(N));
    return 2.0 * singular_series_c(N, cutoff) * static_cast<double>(N) / (lnN * lnN);
}

// 2 c(N) * integral_2^{N-2} dt / (ln t ln(N - t)).
inline double refined_predicted_goldbach(u64 N, u64 cutoff = 1'000'000) {
    if (N < 6 || (N & 1)) throw std::invalid_argument("refined_predicted_goldbach: N must be even and >= 6");
    double Nd = static_cast<double>(N);
    auto integrand = [Nd](double t) { return 1.0 / (std::log(t) * std::log(Nd - t)); };
    double integral = adaptive_simpson_rel(integrand, 2.0, Nd - 2.0, 1e-7);
    return 2.0 * singular_series_c(N, cutoff) * integral;
}

enum class AlphaVariant { full, right, left };

struct AlphaEstimate {
    u64 N = 0;
    double m = 0.0;
    AlphaVariant variant = AlphaVariant::full;
    std::optional<double> w;
    u64 numerator = 0;   // |A cap B| over the chosen interval
    u64 denominator = 0; // |B| over the chosen interval
    double alpha_hat = 0.0;
    double alpha_lo = 0.0, alpha_hi = 0.0;
    double slack = 1.0;
    bool defined = false; // false when the denominator set is empty
    bool within_bounds = false;
};

namespace detail {

inline AlphaEstimate alpha_from_counts(u64 N, double m, AlphaVariant variant,
                                       std::optional<double> w, u64 numer, u64 denom,
                                       double cN, double slack) {
    AlphaEstimate e;
    e.N = N;
    e.m = m;
    e.variant = variant;
    e.w = w;
    e.numerator = numer;
    e.denominator = denom;
    e.slack = slack;
    e.alpha_lo = linear_sieve_f(m / 2.0) / linear_sieve_F(m);
    double fm = linear_sieve_f(m);
    e.alpha_hi = fm > 0.0 ? linear_sieve_F(m / 2.0) / fm
                          : std::numeric_limits<double>::infinity();
    if (denom == 0) return e; // flagged undefined, not an error
    e.defined = true;
    e.alpha_hat = static_cast<double>(numer) * std::log(static_cast<double>(N)) /
                  (2.0 * cN * static_cast<double>(denom));
    e.within_bounds = numer > 0 && e.alpha_hat >= e.alpha_lo / slack &&
                      e.alpha_hat <= e.alpha_hi * slack;
    return e;
}

} // namespace detail

// alpha-hat = |A cap B(m)| ln N / (2 c(N) |B(m)|), per interval variant.
inline AlphaEstimate alpha_empirical(const PrimeTable& table, u64 N, double m,
                                     AlphaVariant variant = AlphaVariant::full,
                                     std::optional<double> w = {}, double slack = 1.10,
                                     u64 cutoff = 1'000'000, SiftScanOptions opt = {}) {
    if (!(m >= 2.0)) throw std::invalid_argument("alpha_empirical: m must be >= 2");
    if (variant != AlphaVariant::full && !w)
        throw std::invalid_argument("alpha_empirical: interval variants need a cut w");
    opt.need_k = false;
    opt.need_a = true;
    RoughPartitionReport rep = partition_scan(table, N, m, w, opt);
    double cN = singular_series_c(N, cutoff);
    u64 numer = rep.a_total, denom = rep.b_total;
    if (variant == AlphaVariant::right) { numer = rep.a_right; denom = rep.b_right; }
    if (variant == AlphaVariant::left) { numer = rep.a_left; denom = rep.b_left; }
    return detail::alpha_from_counts(N, m, variant, w, numer, denom, cN, slack);
}

struct PartitionRatios {
    RoughPartitionReport counts;
    double cN = 0.0;
    std::map<int, double> per_k; // only cells with |B_k| > 0
    double rho_left = 0.0, rho_right = 0.0;
    bool left_defined = false, right_defined = false;
    double alpha_hat_full = 0.0;
};

// rho_k = |A cap B_k| ln N / (2 c(N) |B_k|) and the interval analogues; the
// report records deviations from proportionality, it does not enforce it.
inline PartitionRatios partition_proportionality(const PrimeTable& table, u64 N, double m,
                                                 double w, u64 cutoff = 1'000'000,
                                                 SiftScanOptions opt = {}) {
    if (!(m >= 2.0)) throw std::invalid_argument("partition_proportionality: m must be >= 2");
    opt.need_k = true;
    opt.need_a = true;
    PartitionRatios out;
    out.counts = partition_scan(table, N, m, w, opt);
    out.cN = singular_series_c(N, cutoff);
    double lnN = std::log(static_cast<double>(N));
    double scale = lnN / (2.0 * out.cN);
    const auto& rep = out.counts;
    for (size_t k = 1; k <= rep.b_by_k.size(); ++k) {
        if (rep.b_by_k[k - 1] == 0) continue;
        out.per_k[static_cast<int>(k)] =
            scale * static_cast<double>(rep.a_by_k[k - 1]) / static_cast<double>(rep.b_by_k[k - 1]);
    }
    if (rep.b_left > 0) {
        out.rho_left = scale * static_cast<double>(rep.a_left) / static_cast<double>(rep.b_left);
        out.left_defined = true;
    }
    if (rep.b_right > 0) {
        out.rho_right = scale * static_cast<double>(rep.a_right) / static_cast<double>(rep.b_right);
        out.right_defined = true;
    }
    if (rep.b_total > 0)
        out.alpha_hat_full = scale * static_cast<double>(rep.a_total) / static_cast<double>(rep.b_total);
    return out;
}

struct DmnReport {
    u64 N = 0;
    double m = 0.0;
    u64 actual = 0;             // primes q <= N^(2/m) with N - q prime
    double predicted_alpha1 = 0.0;    // m c(N) N^(2/m) / ln^2 N with alpha = 1
    double predicted_alphahat = 0.0;  // same with alpha = alpha-hat(N, m)
    double alpha_hat = 0.0;
    bool empty_range = false;   // N^(2/m) < 2
};

inline DmnReport dmn_report(const PrimeTable& table, u64 N, double m,
                            u64 cutoff = 1'000'000, SiftScanOptions opt = {}) {
    if (!(m >= 2.0)) throw std::invalid_argument("dmn_report: m must be >= 2");
    DmnReport r;
    r.N = N;
    r.m = m;
    r.actual = goldbach_small_prime_count(table, N, m);
    r.empty_range = power_cut_n2m(N, m) < 2;
    double lnN = std::log(static_cast<double>(N));
    double n2m = std::pow(static_cast<double>(N), 2.0 / m);
    double cN = singular_series_c(N, cutoff);
    r.predicted_alpha1 = m * cN * n2m / (lnN * lnN);
    AlphaEstimate a = alpha_empirical(table, N, m, AlphaVariant::full, {}, 1.10, cutoff, opt);
    r.alpha_hat = a.defined ? a.alpha_hat : 0.0;
    r.predicted_alphahat = r.predicted_alpha1 * r.alpha_hat;
    return r;
}

// D_n(N) by direct summation of the probabilistic density: n = 2 is a single
// sum over the first part, n = 3 a double sum; parities of n and N must match
// or the result is 0.
inline double dn_expectation(u64 N, int n) {
    if (n != 2 && n != 3) throw std::invalid_argument("dn_expectation: only n in {2, 3} supported");
    if ((static_cast<u64>(n) + N) % 2 != 0) return 0.0;
    if (n == 2 && N > 1'000'000) throw std::invalid_argument("dn_expectation: N too large for n = 2");
    if (n == 3 && N > 20'000) throw std::invalid_argument("dn_expectation: N too large for n = 3");
    if (N < 4) return 0.0;

    CnEvaluator Cn(N, n, N);
    if (n == 2) {
        double sum = 0.0;
        for (u64 x1 = 2; x1 + 2 <= N; ++x1) {
            u64 x2 = N - x1;
            sum += Cn(static_cast<double>(x2)) * r_series(static_cast<double>(x1)) *
                   r_series(static_cast<double>(x2));
        }
        return sum;
    }
    // n = 3: precompute r and C_3 per integer once.
    std::vector<double> r_tab(N + 1, 0.0), c_tab(N + 1, 0.0);
    for (u64 x = 2; x <= N; ++x) {
        r_tab[x] = r_series(static_cast<double>(x));
        c_tab[x] = Cn(static_cast<double>(x));
    }
    double sum = 0.0;
    for (u64 x1 = 2; x1 + 4 <= N; ++x1) {
        double rx1 = r_tab[x1];
        u64 hi = N - x1 - 2;
        for (u64 x2 = 2; x2 <= hi; ++x2) {
            u64 x3 = N - x1 - x2;
            sum += c_tab[x3] * rx1 * r_tab[x2] * r_tab[x3];
        }
    }
    return sum;
}

// D_n(N) ~ c_n(N) / (n-1)! * N^{n-1} / ln^n N; 0 on parity mismatch.
inline double dn_asymptotic(u64 N, int n, u64 cutoff = 1'000'000) {
    if (n < 2) throw std::invalid_argument("dn_asymptotic: n must be >= 2");
    if ((static_cast<u64>(n) + N) % 2 != 0) return 0.0;
    double cn = hl_constant_cn(N, n, cutoff);
    double lnN = std::log(static_cast<double>(N));
    double fact = 1.0;
    for (int i = 2; i < n; ++i) fact *= i;
    return cn / fact * std::pow(static_cast<double>(N), n - 1) / std::pow(lnN, n);
}

struct TwinReport {
    u64 x = 0, b = 0;
    u64 actual = 0;
    double c_b = 0.0;
    double predicted = 0.0; // 2 c(b) x / ln^2 x
    double ratio = 0.0;
};

inline TwinReport twin_report(const PrimeTable& table, u64 x, u64 b, u64 cutoff = 1'000'000) {
    TwinReport r;
    r.x = x;
    r.b = b;
    r.actual = twin_count(table, x, b);
    r.c_b = singular_series_c(b, cutoff);
    double lx = std::log(static_cast<double>(x));
    r.predicted = 2.0 * r.c_b * static_cast<double>(x) / (lx * lx);
    r.ratio = r.predicted > 0.0 ? static_cast<double>(r.actual) / r.predicted : 0.0;
    return r;
}

struct ConvergenceStudy {
    std::vector<AlphaEstimate> full;
    std::vector<AlphaEstimate> right;
    double slope_full = 0.0;  // least-squares slope of |alpha-hat - 1| vs 1/ln N
    double slope_right = 0.0;
};

namespace detail {

inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

} // namespace detail

inline ConvergenceStudy convergence_study(const PrimeTable& table, const std::vector<u64>& N_list,
                                          double m, double w_fraction = 0.4,
                                          u64 cutoff = 1'000'000, SiftScanOptions opt = {}) {
    if (!(m >= 2.0)) throw std::invalid_argument("convergence_study: m must be >= 2");
    ConvergenceStudy out;
    std::vector<double> xs, yf, yr;
    for (u64 N : N_list) {
        double w = w_fraction * static_cast<double>(N);
        opt.need_k = false;
        opt.need_a = true;
        RoughPartitionReport rep = partition_scan(table, N, m, w, opt);
        double cN = singular_series_c(N, cutoff);
        out.full.push_back(detail::alpha_from_counts(N, m, AlphaVariant::full, w, rep.a_total,
                                                     rep.b_total, cN, 1.10));
        out.right.push_back(detail::alpha_from_counts(N, m, AlphaVariant::right, w, rep.a_right,
                                                      rep.b_right, cN, 1.10));
        xs.push_back(1.0 / std::log(static_cast<double>(N)));
        yf.push_back(std::fabs(out.full.back().alpha_hat - 1.0));
        yr.push_back(std::fabs(out.right.back().alpha_hat - 1.0));
    }
    out.slope_full = detail::ls_slope(xs, yf);
    out.slope_right = detail::ls_slope(xs, yr);
    return out;
}

// The side-by-side empirical-vs-predicted bundle for one N.
struct AnalysisReport {
    u64 N = 0;
    double m = 0.0;
    double w = 0.0;
    u64 goldbach_actual = 0;
    double predicted_crude = 0.0;
    double predicted_refined = 0.0;
    double alpha_hat = 0.0;
    std::map<int, double> per_k_ratios;
    double rho_left = 0.0, rho_right = 0.0;
    bool left_defined = false, right_defined = false;
    DmnReport dmn;
    double dn2_expectation = 0.0; // direct sum, 0 when out of range
    bool dn2_computed = false;
    double dn2_asymptotic = 0.0;
    TwinReport twin;
};

inline AnalysisReport analyze(const PrimeTable& table, u64 N, double m = 3.0,
                              std::optional<double> w_opt = {}, u64 twin_b = 2,
                              u64 cutoff = 1'000'000, SiftScanOptions opt = {}) {
    if (N < 6 || (N & 1)) throw std::invalid_argument("analyze: N must be even and >= 6");
    AnalysisReport rep;
    rep.N = N;
    rep.m = m;
    rep.w = w_opt ? *w_opt : 0.4 * static_cast<double>(N);
    rep.goldbach_actual = goldbach_count(table, N);
    rep.predicted_crude = predicted_goldbach(N, cutoff);
    rep.predicted_refined = refined_predicted_goldbach(N, cutoff);

    PartitionRatios pr = partition_proportionality(table, N, m, rep.w, cutoff, opt);
    rep.alpha_hat = pr.alpha_hat_full;
    rep.per_k_ratios = pr.per_k;
    rep.rho_left = pr.rho_left;
    rep.rho_right = pr.rho_right;
    rep.left_defined = pr.left_defined;
    rep.right_defined = pr.right_defined;

    rep.dmn = dmn_report(table, N, m, cutoff, opt);
    if (N <= 100'000) {
        rep.dn2_expectation = dn_expectation(N, 2);
        rep.dn2_computed = true;
    }
    rep.dn2_asymptotic = dn_asymptotic(N, 2, cutoff);
    rep.twin = twin_report(table, std::min(N, table.limit()), twin_b, cutoff);
    return rep;
}

} // namespace siftlab
