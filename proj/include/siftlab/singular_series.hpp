#pragma once

// Hardy-Littlewood singular series machinery:
//   c(N)   = prod_{p|N, p>2} (p-1)/(p-2) * prod_{p>2} (1 - 1/(p-1)^2)
//   c_n(N) = prod_{p|N} (1 + (-1)^n/(p-1)^{n-1}) * prod_{p not| N} (1 - (-1)^n/(p-1)^n)
//   r(x)   = (1/x) sum_{k>=1} (1/zeta(k+1)) ln^{k-1} x / k!
// The infinite products are truncated at a prime cutoff; the truncation is
// repaired with a prime-density tail integral and the crude tail bound
// sum_{p>P} 1/(p-1)^2 < 2/(P ln P) is reported as the error bar.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "siftlab/quadrature.hpp"
#include "siftlab/types.hpp"
#include "siftlab/zeta.hpp"

namespace siftlab {

constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

namespace detail {

// Local plain sieve; keeps the analytic layer independent of PrimeTable.
inline const std::vector<u32>& primes_upto(u64 cutoff) {
    static std::mutex mu;
    static std::map<u64, std::vector<u32>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(cutoff);
    if (it != cache.end()) return it->second;
    std::vector<u8> comp(cutoff + 1, 0);
    std::vector<u32> primes;
    for (u64 i = 2; i <= cutoff; ++i) {
        if (comp[i]) continue;
        primes.push_back(static_cast<u32>(i));
        for (u64 j = i * i; j <= cutoff; j += i) comp[j] = 1;
    }
    return cache.emplace(cutoff, std::move(primes)).first->second;
}

inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    for (u64 p = 2; u128(p) * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            do n /= p; while (n % p == 0);
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Prime-density model of sum_{p > P} 1/(p-1)^n: integral of dt/((t-1)^n ln t).
inline double tail_power_sum(double P, int n) {
    auto g = [&](double u) {
        if (u <= 0.0) return 0.0;
        double t = P / u;
        // dt = -P/u^2 du; integrand dt/((t-1)^n ln t)
        return (P / (u * u)) / (std::pow(t - 1.0, n) * std::log(t));
    };
    return adaptive_simpson(g, 0.0, 1.0, 1e-13, 48);
}

// log of prod_{2 < p <= cutoff} (1 - s/(p-1)^n) with the tail repaired,
// s = +-1. Cached per (n, s, cutoff).
inline double odd_prime_product_log(int n, int sign, u64 cutoff) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, u64>, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, sign, cutoff});
        if (it != cache.end()) return it->second;
    }
    const auto& primes = primes_upto(cutoff);
    double log_sum = 0.0;
    for (u32 p : primes) {
        if (p == 2) continue;
        double term = static_cast<double>(sign) / std::pow(static_cast<double>(p) - 1.0, n);
        log_sum += std::log1p(-term);
    }
    // ln(1 - s/(p-1)^n) ~ -s/(p-1)^n for the tail primes
    log_sum -= sign * tail_power_sum(static_cast<double>(cutoff), n);
    std::lock_guard<std::mutex> lock(mu);
    cache[{n, sign, cutoff}] = log_sum;
    return log_sum;
}

} // namespace detail

struct SingularSeries {
    double value = 0.0;
    double tail_error = 0.0; // crude bound on the repaired tail
};

// c(N) of the two-prime problem; N even (the twin case evaluates at N = b >= 2).
inline SingularSeries singular_series_c_ex(u64 N, u64 cutoff = 1'000'000) {
    if (N < 2 || (N & 1)) throw std::invalid_argument("singular_series_c: N must be even and >= 2");
    if (cutoff < 100'000) throw std::invalid_argument("singular_series_c: cutoff must be >= 1e5");
    double log_twin = detail::odd_prime_product_log(2, +1, cutoff);
    double prefactor = 0.0; // log of prod_{p|N, p>2} (p-1)/(p-2)
    for (u64 p : detail::prime_factors(N)) {
        if (p > 2)
            prefactor += std::log((static_cast<double>(p) - 1.0) / (static_cast<double>(p) - 2.0));
    }
    SingularSeries s;
    s.value = std::exp(prefactor + log_twin);
    double P = static_cast<double>(cutoff);
    s.tail_error = s.value * 2.0 / (P * std::log(P));
    return s;
}

inline double singular_series_c(u64 N, u64 cutoff = 1'000'000) {
    return singular_series_c_ex(N, cutoff).value;
}

// c_n(N): first product over p | N, second over p not dividing N (the
// second-product condition follows the n = 3 Vinogradov case; the version
// with both products over p | N is kept visible in cn_divisors_only_reading).
inline double hl_constant_cn(u64 N, int n, u64 cutoff = 1'000'000) {
    if (n < 2) throw std::invalid_argument("hl_constant_cn: n must be >= 2");
    if (cutoff < 100'000) throw std::invalid_argument("hl_constant_cn: cutoff must be >= 1e5");
    if (N < 1) throw std::invalid_argument("hl_constant_cn: N must be >= 1");
    int sign = (n % 2 == 0) ? +1 : -1; // (-1)^n
    auto divisors = detail::prime_factors(N);

    double log_first = 0.0;
    for (u64 p : divisors) {
        double f = 1.0 + sign / std::pow(static_cast<double>(p) - 1.0, n - 1);
        if (f <= 0.0) return 0.0; // p = 2 | N with odd n: parity mismatch
        log_first += std::log(f);
    }

    bool two_divides = !divisors.empty() && divisors.front() == 2;
    double log_second = detail::odd_prime_product_log(n, sign, cutoff);
    if (!two_divides) {
        double f2 = 1.0 - sign; // p = 2 factor of the second product
        if (f2 <= 0.0) return 0.0; // even n with odd N: parity mismatch
        log_second += std::log(f2);
    }
    for (u64 p : divisors) {
        if (p == 2) continue;
        double term = sign / std::pow(static_cast<double>(p) - 1.0, n);
        if (p <= cutoff) {
            log_second -= std::log1p(-term); // remove from the finite product
        } else {
            log_second += term; // remove from the repaired tail (first order)
        }
    }
    return std::exp(log_first + log_second);
}

// The constant as printed with both products over p | N; exact and finite.
// For even N and n = 2 this reading collapses to zero (the p = 2 factor),
// which is why the second product is implemented over p not dividing N.
inline double cn_divisors_only_reading(u64 N, int n) {
    if (n < 2) throw std::invalid_argument("cn_divisors_only_reading: n must be >= 2");
    int sign = (n % 2 == 0) ? +1 : -1;
    double prod = 1.0;
    for (u64 p : detail::prime_factors(N)) {
        prod *= 1.0 + sign / std::pow(static_cast<double>(p) - 1.0, n - 1);
        prod *= 1.0 - sign / std::pow(static_cast<double>(p) - 1.0, n);
    }
    return prod;
}

// r(x): the smoothed prime-density series, 0 below 2.
inline double r_series(double x) {
    if (x < 2.0) return 0.0;
    double L = std::log(x);
    double sum = 0.0;
    double term = 1.0; // L^{k-1} / k! at k = 1
    for (int k = 1; k < 400; ++k) {
        sum += term * inv_zeta_cached(k + 1);
        term *= L / (k + 1);
        if (static_cast<double>(k) > L && term < 1e-15 * sum) break;
    }
    return sum / x;
}

// Truncation diagnostic: same series forced to `extra` additional terms.
inline double r_series_extended(double x, int extra) {
    if (x < 2.0) return 0.0;
    double L = std::log(x);
    double sum = 0.0;
    double term = 1.0;
    int k_stop = -1;
    for (int k = 1; k < 400; ++k) {
        sum += term * inv_zeta_cached(k + 1);
        term *= L / (k + 1);
        if (k_stop < 0 && static_cast<double>(k) > L && term < 1e-15 * sum) k_stop = k + extra;
        if (k_stop >= 0 && k >= k_stop) break;
    }
    return sum / x;
}

// C_n(x) of the probabilistic representation count: the singular-series
// products truncated at the prime bound x^c, c = e^{-gamma}. Prefix sums over
// the cached prime list make each query a binary search.
class CnEvaluator {
public:
    CnEvaluator(u64 N, int n, u64 max_x)
        : N_(N), n_(n), sign_((n % 2 == 0) ? +1 : -1) {
        if (n < 2) throw std::invalid_argument("CnEvaluator: n must be >= 2");
        double max_cut = std::pow(static_cast<double>(max_x), std::exp(-kEulerGamma));
        u64 cutoff = static_cast<u64>(max_cut) + 2;
        primes_ = &detail::primes_upto(std::max<u64>(cutoff, 64));
        divisors_ = detail::prime_factors(N);
        prefix_.resize(primes_->size() + 1, 0.0);
        for (size_t i = 0; i < primes_->size(); ++i) {
            double p = static_cast<double>((*primes_)[i]);
            bool divides = false;
            for (u64 q : divisors_) divides = divides || (q == (*primes_)[i]);
            double f;
            if (divides)
                f = 1.0 + sign_ / std::pow(p - 1.0, n_ - 1); // first product
            else
                f = 1.0 - sign_ / std::pow(p - 1.0, n_); // second product
            prefix_[i + 1] = (f <= 0.0) ? -std::numeric_limits<double>::infinity()
                                        : prefix_[i] + std::log(f);
        }
    }

    double operator()(double x) const {
        if (x < 2.0) return 0.0;
        double cut = std::pow(x, std::exp(-kEulerGamma));
        size_t idx = std::upper_bound(primes_->begin(), primes_->end(), cut) - primes_->begin();
        double lg = prefix_[idx];
        return std::isfinite(lg) ? std::exp(lg) : 0.0;
    }

private:
    u64 N_;
    int n_;
    int sign_;
    const std::vector<u32>* primes_;
    std::vector<u64> divisors_;
    std::vector<double> prefix_;
};

} // namespace siftlab
