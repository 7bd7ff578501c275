#pragma once

// Built-in invariant suite behind the `verify` subcommand. Each check prints
// one line; the suite fails if any check fails. Reference values here are
// recomputed from scratch (trial division, direct products), not taken from
// the modules under test.

#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "siftlab/cache.hpp"
#include "siftlab/emit.hpp"
#include "siftlab/goldbach_analysis.hpp"

namespace siftlab {

namespace verify_detail {

inline bool trial_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

struct TrialProfile {
    u64 spf = 0;
    int mu = 0;
    int omega = 0;
    int omega_mult = 0;
    u64 dcount = 1;
    u64 phi = 1;
};

inline TrialProfile trial_profile(u64 n) {
    TrialProfile pr;
    if (n <= 1) {
        pr.mu = n == 1;
        pr.dcount = n;
        pr.phi = n;
        pr.spf = 0;
        return pr;
    }
    bool squareful = false;
    u64 r = n;
    for (u64 p = 2; p * p <= r; ++p) {
        if (r % p) continue;
        int e = 0;
        u64 pe = 1;
        while (r % p == 0) { r /= p; ++e; pe *= p; }
        if (!pr.spf) pr.spf = p;
        pr.omega++;
        pr.omega_mult += e;
        pr.dcount *= e + 1;
        pr.phi *= pe / p * (p - 1);
        squareful |= e >= 2;
    }
    if (r > 1) {
        if (!pr.spf) pr.spf = r;
        pr.omega++;
        pr.omega_mult++;
        pr.dcount *= 2;
        pr.phi *= r - 1;
    }
    pr.mu = squareful ? 0 : ((pr.omega & 1) ? -1 : 1);
    return pr;
}

inline u64 brute_rough_count(u64 N, u64 threshold) {
    u64 c = 0;
    for (u64 b = 2; b <= N; ++b)
        if (trial_profile(b).spf >= threshold) ++c;
    return c;
}

inline u64 brute_goldbach(u64 N) {
    u64 c = 0;
    for (u64 p = 2; p <= N; ++p)
        if (trial_is_prime(p) && N - p >= 2 && trial_is_prime(N - p)) ++c;
    return c;
}

} // namespace verify_detail

// Runs the invariant suite; returns the number of failed checks.
inline int run_verify(const PrimeTable& table, std::ostream& out, unsigned workers = 0) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    std::mt19937_64 rng(20240808);

    // prime table vs trial division
    {
        bool ok = table.prime_count(10'000) == 1229;
        for (int i = 0; ok && i < 300; ++i) {
            u64 n = rng() % std::min<u64>(table.limit(), 4'000'000);
            ok = table.is_prime(n) == verify_detail::trial_is_prime(n);
        }
        check("prime table agrees with trial division", ok);
        if (table.limit() >= 1'000'000)
            check("pi(1e6) = 78498", table.prime_count(1'000'000) == 78498);
    }

    // factor profiles vs trial division
    {
        bool ok = true;
        for (int rep = 0; ok && rep < 5; ++rep) {
            u64 lo = 1 + rng() % 500'000;
            FactorView v = build_factor_view(table, lo, lo + 400);
            for (u64 n = lo; ok && n <= lo + 400; n += 7) {
                auto pr = verify_detail::trial_profile(n);
                u64 i = v.index_of(n);
                ok = v.spf[i] == pr.spf && v.mu[i] == pr.mu && v.omega[i] == pr.omega &&
                     v.dcount[i] == pr.dcount && v.phi[i] == pr.phi;
            }
        }
        check("factor profiles agree with trial division", ok);
    }

    // rough counts vs brute force
    {
        bool ok = true;
        for (double m : {1.5, 2.0, 3.0, 5.0}) {
            u64 t = sift_threshold(5000, m);
            ok = ok && rough_count(table, 5000, m) == verify_detail::brute_rough_count(5000, t);
        }
        check("rough counts match brute force at N=5000", ok);
    }

    // partition identities
    {
        SiftScanOptions opt;
        opt.workers = workers;
        RoughPartitionReport rep = partition_scan(table, 100'000, 3.5, 23'000.0, opt);
        u64 bsum = 0, asum = 0;
        for (u64 v : rep.b_by_k) bsum += v;
        for (u64 v : rep.a_by_k) asum += v;
        check("partition identities exact at N=1e5",
              bsum == rep.b_total && asum == rep.a_total &&
                  rep.b_left + rep.b_right == rep.b_total &&
                  rep.a_left + rep.a_right == rep.a_total);
    }

    // determinism across worker counts
    {
        SiftScanOptions w1, w8;
        w1.workers = 1;
        w8.workers = 8;
        w8.segment_size = 1u << 14;
        auto a = partition_scan(table, 100'000, 3.0, 20'000.0, w1);
        auto b = partition_scan(table, 100'000, 3.0, 20'000.0, w8);
        check("counts identical for 1 and 8 workers",
              a.b_total == b.b_total && a.a_total == b.a_total && a.b_by_k == b.b_by_k &&
                  a.b_left == b.b_left);
    }

    // goldbach counts vs brute force and positivity
    {
        bool ok = true;
        for (u64 N = 1000; N <= 1100; N += 2)
            ok = ok && goldbach_count(table, N) == verify_detail::brute_goldbach(N);
        check("goldbach counts match brute force", ok);
        u64 sweep = std::min<u64>(table.limit(), 1'000'000);
        bool positive = true;
        for (u64 N = 4; N <= sweep; N += 2)
            if (!goldbach_has_representation(table, N)) {
                positive = false;
                break;
            }
        check("goldbach positivity up to the sweep bound", positive);
    }

    // twin prime anchor
    if (table.limit() >= 1'000'000)
        check("twin count |E_2(1e6)| = 8169", twin_count(table, 1'000'000, 2) == 8169);

    // remainder bound on set B
    {
        bool ok = true;
        for (u64 d = 2; ok && d <= 2000; ++d) {
            if (verify_detail::trial_profile(d).mu == 0) continue;
            ok = std::fabs(remainder_diagnostic(table, 99'990, d, SetTag::B).r_d) < 1.0;
        }
        check("|r_d| < 1 on set B for squarefree d in [2, 2000]", ok);
    }

    // mertens scaling
    {
        auto m = mertens_product(table, 10'000.0);
        double lnz = std::log(10'000.0);
        check("mertens product scaling at z=1e4",
              std::fabs(m.product * std::exp(kEulerGamma) * lnz - 1.0) < 1.0 / lnz);
    }

    // analytic identities
    {
        check("zeta(2) = pi^2/6",
              std::fabs(zeta_integer(2) - M_PI * M_PI / 6.0) < 1e-12);
        bool ok = true;
        for (int i = 0; ok && i < 10; ++i) {
            u64 N = 4 + 2 * (rng() % 100'000);
            ok = std::fabs(hl_constant_cn(N, 2) - 2.0 * singular_series_c(N)) <
                 1e-8 * 2.0 * singular_series_c(N);
        }
        check("c_2(N) = 2 c(N)", ok);
        check("linear sieve anchors",
              linear_sieve_f(2.0) == 0.0 &&
                  std::fabs(linear_sieve_F(2.0) - std::exp(kEulerGamma)) < 1e-9 &&
                  std::fabs(linear_sieve_f(2.5) / linear_sieve_F(5.0) - 0.5767) < 0.002);
    }

    // cache round trip
    {
        bool ok = false;
        try {
            PrimeTable small(100'000);
            std::string path = "siftlab_verify_cache.tmp";
            save_cache(small, path);
            PrimeTable loaded = load_cache(path);
            ok = loaded.words() == small.words() &&
                 loaded.prime_count_total() == small.prime_count_total();
            std::remove(path.c_str());
        } catch (...) {
            ok = false;
        }
        check("cache round trip is bit-identical", ok);
    }

    out << (failures == 0 ? "verify: all checks passed\n"
                          : "verify: " + std::to_string(failures) + " check(s) FAILED\n");
    return failures;
}

} // namespace siftlab
