#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siftlab/goldbach_analysis.hpp"

#include "oracles.hpp"

using namespace siftlab;

namespace {
const PrimeTable& table() {
    static PrimeTable t(1'000'000);
    return t;
}
constexpr double kTwinConstant = 0.660161815846869573927812110014556;
} // namespace

TEST_CASE("goldbach_count worked examples") {
    CHECK(goldbach_count(table(), 4) == 1);
    CHECK(goldbach_count(table(), 10) == 3);
    CHECK(goldbach_count(table(), 100) == 12);
    CHECK(goldbach_count(table(), 10'000) == 254);
    CHECK_THROWS_AS(goldbach_count(table(), 99), std::invalid_argument);
    CHECK_THROWS_AS(goldbach_count(table(), 2), std::invalid_argument);
}

TEST_CASE("goldbach_count equals brute force for all even N <= 2000 and samples to 1e4") {
    for (u64 N = 4; N <= 2000; N += 2)
        CHECK(goldbach_count(table(), N) == oracle::goldbach_count(N));
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 50; ++i) {
        u64 N = 4 + 2 * (rng() % 4998);
        N += 2 * (rng() % 2) * 2500; // spread over [4, 1e4]
        CAPTURE(N);
        CHECK(goldbach_count(table(), N) == oracle::goldbach_count(N));
    }
}

TEST_CASE("goldbach_count is direction-independent") {
    // descending scan oracle
    auto descending = [&](u64 N) {
        u64 c = 0;
        for (u64 p = N; p >= 2; --p)
            if (table().is_prime(p) && N - p >= 2 && table().is_prime(N - p)) ++c;
        return c;
    };
    for (u64 N : {100ull, 1234ull, 35'678ull})
        CHECK(goldbach_count(table(), N) == descending(N));
}

TEST_CASE("goldbach positivity sweep") {
    for (u64 N = 4; N <= 200'000; N += 2) {
        if (!goldbach_has_representation(table(), N)) {
            CAPTURE(N);
            CHECK(false);
        }
    }
}

TEST_CASE("predicted_goldbach") {
    double lnN = std::log(100.0);
    double expect = 2.0 * (4.0 / 3.0) * kTwinConstant * 100.0 / (lnN * lnN);
    CHECK(predicted_goldbach(100) == doctest::Approx(expect).epsilon(1e-8));
    CHECK(predicted_goldbach(100) == doctest::Approx(8.301).epsilon(1e-3));
    // powers of two use the twin constant alone
    double ln1024 = std::log(1024.0);
    CHECK(predicted_goldbach(1024) ==
          doctest::Approx(2.0 * kTwinConstant * 1024.0 / (ln1024 * ln1024)).epsilon(1e-8));
    // scaling identity: c(4N) = c(N)
    u64 N = 4242;
    double ratio = predicted_goldbach(4 * N) / predicted_goldbach(N);
    double lnn = std::log(static_cast<double>(N)), ln4n = std::log(4.0 * N);
    CHECK(ratio == doctest::Approx(4.0 * lnn * lnn / (ln4n * ln4n)).epsilon(1e-10));
    CHECK_THROWS_AS(predicted_goldbach(99), std::invalid_argument);
}

TEST_CASE("refined prediction: frozen value, ordering, symmetry") {
    // quadrature oracle: 2 c(100) * int_2^98 dt/(ln t ln(100 - t)) = 14.1535022993
    CHECK(refined_predicted_goldbach(100) == doctest::Approx(14.1535022993).epsilon(1e-5));
    for (u64 N = 16; N <= 300; N += 2)
        CHECK(refined_predicted_goldbach(N) >= predicted_goldbach(N));
    for (u64 N : {1000ull, 50'000ull})
        CHECK(refined_predicted_goldbach(N) >= predicted_goldbach(N));
    // half-range symmetry of the integrand
    u64 N = 10'000;
    auto integrand = [N](double t) {
        return 1.0 / (std::log(t) * std::log(static_cast<double>(N) - t));
    };
    double full = adaptive_simpson_rel(integrand, 2.0, static_cast<double>(N) - 2.0, 1e-11);
    double half = adaptive_simpson_rel(integrand, 2.0, static_cast<double>(N) / 2.0, 1e-11);
    CHECK(full == doctest::Approx(2.0 * half).epsilon(1e-9));
}

TEST_CASE("alpha_empirical at N=100, m=2") {
    AlphaEstimate a = alpha_empirical(table(), 100, 2.0);
    CHECK(a.defined);
    CHECK(a.numerator == 11);
    CHECK(a.denominator == 21);
    double expect = 11.0 * std::log(100.0) / (2.0 * (4.0 / 3.0) * kTwinConstant * 21.0);
    CHECK(a.alpha_hat == doctest::Approx(expect).epsilon(1e-8));
    CHECK(a.alpha_hat == doctest::Approx(1.370).epsilon(1e-3));
    CHECK(std::isinf(a.alpha_hi)); // f(2) = 0
    CHECK_THROWS_AS(alpha_empirical(table(), 100, 1.5), std::invalid_argument);
}

TEST_CASE("alpha bounds attach at m=5") {
    AlphaEstimate a = alpha_empirical(table(), 100'000, 5.0);
    CHECK(a.alpha_lo == doctest::Approx(0.5767).epsilon(0.002 / 0.5767));
    CHECK(a.alpha_hi == doctest::Approx(1.42737).epsilon(1e-4));
    CHECK(a.defined);
    CHECK(a.alpha_hat > 0.0);
}

TEST_CASE("alpha flagged cases") {
    // empty left interval: w below the sift threshold
    AlphaEstimate empty = alpha_empirical(table(), 100, 2.0, AlphaVariant::left, 9.0);
    CHECK_FALSE(empty.defined);
    CHECK(empty.alpha_hat == 0.0);
    CHECK_FALSE(empty.within_bounds);
    // nonempty denominator with zero numerator: B_l(2, 16) = {13} at N = 128
    // and 128 - 13 = 115 = 5 * 23
    AlphaEstimate zero = alpha_empirical(table(), 128, 2.0, AlphaVariant::left, 16.0);
    CHECK(zero.defined);
    CHECK(zero.denominator == 1);
    CHECK(zero.numerator == 0);
    CHECK(zero.alpha_hat == 0.0);
    CHECK_FALSE(zero.within_bounds);
    CHECK_THROWS_AS(alpha_empirical(table(), 100, 2.0, AlphaVariant::right), std::invalid_argument);
}

TEST_CASE("partition proportionality at N=100, m=2") {
    PartitionRatios pr = partition_proportionality(table(), 100, 2.0, 30.0);
    REQUIRE(pr.per_k.count(1) == 1);
    CHECK(pr.per_k.size() == 1); // only rho_1 is defined
    CHECK(pr.per_k.at(1) == doctest::Approx(pr.alpha_hat_full).epsilon(1e-12));
    // bookkeeping: numerators sum to the A-side total
    u64 ak_sum = 0;
    for (u64 v : pr.counts.a_by_k) ak_sum += v;
    CHECK(ak_sum == pr.counts.a_total);
    CHECK(pr.left_defined);
    CHECK(pr.right_defined);
}

TEST_CASE("dmn report") {
    DmnReport r2 = dmn_report(table(), 100, 2.0);
    CHECK(r2.actual == 12);
    CHECK(r2.predicted_alpha1 == doctest::Approx(8.301).epsilon(1e-3));
    CHECK(r2.predicted_alphahat == doctest::Approx(r2.predicted_alpha1 * r2.alpha_hat).epsilon(1e-12));

    DmnReport r4 = dmn_report(table(), 100, 4.0);
    CHECK(r4.actual == 1);
    double lnN = std::log(100.0);
    CHECK(r4.predicted_alpha1 ==
          doctest::Approx(4.0 * (4.0 / 3.0) * kTwinConstant * 10.0 / (lnN * lnN)).epsilon(1e-8));
    CHECK(r4.predicted_alpha1 == doctest::Approx(1.660).epsilon(1e-3));

    DmnReport big = dmn_report(table(), 100, 20.0);
    CHECK(big.actual == 0);
    CHECK(big.empty_range);
    CHECK_THROWS_AS(dmn_report(table(), 100, 1.0), std::invalid_argument);
}

TEST_CASE("dn expectation: golden values and parity") {
    CHECK(dn_expectation(9, 2) == 0.0);   // parity mismatch
    CHECK(dn_expectation(10, 3) == 0.0);  // parity mismatch
    // frozen independent sums (same series evaluated with mpmath zeta weights)
    CHECK(dn_expectation(10, 2) == doctest::Approx(1.7746245788).epsilon(1e-6));
    CHECK(dn_expectation(100, 2) == doctest::Approx(10.3214126276).epsilon(1e-6));
    CHECK(dn_expectation(10'000, 2) == doctest::Approx(262.2613218).epsilon(1e-6));
    // D_2 tracks the exact count within a factor 2 from N = 100 up
    for (u64 N : {100ull, 1000ull, 10'000ull}) {
        double d2 = dn_expectation(N, 2);
        double actual = static_cast<double>(goldbach_count(table(), N));
        CHECK(d2 > 0.5 * actual);
        CHECK(d2 < 2.0 * actual);
    }
    // three-prime sum: 21 = p1+p2+p3 has 16 ordered all-odd-prime solutions
    double d3 = dn_expectation(21, 3);
    CHECK(d3 > 4.0);
    CHECK(d3 < 64.0);
    CHECK_THROWS_AS(dn_expectation(10, 4), std::invalid_argument);
    CHECK_THROWS_AS(dn_expectation(2'000'000, 2), std::invalid_argument);
}

TEST_CASE("dn asymptotic") {
    std::mt19937_64 rng(808);
    for (int i = 0; i < 40; ++i) {
        u64 N = 6 + 2 * (rng() % 500'000);
        CAPTURE(N);
        CHECK(dn_asymptotic(N, 2) == doctest::Approx(predicted_goldbach(N)).epsilon(1e-8));
    }
    CHECK(dn_asymptotic(10'000, 3) == 0.0); // parity
    u64 N = 10'001;
    double lnN = std::log(static_cast<double>(N));
    double expect = hl_constant_cn(N, 3) / 2.0 * static_cast<double>(N) * N / (lnN * lnN * lnN);
    CHECK(dn_asymptotic(N, 3) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("twin report at small x") {
    TwinReport r = twin_report(table(), 100, 2);
    CHECK(r.actual == 8);
    double lnx = std::log(100.0);
    CHECK(r.predicted == doctest::Approx(2.0 * kTwinConstant * 100.0 / (lnx * lnx)).epsilon(1e-8));
    CHECK(r.ratio == doctest::Approx(8.0 / r.predicted).epsilon(1e-12));
    // c(6) = 2 c(2): prediction doubles at equal x
    TwinReport r6 = twin_report(table(), 100'000, 6);
    TwinReport r2 = twin_report(table(), 100'000, 2);
    CHECK(r6.predicted == doctest::Approx(2.0 * r2.predicted).epsilon(1e-9));
    CHECK_THROWS_AS(twin_report(table(), 100, 3), std::invalid_argument);
}

TEST_CASE("convergence study structure") {
    std::vector<u64> Ns = {10'000, 100'000};
    ConvergenceStudy s = convergence_study(table(), Ns, 5.0);
    CHECK(s.full.size() == Ns.size());
    CHECK(s.right.size() == Ns.size());
    for (size_t i = 0; i < Ns.size(); ++i) {
        CHECK(s.full[i].N == Ns[i]);
        CHECK(s.full[i].defined);
        CHECK(s.right[i].defined);
        CHECK(s.right[i].variant == AlphaVariant::right);
    }
}

TEST_CASE("analysis report bundle") {
    AnalysisReport rep = analyze(table(), 100, 2.0, 30.0, 2);
    CHECK(rep.goldbach_actual == 12);
    CHECK(rep.predicted_crude == doctest::Approx(8.301).epsilon(1e-3));
    CHECK(rep.per_k_ratios.count(1) == 1);
    CHECK(rep.dmn.actual == 12);
    CHECK(rep.dn2_computed);
    CHECK(rep.dn2_expectation == doctest::Approx(10.3214126276).epsilon(1e-6));
    CHECK(rep.dn2_asymptotic == doctest::Approx(predicted_goldbach(100)).epsilon(1e-10));
    CHECK(rep.twin.actual == 8);
    CHECK_THROWS_AS(analyze(table(), 99), std::invalid_argument);
}
