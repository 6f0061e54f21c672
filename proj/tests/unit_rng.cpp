#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "adopt/rng.hpp"
#include "adopt/stats.hpp"

using adopt::Rng;
using adopt::RngSpec;

TEST_CASE("streams are deterministic and decorrelated") {
    Rng a(RngSpec{42, 7});
    Rng b(RngSpec{42, 7});
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(RngSpec{42, 8});
    Rng d(RngSpec{43, 7});
    int same_c = 0;
    int same_d = 0;
    Rng a2(RngSpec{42, 7});
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t base = a2.next_u64();
        same_c += base == c.next_u64();
        same_d += base == d.next_u64();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("uniform draws have the right first two moments") {
    Rng rng(RngSpec{1, 1});
    const long n = 2'000'000;
    double acc = 0.0;
    double acc2 = 0.0;
    for (long i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        acc += u;
        acc2 += u * u;
    }
    const double mean = acc / n;
    const double var = acc2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(var - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("ziggurat normal sampler matches the standard normal law") {
    Rng rng(RngSpec{2024, 1});
    const long n = 20'000'000;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
    long beyond3 = 0, beyond4 = 0;
    for (long i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        m1 += x;
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
        if (std::abs(x) > 3.0) ++beyond3;
        if (std::abs(x) > 4.0) ++beyond4;
    }
    m1 /= n; m2 /= n; m3 /= n; m4 /= n;
    const double nd = static_cast<double>(n);
    CHECK(std::abs(m1) < 4.0 / std::sqrt(nd));
    CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / nd));
    CHECK(std::abs(m3) < 4.0 * std::sqrt(15.0 / nd));
    CHECK(std::abs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / nd));

    // Tail mass: binomial 4-sigma brackets around 2*Phi(-3), 2*Phi(-4).
    const double p3 = 2.0 * 0.001349898031630095;
    const double p4 = 2.0 * 3.167124183311998e-5;
    CHECK(std::abs(beyond3 / nd - p3) < 4.0 * std::sqrt(p3 * (1 - p3) / nd));
    CHECK(std::abs(beyond4 / nd - p4) < 4.0 * std::sqrt(p4 * (1 - p4) / nd));
}

TEST_CASE("normal sampler passes a KS check") {
    Rng rng(RngSpec{7, 3});
    std::vector<double> x(1'000'000);
    for (double& v : x) v = rng.next_normal();
    const adopt::TestResult r = adopt::ks_test_known(x, 0.0, 1.0, 1e-4);
    CHECK_FALSE(r.reject);
}

TEST_CASE("exponential and laplace samplers have the right moments") {
    Rng rng(RngSpec{5, 5});
    const long n = 2'000'000;
    double acc = 0.0;
    double acc2 = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = rng.next_exponential(2.5);
        acc += x;
        acc2 += x * x;
    }
    CHECK(acc / n == doctest::Approx(1.0 / 2.5).epsilon(0.005));
    CHECK(acc2 / n == doctest::Approx(2.0 / (2.5 * 2.5)).epsilon(0.01));

    acc = acc2 = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = rng.next_laplace(0.3, 0.8);
        acc += x;
        acc2 += (x - 0.3) * (x - 0.3);
    }
    CHECK(acc / n == doctest::Approx(0.3).epsilon(0.01));
    CHECK(acc2 / n == doctest::Approx(2.0 * 0.8 * 0.8).epsilon(0.01));
}
