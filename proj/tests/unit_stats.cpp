#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "adopt/stats.hpp"
#include "test_util.hpp"

using namespace adopt;

namespace {

// 100 draws frozen from an external generator, with reference statistics
// computed by an independent implementation (scipy 1.x).
const std::vector<double> kNormalish = {
    -0.00751127, 0.00139585, 0.01505463, 0.00651161, -0.00713338, -0.02072337, -0.00964464,
    -0.01013923, 0.00356203, 0.01489849, -0.01828381, 0.00531973, -0.00917336, 0.01782402,
    0.01962765, 0.00547734, 0.01470700, 0.00993091, -0.00846640, -0.00986349, -0.00083150,
    0.02340305, -0.01617080, -0.00793687, -0.02985410, 0.02203830, 0.01783666, 0.02636405,
    -0.00768228, -0.00813196, -0.00998056, 0.03045685, 0.02497779, 0.00256568, -0.01204346,
    -0.00838341, 0.01740987, 0.02296393, 0.00314733, -0.01130570, 0.00283694, 0.01475539,
    -0.00802323, 0.00350487, 0.00320013, -0.01397629, 0.02490908, 0.00136006, -0.01460312,
    0.01541762, 0.01393035, 0.00113252, -0.02006982, 0.01702191, 0.01026108, 0.00388186,
    0.01176357, 0.02408381, -0.00108266, 0.00360361, -0.00671850, 0.00910180, 0.00423512,
    -0.01133995, -0.00193614, 0.00740542, 0.00049579, 0.02164992, -0.00235788, -0.01240956,
    -0.00514455, -0.00964527, -0.01414705, 0.01133280, 0.01787098, 0.01449946, -0.00173924,
    0.01073036, 0.01652028, -0.00863807, -0.00096393, 0.01961382, -0.00071222, 0.00037694,
    -0.02005540, 0.00283986, -0.00448319, 0.00766536, -0.00692617, -0.00630567, 0.00548698,
    0.01027465, 0.01850995, -0.00348207, 0.00195991, -0.02569991, 0.00599773, 0.00781098,
    -0.03499279, 0.01703763};

const std::vector<double> kExpSample = {
    0.00378171, 0.00091003, 0.01017285, 0.00247521, 0.00356850, 0.00418560, 0.00772065,
    0.01251002, 0.01386925, 0.03852981, 0.01029048, 0.02566249, 0.01337613, 0.00671351,
    0.01748589, 0.02535391, 0.01091251, 0.00972987, 0.01572913, 0.00795968, 0.00022238,
    0.00391693, 0.00197144, 0.00285273, 0.02495654, 0.00143014, 0.02108003, 0.00193159,
    0.00258149, 0.01526191, 0.01199802, 0.01286314, 0.01225488, 0.01434911, 0.01562424,
    0.00683597, 0.00196871, 0.00153337, 0.00734262, 0.00198906, 0.01258165, 0.00125509,
    0.00156424, 0.00863387, 0.00295446, 0.01508586, 0.00068259, 0.01898780, 0.05215881,
    0.01221086, 0.00295656, 0.02235877, 0.00510640, 0.01475788, 0.00280992, 0.00677408,
    0.02311482, 0.00026548, 0.00369221, 0.00785080, 0.00448772, 0.00438576, 0.01718292,
    0.01206003, 0.00032085, 0.02700909, 0.00164615, 0.02981294, 0.00280288, 0.00221709,
    0.01952416, 0.00340657, 0.01147867, 0.00233763, 0.00768086, 0.01793301, 0.00480517,
    0.03569245, 0.00106672, 0.00186684, 0.02141732, 0.01292509, 0.01688395, 0.00387571,
    0.01047102, 0.00522698, 0.01335787, 0.00217174, 0.00425537, 0.01077182, 0.00954333,
    0.00200526, 0.04771649, 0.02704811, 0.00391879, 0.00391139, 0.00466908, 0.00060740,
    0.00535892, 0.00721388};

std::vector<double> gaussian(std::uint64_t seed, long n, double mu = 0.0, double sd = 1.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(mu, sd);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = normal(gen);
    return x;
}

}  // namespace

TEST_CASE("kurtosis fixed points") {
    std::vector<double> pm1;
    for (int i = 0; i < 500; ++i) pm1.push_back(i % 2 == 0 ? -1.0 : 1.0);
    CHECK(sample_kurtosis(pm1) == doctest::Approx(1.0).epsilon(1e-12));

    const auto g = gaussian(1, 100000);
    CHECK(sample_kurtosis(g) == doctest::Approx(3.0).epsilon(0.1 / 3.0));

    std::mt19937_64 gen(2);
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unif;
    std::vector<double> lap(100000);
    for (double& v : lap) v = (unif(gen) < 0.5 ? 1.0 : -1.0) * expo(gen);
    CHECK(sample_kurtosis(lap) == doctest::Approx(6.0).epsilon(0.3 / 6.0));

    CHECK_THROWS_AS((void)sample_kurtosis(std::vector<double>{1.0, 2.0, 3.0}), NumericError);
}

TEST_CASE("KS statistic and p-value match the reference implementation") {
    const TestResult r = ks_test_known(kNormalish, 0.001, 0.012);
    CHECK(r.statistic == doctest::Approx(0.11969594817278972).epsilon(1e-10));
    // Stephens' scaling vs the plain asymptotic value used by the reference:
    // agreement to a few percent at n = 100.
    CHECK(r.p_value == doctest::Approx(0.11389689933187865).epsilon(0.08));
}

TEST_CASE("KS test is properly sized on a fully specified null") {
    int rejects = 0;
    for (int seed = 0; seed < 200; ++seed) {
        const auto x = gaussian(1000 + seed, 500, 0.0, 2.0);
        rejects += ks_test_known(x, 0.0, 2.0, 0.05).reject;
    }
    const double rate = rejects / 200.0;
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.08);
}

TEST_CASE("KS with estimated parameters is conservative, rejects uniforms") {
    int rejects = 0;
    for (int seed = 0; seed < 100; ++seed)
        rejects += ks_normality_test(gaussian(seed, 500)).reject;
    CHECK(rejects <= 5);  // under-sized by construction (no Lilliefors correction)

    // The sup distance between U(0,1) and its moment-matched normal is about
    // 0.057, right at the 5% critical value for n = 500; n = 2000 makes the
    // rejection decisive.
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unif;
    std::vector<double> u(2000);
    for (double& v : u) v = unif(gen);
    const TestResult ur = ks_normality_test(u);
    CHECK(ur.reject);
    CHECK(ur.statistic == doctest::Approx(0.0568).epsilon(0.35));

    CHECK_THROWS_AS((void)ks_normality_test(std::vector<double>{1, 2, 3, 4, 5}), NumericError);
}

TEST_CASE("Shapiro-Wilk matches the reference implementation") {
    const TestResult n100 = sw_normality_test(kNormalish);
    CHECK(n100.statistic == doctest::Approx(0.9860017673226041).epsilon(2e-4));
    CHECK(n100.p_value == doctest::Approx(0.3740635753691928).epsilon(0.05));
    CHECK(n100.statistic > 0.97);
    CHECK_FALSE(n100.reject);

    const TestResult expo = sw_normality_test(kExpSample);
    CHECK(expo.statistic == doctest::Approx(0.8272325134047209).epsilon(2e-3));
    CHECK(expo.reject);
    CHECK(expo.p_value < 1e-6);

    CHECK_THROWS_AS((void)sw_normality_test(gaussian(1, 6000)), NumericError);
    CHECK_THROWS_AS((void)sw_normality_test(gaussian(1, 11)), NumericError);
}

TEST_CASE("Ljung-Box matches the reference and its invariants") {
    const TestResult lb5 = ljung_box_test(kNormalish, 5);
    CHECK(lb5.statistic == doctest::Approx(10.18479429406632).epsilon(1e-10));
    CHECK(lb5.p_value == doctest::Approx(0.07016534070242).epsilon(1e-8));
    const TestResult lb15 = ljung_box_test(kNormalish, 15);
    CHECK(lb15.statistic == doctest::Approx(20.044203692121897).epsilon(1e-10));
    CHECK(lb15.p_value == doctest::Approx(0.17024353269526285).epsilon(1e-8));

    // Q grows with the lag count (sum of nonnegative terms).
    CHECK(lb15.statistic >= lb5.statistic);

    // Scale invariance.
    std::vector<double> scaled = kNormalish;
    for (double& v : scaled) v *= 1234.5;
    CHECK(ljung_box_test(scaled, 5).statistic == doctest::Approx(lb5.statistic).epsilon(1e-12));

    std::vector<double> constant(50, 3.25);
    CHECK_THROWS_AS((void)ljung_box_test(constant, 5), NumericError);
    CHECK_THROWS_AS((void)ljung_box_test(gaussian(1, 6), 5), NumericError);
}

TEST_CASE("Ljung-Box size and power") {
    int rejects = 0;
    for (int seed = 0; seed < 200; ++seed)
        rejects += ljung_box_test(gaussian(5000 + seed, 1000), 5).reject;
    const double rate = rejects / 200.0;
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.08);

    // AR(1) with phi = 0.6 is rejected essentially always at n = 1000.
    int power = 0;
    for (int seed = 0; seed < 50; ++seed) {
        std::mt19937_64 gen(900 + seed);
        std::normal_distribution<double> normal;
        std::vector<double> x(1000);
        double prev = 0.0;
        for (double& v : x) {
            prev = 0.6 * prev + normal(gen);
            v = prev;
        }
        power += ljung_box_test(x, 5).reject;
    }
    CHECK(power >= 49);
}

TEST_CASE("stylized-fact battery on GBM-like and jumpy returns") {
    int heavy = 0;
    for (int seed = 0; seed < 50; ++seed) {
        const auto returns = gaussian(200 + seed, 500, 0.0002, 0.012);
        const StylizedFactsReport rep = build_report(returns);
        heavy += rep.heavy_tails;
        CHECK(rep.n_obs == 500);
    }
    CHECK(50 - heavy >= 40);  // heavy-tail flag false in >= 80% of seeds

    // Merton-style returns with rare large jumps are leptokurtic.
    std::mt19937_64 gen(42);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    std::vector<double> jumpy(2000);
    for (double& v : jumpy) {
        v = 0.01 * normal(gen);
        if (unif(gen) < 0.03) v += 0.1 * (unif(gen) < 0.5 ? 1.0 : -1.0);
    }
    const StylizedFactsReport rep = build_report(jumpy);
    CHECK(rep.heavy_tails);
    CHECK(rep.kurtosis > 4.0);
    CHECK(rep.ljung_box.size() == 9);

    CHECK_THROWS_AS((void)build_report(gaussian(1, 10)), NumericError);
}
