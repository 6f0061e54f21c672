#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "adopt/core.hpp"
#include "adopt/rng.hpp"

using namespace adopt;

namespace {

// Quadrature oracle: E[e^V] for a Laplace(rho, eta) density, trapezoid rule.
double laplace_mgf1_quadrature(double rho, double eta) {
    const double lo = rho - 60.0 * eta;
    const double hi = rho + 60.0 * eta;  // converges because eta < 1
    const long n = 4'000'000;
    const double h = (hi - lo) / n;
    double acc = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double v = lo + h * i;
        const double f = std::exp(v) * std::exp(-std::abs(v - rho) / eta) / (2.0 * eta);
        acc += (i == 0 || i == n) ? 0.5 * f : f;
    }
    return acc * h;
}

double mc_mean_exp_jump(const JumpSizeDistribution& dist, long n, std::uint64_t seed,
                        double* std_err = nullptr) {
    // Draws V with std facilities, independent of the simulation module.
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    std::exponential_distribution<double> expo;
    double acc = 0.0;
    double acc2 = 0.0;
    for (long i = 0; i < n; ++i) {
        double v = 0.0;
        if (const auto* ln = std::get_if<LogNormalJumps>(&dist)) {
            v = ln->alpha + ln->beta * normal(gen);
        } else if (const auto* ade = std::get_if<LogAdeJumps>(&dist)) {
            if (unif(gen) < ade->p1)
                v = expo(gen) / ade->eta1;
            else
                v = -expo(gen) / ade->eta2;
        } else {
            const auto& lap = std::get<LogLaplacianJumps>(dist);
            const double u = unif(gen) - 0.5;
            v = lap.rho - lap.eta * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
        }
        const double e = std::exp(v);
        acc += e;
        acc2 += e * e;
    }
    const double mean = acc / n;
    if (std_err != nullptr)
        *std_err = std::sqrt((acc2 / n - mean * mean) / static_cast<double>(n));
    return mean;
}

}  // namespace

TEST_CASE("zeta closed forms") {
    CHECK(zeta(LogNormalJumps{0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(zeta(LogAdeJumps{2.0, 1.0, 1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(zeta(LogLaplacianJumps{0.0, 0.5}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(zeta(LogNormalJumps{0.1, 0.2}) == doctest::Approx(0.12749685157937564).epsilon(1e-14));
}

TEST_CASE("zeta against quadrature and Monte Carlo oracles") {
    const double quad = laplace_mgf1_quadrature(0.0, 0.5);
    CHECK(zeta(LogLaplacianJumps{0.0, 0.5}) == doctest::Approx(quad - 1.0).epsilon(1e-7));

    double se = 0.0;
    const double mc = mc_mean_exp_jump(LogNormalJumps{0.1, 0.2}, 1'000'000, 99, &se);
    CHECK(std::abs(zeta(LogNormalJumps{0.1, 0.2}) - (mc - 1.0)) < 1e-3);

    // Every valid law: MC estimate of E[e^V]-1 within 3 standard errors.
    const JumpSizeDistribution laws[] = {
        LogNormalJumps{-0.05, 0.3},
        LogAdeJumps{3.0, 2.0, 0.6, 0.4},
        LogLaplacianJumps{0.1, 0.4},
    };
    std::uint64_t seed = 1000;
    for (const auto& law : laws) {
        const double est = mc_mean_exp_jump(law, 1'000'000, seed++, &se);
        CHECK(std::abs(zeta(law) - (est - 1.0)) < 3.0 * se);
    }
}

TEST_CASE("zeta exceeds the beta=0 value and rejects bad parameters") {
    CHECK(zeta(LogNormalJumps{0.2, 0.3}) > std::exp(0.2) - 1.0);
    CHECK_THROWS_AS((void)zeta(LogAdeJumps{1.0, 1.0, 0.5, 0.5}), ConfigError);
    CHECK_THROWS_AS((void)zeta(LogAdeJumps{2.0, -1.0, 0.5, 0.5}), ConfigError);
    CHECK_THROWS_AS((void)zeta(LogAdeJumps{2.0, 1.0, 0.6, 0.5}), ConfigError);
    CHECK_THROWS_AS((void)zeta(LogLaplacianJumps{0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS((void)zeta(LogNormalJumps{0.0, -0.1}), ConfigError);
}

TEST_CASE("risk-neutral drift") {
    CHECK(risk_neutral_drift(0.1, 0.0, 0.0, LogNormalJumps{0, 0}) == doctest::Approx(0.1));
    CHECK(risk_neutral_drift(0.1, 0.2, 0.0, LogNormalJumps{0, 0}) == doctest::Approx(0.08));
    CHECK(risk_neutral_drift(0.1, 0.2, 2.0, LogLaplacianJumps{0.0, 0.5}) ==
          doctest::Approx(0.1 - 2.0 / 3.0 - 0.02).epsilon(1e-13));
}

TEST_CASE("params enforce the measure split") {
    const auto rn = JumpDiffusionParams::risk_neutral(0.05, 0.2, 1.0, LogNormalJumps{0.1, 0.2});
    CHECK(rn.rate() == 0.05);
    CHECK(rn.log_drift() ==
          doctest::Approx(0.05 - zeta(LogNormalJumps{0.1, 0.2}) - 0.02).epsilon(1e-13));

    const auto rw = JumpDiffusionParams::real_world(0.3, 0.2, 1.0, LogNormalJumps{0.1, 0.2});
    CHECK(rw.log_drift() == doctest::Approx(0.3 - 0.02).epsilon(1e-13));
    CHECK_THROWS_AS((void)rw.rate(), ConfigError);
}

TEST_CASE("time grid examples") {
    OptionSpec google;
    google.exercise_start = 0.0822;
    google.expiry = 0.1644;
    google.averaging_steps = 30;
    google.strike = 1.0;
    const TimeGrid g = build_time_grid(google);
    CHECK(g.dt == doctest::Approx(0.00274).epsilon(1e-12));
    CHECK(g.m_tilde == 30);
    CHECK(g.m == 30);

    OptionSpec ssp_day;
    ssp_day.exercise_start = 0.0;
    ssp_day.expiry = 0.0027;
    ssp_day.averaging_steps = 1;
    const TimeGrid g2 = build_time_grid(ssp_day);
    CHECK(g2.dt == doctest::Approx(0.0027));
    CHECK(g2.m_tilde == 0);
    CHECK(g2.m == 1);

    OptionSpec european;
    european.exercise_start = 1.0;
    european.expiry = 1.0;
    european.averaging_steps = 1;
    const TimeGrid g3 = build_time_grid(european);
    CHECK(g3.m == 1);
    CHECK(g3.horizon() == doctest::Approx(1.0).epsilon(1e-12));

    OptionSpec bad = european;
    bad.averaging_steps = 3;
    CHECK_THROWS_AS((void)build_time_grid(bad), ConfigError);
}

TEST_CASE("time grid ceiling property over random windows") {
    Rng rng(RngSpec{11, 0});
    for (int i = 0; i < 2000; ++i) {
        OptionSpec s;
        s.exercise_start = rng.next_unit() * 0.5;
        s.expiry = s.exercise_start + 1e-4 + rng.next_unit();
        s.averaging_steps = 1 + static_cast<long>(rng.next_unit() * 100);
        const TimeGrid g = build_time_grid(s);
        CHECK(g.m_tilde * g.dt >= s.exercise_start - 1e-12);
        if (g.m_tilde > 0)
            CHECK((g.m_tilde - 1) * g.dt < s.exercise_start + 1e-12);
    }
}

TEST_CASE("price series validation") {
    const auto ok = make_price_series({0.0, 1.0 / 365, 2.0 / 365}, {1.0, 2.0, 3.0});
    CHECK(ok.dt == doctest::Approx(1.0 / 365));

    CHECK_THROWS_AS((void)make_price_series({0.0}, {1.0}), DataError);
    CHECK_THROWS_AS((void)make_price_series({0.0, 1.0, 2.0}, {1.0, 0.0, 3.0}), DataError);
    CHECK_THROWS_AS((void)make_price_series({0.0, 1.0, 2.5}, {1.0, 2.0, 3.0}), DataError);
    CHECK_THROWS_AS((void)make_price_series({0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}), DataError);
}

TEST_CASE("gamma sentinels parse and print") {
    CHECK(Gamma::parse("min").is_min());
    CHECK(Gamma::parse("max").is_max());
    CHECK(Gamma::parse("0.5").value() == 0.5);
    CHECK(Gamma::parse(Gamma::finite(-1.25).to_string()).value() == -1.25);
    CHECK(Gamma::min().to_string() == "min");
    CHECK_THROWS_AS((void)Gamma::parse("fast"), ConfigError);
    CHECK(Gamma::finite(1e-9).is_zero());
    CHECK_FALSE(Gamma::finite(0.1).is_zero());
    CHECK(Gamma::min() <= Gamma::finite(-100.0));
    CHECK(Gamma::finite(2.0) <= Gamma::max());
}
