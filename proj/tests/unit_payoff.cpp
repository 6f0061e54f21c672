#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adopt/payoff.hpp"
#include "adopt/rng.hpp"

using namespace adopt;

namespace {

PriceWindow random_window(Rng& rng, std::size_t max_len = 20) {
    PriceWindow w;
    const std::size_t len = 1 + static_cast<std::size_t>(rng.next_unit() * max_len);
    for (std::size_t i = 0; i < len; ++i)
        w.prices.push_back(std::exp((rng.next_unit() - 0.5) * 9.0));  // ~ [0.011, 90]
    return w;
}

Gamma random_gamma(Rng& rng) {
    const double u = rng.next_unit();
    if (u < 0.1) return Gamma::min();
    if (u < 0.2) return Gamma::max();
    return Gamma::finite((rng.next_unit() - 0.5) * 20.0);
}

}  // namespace

TEST_CASE("power mean special cases on fixed windows") {
    CHECK(power_mean(PriceWindow{{1, 2, 3}}, Gamma::finite(1.0)) == doctest::Approx(2.0));
    CHECK(power_mean(PriceWindow{{1, 4}}, Gamma::finite(0.0)) == doctest::Approx(2.0));
    CHECK(power_mean(PriceWindow{{1, 7}}, Gamma::finite(2.0)) == doctest::Approx(5.0));
    CHECK(power_mean(PriceWindow{{3, 1, 2}}, Gamma::min()) == doctest::Approx(1.0));
    CHECK(power_mean(PriceWindow{{3, 1, 2}}, Gamma::max()) == doctest::Approx(3.0));
    CHECK(power_mean(PriceWindow{{2, 8}}, Gamma::finite(-1.0)) ==
          doctest::Approx(2.0 / (0.5 + 0.125)));
}

TEST_CASE("power mean special and limiting cases across random windows") {
    Rng rng(RngSpec{21, 0});
    for (int it = 0; it < 2000; ++it) {
        const PriceWindow w = random_window(rng);
        const auto& x = w.prices;
        const double m = static_cast<double>(x.size());

        CHECK(power_mean(w, Gamma::min()) ==
              doctest::Approx(*std::min_element(x.begin(), x.end())).epsilon(1e-12));
        CHECK(power_mean(w, Gamma::max()) ==
              doctest::Approx(*std::max_element(x.begin(), x.end())).epsilon(1e-12));

        double harm = 0.0, arith = 0.0, quad = 0.0, geo = 0.0;
        for (double v : x) {
            harm += 1.0 / v;
            arith += v;
            quad += v * v;
            geo += std::log(v);
        }
        CHECK(power_mean(w, Gamma::finite(-1.0)) == doctest::Approx(m / harm).epsilon(1e-11));
        CHECK(power_mean(w, Gamma::finite(1.0)) == doctest::Approx(arith / m).epsilon(1e-11));
        CHECK(power_mean(w, Gamma::finite(2.0)) ==
              doctest::Approx(std::sqrt(quad / m)).epsilon(1e-11));
        CHECK(power_mean(w, Gamma::finite(0.0)) ==
              doctest::Approx(std::exp(geo / m)).epsilon(1e-11));
    }
}

TEST_CASE("power mean is monotone in gamma") {
    Rng rng(RngSpec{22, 0});
    for (int it = 0; it < 10000; ++it) {
        const PriceWindow w = random_window(rng);
        Gamma g1 = random_gamma(rng);
        Gamma g2 = random_gamma(rng);
        if (!(g1 <= g2)) std::swap(g1, g2);
        const double p1 = power_mean(w, g1);
        const double p2 = power_mean(w, g2);
        CHECK(p1 <= p2 * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("power mean is continuous at gamma = 0") {
    Rng rng(RngSpec{23, 0});
    for (int it = 0; it < 200; ++it) {
        const PriceWindow w = random_window(rng);
        const double g0 = power_mean(w, Gamma::finite(0.0));
        CHECK(std::abs(power_mean(w, Gamma::finite(1e-8)) - g0) < 1e-6 * g0);
        CHECK(std::abs(power_mean(w, Gamma::finite(-1e-8)) - g0) < 1e-6 * g0);
    }
}

TEST_CASE("payoff fixed examples") {
    OptionSpec spec;
    spec.theta = 1000.0;
    spec.strike = 1.5;
    spec.averaging_steps = 3;
    spec.gamma = Gamma::finite(1.0);
    CHECK(payoff(PriceWindow{{2, 2, 2}}, spec) == doctest::Approx(500.0));

    spec.strike = 2.0;  // psi == K: at the money, zero payoff
    CHECK(payoff(PriceWindow{{2, 2, 2}}, spec) == 0.0);

    spec.averaging_steps = 2;
    CHECK_THROWS_AS((void)payoff(PriceWindow{{2, 2, 2}}, spec), ConfigError);
}

TEST_CASE("payoff respects CTR quality scaling") {
    OptionSpec spec;
    spec.theta = 1.0;
    spec.strike = 0.75;
    spec.ctr_buyer = 0.2;
    spec.ctr_market = 0.1;
    spec.averaging_steps = 4;
    spec.gamma = Gamma::finite(1.0);
    const PriceWindow w{{2.0, 2.5, 3.0, 3.5}};
    // Direct evaluation of theta*((ct/c)*mean - K)^+ .
    const double psi = (2.0 + 2.5 + 3.0 + 3.5) / 4.0;
    CHECK(payoff(w, spec) == doctest::Approx(std::max(0.5 * psi - 0.75, 0.0)));
}

TEST_CASE("payoff monotonicity and homogeneity properties") {
    Rng rng(RngSpec{24, 0});
    for (int it = 0; it < 2000; ++it) {
        PriceWindow w = random_window(rng);
        OptionSpec spec;
        spec.theta = 1.0 + rng.next_unit() * 100.0;
        spec.strike = std::exp((rng.next_unit() - 0.5) * 4.0);
        spec.averaging_steps = static_cast<long>(w.prices.size());
        spec.gamma = random_gamma(rng);

        const double base = payoff(w, spec);

        // Nondecreasing in every window entry.
        PriceWindow bumped = w;
        const std::size_t k = static_cast<std::size_t>(rng.next_unit() * w.prices.size());
        bumped.prices[k] *= 1.05;
        CHECK(payoff(bumped, spec) >= base - 1e-12 * (1.0 + base));

        // Nonincreasing in K.
        OptionSpec higher_k = spec;
        higher_k.strike *= 1.05;
        CHECK(payoff(w, higher_k) <= base + 1e-12 * (1.0 + base));

        // Positively homogeneous of degree 1 in (window, K).
        const double s = 0.1 + rng.next_unit() * 10.0;
        PriceWindow scaled = w;
        for (double& p : scaled.prices) p *= s;
        OptionSpec scaled_spec = spec;
        scaled_spec.strike *= s;
        CHECK(payoff(scaled, scaled_spec) == doctest::Approx(s * base).epsilon(1e-10));
    }
}

TEST_CASE("log-space evaluation agrees with the price-space one") {
    Rng rng(RngSpec{25, 0});
    for (int it = 0; it < 500; ++it) {
        const PriceWindow w = random_window(rng);
        std::vector<double> logs(w.prices.size());
        for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(w.prices[i]);
        const Gamma g = random_gamma(rng);
        CHECK(power_mean_from_logs(logs, g) == doctest::Approx(power_mean(w, g)).epsilon(1e-12));
    }
}
