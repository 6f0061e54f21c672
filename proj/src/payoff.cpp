#include "adopt/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adopt {

void PriceWindow::validate() const {
    if (prices.empty()) throw ConfigError("price window is empty");
    for (double p : prices)
        if (!(p > 0.0)) throw ConfigError("price window entries must be > 0");
}

double power_mean_from_logs(std::span<const double> log_prices, Gamma gamma) {
    if (log_prices.empty()) throw ConfigError("price window is empty");
    const std::size_t m = log_prices.size();

    if (gamma.is_min()) return std::exp(*std::min_element(log_prices.begin(), log_prices.end()));
    if (gamma.is_max()) return std::exp(*std::max_element(log_prices.begin(), log_prices.end()));

    if (gamma.is_zero()) {
        // Geometric mean as exp of the mean log; immune to overflow and to the
        // cancellation in (sum x^g / m)^(1/g) for g near 0.
        double acc = 0.0;
        for (double lx : log_prices) acc += lx;
        return std::exp(acc / static_cast<double>(m));
    }

    const double g = gamma.value();
    if (g == 1.0) {
        double acc = 0.0;
        for (double lx : log_prices) acc += std::exp(lx);
        return acc / static_cast<double>(m);
    }

    // General case through log-sum-exp so x^gamma cannot overflow.
    double peak = g * log_prices[0];
    for (std::size_t i = 1; i < m; ++i) peak = std::max(peak, g * log_prices[i]);
    double acc = 0.0;
    for (double lx : log_prices) acc += std::exp(g * lx - peak);
    return std::exp((peak + std::log(acc / static_cast<double>(m))) / g);
}

double power_mean(const PriceWindow& window, Gamma gamma) {
    window.validate();
    std::vector<double> logs(window.prices.size());
    for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(window.prices[i]);
    return power_mean_from_logs(logs, gamma);
}

double payoff_from_mean(double psi, const OptionSpec& spec) {
    const double quality = spec.ctr_market / spec.ctr_buyer;
    return spec.theta * std::max(quality * psi - spec.strike, 0.0);
}

double payoff(const PriceWindow& window, const OptionSpec& spec) {
    spec.validate();
    if (static_cast<long>(window.prices.size()) != spec.averaging_steps)
        throw ConfigError("window length " + std::to_string(window.prices.size()) +
                          " does not match averaging step count m = " +
                          std::to_string(spec.averaging_steps));
    return payoff_from_mean(power_mean(window, spec.gamma), spec);
}

}  // namespace adopt
