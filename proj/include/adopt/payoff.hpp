#pragma once

#include <span>
#include <vector>

#include "adopt/core.hpp"

namespace adopt {

// Spot prices over the averaging window [S, T] (steps m_tilde+1 .. m_tilde+m).
struct PriceWindow {
    std::vector<double> prices;

    void validate() const;
};

// Power mean psi(gamma | X) = (sum X_i^gamma / m)^(1/gamma).
// gamma = -inf/-1/0/1/2/+inf give min, harmonic, geometric, arithmetic,
// quadratic mean and max. psi is monotonically increasing in gamma.
double power_mean(const PriceWindow& window, Gamma gamma);

// Same statistic evaluated from log prices; used by the Monte Carlo pricer,
// which simulates in log space.
double power_mean_from_logs(std::span<const double> log_prices, Gamma gamma);

// Payoff of theta inventories given the realized power mean:
//   theta * ((c~/c) * psi - K)^+.
double payoff_from_mean(double psi, const OptionSpec& spec);

// Option payoff over a realized window; window length must equal spec.m.
double payoff(const PriceWindow& window, const OptionSpec& spec);

}  // namespace adopt
