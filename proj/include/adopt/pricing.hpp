#pragma once

#include <string>
#include <vector>

#include "adopt/core.hpp"
#include "adopt/rng.hpp"
#include "adopt/simulate.hpp"

namespace adopt {

enum class PricingMethod : std::uint8_t { monte_carlo, closed_form };

struct PricingResult {
    PricingMethod method = PricingMethod::monte_carlo;
    double pi0 = 0.0;
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    long n_replications = 0;       // z; 0 for closed form
    int series_terms = 0;          // k terms evaluated; 0 for Monte Carlo
    double series_remainder_bound = 0.0;
};

// Standard normal CDF. erfc based; keeps full relative accuracy out to the
// |x| ~ 8 arguments reached by deep ITM/OTM contracts.
double normal_cdf(double x);

// Per-k ingredients of the explicit geometric-mean price. The S = T variant
// uses A = (r - lambda*zeta - sigma^2/2)T + k*alpha, B^2 = sigma^2 T + k*beta^2
// (the European/Merton case); otherwise the time-average limits
// A = (r - lambda*zeta - sigma^2/2)(T+S)/2 + k*alpha,
// B^2 = sigma^2 T/3 + 2 sigma^2 S/3 + k*beta^2 apply.
struct ClosedFormTerms {
    int k = 0;
    double a = 0.0;
    double b2 = 0.0;
    double omega = 0.0;
    double phi = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
};

ClosedFormTerms closed_form_term(double x0, const JumpDiffusionParams& params,
                                 const OptionSpec& spec, int k);

// Monte Carlo price: pi0 = e^{-rT} * mean payoff over z replications, window
// taken from steps m_tilde+1 .. m_tilde+m. Confidence bounds are
// pi0 +- e^{-rT} 1.96 std(payoff)/sqrt(z). Requires risk-neutral parameters
// and z >= 2. Replication j uses rng stream_id + j; results are bit-identical
// across thread counts.
PricingResult mc_price(double x0, const JumpDiffusionParams& params, const OptionSpec& spec,
                       long n_replications, RngSpec rng, ExecMode mode = ExecMode::parallel);

// Explicit price for gamma = 0 with log-normal jumps: the Poisson-weighted
// series over ClosedFormTerms, truncated once the weight e^{-lambda T}
// (lambda T)^k / k! drops below 1e-12 past k = lambda*T.
PricingResult closed_form_price(double x0, const JumpDiffusionParams& params,
                                const OptionSpec& spec, int k_max = 200);

// European special case (S = T): the jump-diffusion call series on the
// terminal price, scaled by theta*(c~/c) on the asset leg. Reduces to
// Black-Scholes at lambda = 0.
PricingResult merton_european_price(double x0, const JumpDiffusionParams& params,
                                    double strike, double maturity, double theta,
                                    double ctr_buyer, double ctr_market, int k_max = 200);

// Signed one-at-a-time sensitivities under a relative bump; closed form when
// available (gamma = 0, log-normal jumps), common-random-number Monte Carlo
// otherwise.
struct SensitivityEntry {
    std::string parameter;
    double price_down = 0.0;
    double price_base = 0.0;
    double price_up = 0.0;
    int direction = 0;  // sign of (up - down)
};

std::vector<SensitivityEntry> price_sensitivities(double x0, const JumpDiffusionParams& params,
                                                  const OptionSpec& spec, double rel_bump = 0.01,
                                                  long n_replications = 20000, RngSpec rng = {},
                                                  int k_max = 200);

}  // namespace adopt
