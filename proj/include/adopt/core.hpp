#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "adopt/errors.hpp"

namespace adopt {

// ---------------------------------------------------------------------------
// Jump size distributions. V = ln Y is the log jump size; the spot price is
// multiplied by Y = e^V at each jump arrival.
// ---------------------------------------------------------------------------

// V ~ N(alpha, beta^2) (Merton).
struct LogNormalJumps {
    double alpha = 0.0;
    double beta = 0.0;
};

// V ~ asymmetric double exponential (Kou): density
//   p1*eta1*exp(-eta1*v) for v >= 0,  p2*eta2*exp(eta2*v) for v < 0.
// eta1 > 1 keeps E[e^V] finite.
struct LogAdeJumps {
    double eta1 = 2.0;
    double eta2 = 1.0;
    double p1 = 0.5;
    double p2 = 0.5;
};

// V ~ Laplace(rho, eta); eta in (0,1) keeps E[e^V] finite.
struct LogLaplacianJumps {
    double rho = 0.0;
    double eta = 0.5;
};

using JumpSizeDistribution = std::variant<LogNormalJumps, LogAdeJumps, LogLaplacianJumps>;

// Throws ConfigError if the distribution parameters are out of range.
void validate(const JumpSizeDistribution& dist);

std::string jump_distribution_name(const JumpSizeDistribution& dist);

// zeta = E[e^V] - 1, the mean relative jump size. Enters the risk-neutral
// drift correction r - lambda*zeta.
double zeta(const JumpSizeDistribution& dist);

// ---------------------------------------------------------------------------
// Process parameters
// ---------------------------------------------------------------------------

enum class Measure : std::uint8_t { real_world, risk_neutral };

// dX/X = mu dt + sigma dW + d(sum (Y_i - 1)), jumps Poisson with intensity
// lambda per year. Under the risk-neutral measure the drift is implied by the
// riskless rate: mu = r - lambda*zeta.
struct JumpDiffusionParams {
    Measure measure = Measure::risk_neutral;
    double drift = 0.0;  // mu (real_world) or r (risk_neutral), per year
    double sigma = 0.0;  // per sqrt-year
    double lambda = 0.0; // jumps per year
    JumpSizeDistribution jumps = LogNormalJumps{};

    static JumpDiffusionParams risk_neutral(double r, double sigma, double lambda,
                                            JumpSizeDistribution jumps);
    static JumpDiffusionParams real_world(double mu, double sigma, double lambda,
                                          JumpSizeDistribution jumps);

    bool is_risk_neutral() const { return measure == Measure::risk_neutral; }

    // Riskless rate; only meaningful for risk-neutral parameters.
    double rate() const;

    // Per-year drift of ln X: mu - sigma^2/2, or r - lambda*zeta - sigma^2/2
    // under the risk-neutral measure.
    double log_drift() const;

    void validate() const;
};

double risk_neutral_drift(double r, double sigma, double lambda,
                          const JumpSizeDistribution& dist);

// ---------------------------------------------------------------------------
// Option contract
// ---------------------------------------------------------------------------

// Power-mean exponent, with min/max as explicit sentinels rather than
// floating-point infinities (file formats serialize them as "min"/"max").
class Gamma {
public:
    constexpr Gamma() = default;

    static constexpr Gamma finite(double value) { return Gamma(Kind::finite, value); }
    static constexpr Gamma min() { return Gamma(Kind::neg_inf, 0.0); }
    static constexpr Gamma max() { return Gamma(Kind::pos_inf, 0.0); }

    constexpr bool is_min() const { return kind_ == Kind::neg_inf; }
    constexpr bool is_max() const { return kind_ == Kind::pos_inf; }
    constexpr bool is_finite() const { return kind_ == Kind::finite; }
    constexpr double value() const { return value_; }

    bool is_zero() const;  // |gamma| below the geometric-mean threshold

    friend constexpr bool operator==(Gamma a, Gamma b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
    }
    // Ordering on the extended real line, for monotonicity checks.
    friend constexpr bool operator<=(Gamma a, Gamma b) {
        if (a.kind_ == b.kind_) return a.kind_ != Kind::finite || a.value_ <= b.value_;
        if (a.is_min() || b.is_max()) return true;
        return false;
    }

    std::string to_string() const;
    static Gamma parse(const std::string& text);

private:
    enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };
    constexpr Gamma(Kind kind, double value) : kind_(kind), value_(value) {}
    Kind kind_ = Kind::finite;
    double value_ = 1.0;
};

// Contract terms of one average price advertising option.
struct OptionSpec {
    double theta = 1.0;        // requested number of inventories
    double strike = 1.0;       // K, per-inventory exercise price
    double ctr_buyer = 1.0;    // c, buyer's CTR
    double ctr_market = 1.0;   // c~, market CTR of comparable ads
    double exercise_start = 0.0; // S, years
    double expiry = 1.0;       // T, years
    long averaging_steps = 1;  // m, observations over [S, T]
    Gamma gamma = Gamma::finite(1.0);

    void validate() const;
};

// ---------------------------------------------------------------------------
// Time grid
// ---------------------------------------------------------------------------

// Uniform simulation grid over [0, T]: dt = (T-S)/m, m_tilde = ceil(S/dt)
// warm-up steps, then m averaging steps. The ceiling can overshoot S by at
// most one step; the grid is used literally.
//
// The S == T (European) contract has no averaging window to set dt; that case
// uses 256 uniform steps over [0, T] with the window being the terminal point.
struct TimeGrid {
    double dt = 0.0;
    long m_tilde = 0;
    long m = 0;

    long steps() const { return m_tilde + m; }
    double time(long i) const { return dt * static_cast<double>(i); }
    double horizon() const { return time(steps()); }
};

TimeGrid build_time_grid(const OptionSpec& spec);

// ---------------------------------------------------------------------------
// Historical price series
// ---------------------------------------------------------------------------

// Spot market prices on a uniform time grid. Timestamps are annualized years
// (one year = 1; a day = 1/365, an hour = 1/(365*24)).
struct PriceSeries {
    std::vector<double> timestamps;
    std::vector<double> prices;
    double dt = 0.0;
};

// Validates positivity, length >= 2 and uniform spacing (1e-9 relative
// tolerance) and fills in dt.
PriceSeries make_price_series(std::vector<double> timestamps, std::vector<double> prices);

}  // namespace adopt
