#include "adopt/core.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace adopt {

namespace {

// Below this magnitude the power mean is evaluated through the geometric-mean
// branch; (sum x^g / m)^(1/g) loses all precision as g -> 0.
constexpr double kGammaZeroThreshold = 1e-6;

std::string format(const char* fmt, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

}  // namespace

void validate(const JumpSizeDistribution& dist) {
    struct Visitor {
        void operator()(const LogNormalJumps& d) const {
            if (!(d.beta >= 0.0))
                throw ConfigError(format("log-normal jump beta must be >= 0, got %g", d.beta));
        }
        void operator()(const LogAdeJumps& d) const {
            if (!(d.eta1 > 1.0))
                throw ConfigError(format("ADE jump eta1 must be > 1 (got %g), otherwise E[Y] diverges", d.eta1));
            if (!(d.eta2 > 0.0))
                throw ConfigError(format("ADE jump eta2 must be > 0, got %g", d.eta2));
            if (!(d.p1 >= 0.0 && d.p1 <= 1.0 && d.p2 >= 0.0 && d.p2 <= 1.0))
                throw ConfigError(format("ADE jump probabilities must lie in [0,1], got p1=%g p2=%g", d.p1, d.p2));
            if (std::abs(d.p1 + d.p2 - 1.0) > 1e-12)
                throw ConfigError(format("ADE jump probabilities must satisfy p1+p2=1, got p1=%g p2=%g", d.p1, d.p2));
        }
        void operator()(const LogLaplacianJumps& d) const {
            if (!(d.eta > 0.0 && d.eta < 1.0))
                throw ConfigError(format("Laplacian jump eta must lie in (0,1) (got %g), otherwise E[Y] diverges", d.eta));
        }
    };
    std::visit(Visitor{}, dist);
}

std::string jump_distribution_name(const JumpSizeDistribution& dist) {
    struct Visitor {
        std::string operator()(const LogNormalJumps&) const { return "lognormal"; }
        std::string operator()(const LogAdeJumps&) const { return "ade"; }
        std::string operator()(const LogLaplacianJumps&) const { return "laplacian"; }
    };
    return std::visit(Visitor{}, dist);
}

double zeta(const JumpSizeDistribution& dist) {
    validate(dist);
    struct Visitor {
        double operator()(const LogNormalJumps& d) const {
            return std::exp(d.alpha + 0.5 * d.beta * d.beta) - 1.0;
        }
        double operator()(const LogAdeJumps& d) const {
            return d.p1 * d.eta1 / (d.eta1 - 1.0) + d.p2 * d.eta2 / (d.eta2 + 1.0) - 1.0;
        }
        double operator()(const LogLaplacianJumps& d) const {
            return std::exp(d.rho) / (1.0 - d.eta * d.eta) - 1.0;
        }
    };
    return std::visit(Visitor{}, dist);
}

JumpDiffusionParams JumpDiffusionParams::risk_neutral(double r, double sigma, double lambda,
                                                      JumpSizeDistribution jumps) {
    JumpDiffusionParams p{Measure::risk_neutral, r, sigma, lambda, std::move(jumps)};
    p.validate();
    return p;
}

JumpDiffusionParams JumpDiffusionParams::real_world(double mu, double sigma, double lambda,
                                                    JumpSizeDistribution jumps) {
    JumpDiffusionParams p{Measure::real_world, mu, sigma, lambda, std::move(jumps)};
    p.validate();
    return p;
}

double JumpDiffusionParams::rate() const {
    if (!is_risk_neutral())
        throw ConfigError("real-world parameters carry no riskless rate; pricing requires risk-neutral parameters");
    return drift;
}

double JumpDiffusionParams::log_drift() const {
    const double half_var = 0.5 * sigma * sigma;
    if (is_risk_neutral()) return drift - lambda * zeta(jumps) - half_var;
    return drift - half_var;
}

void JumpDiffusionParams::validate() const {
    if (!(sigma >= 0.0)) throw ConfigError(format("sigma must be >= 0, got %g", sigma));
    if (!(lambda >= 0.0)) throw ConfigError(format("lambda must be >= 0, got %g", lambda));
    adopt::validate(jumps);
}

double risk_neutral_drift(double r, double sigma, double lambda,
                          const JumpSizeDistribution& dist) {
    if (!(sigma >= 0.0)) throw ConfigError(format("sigma must be >= 0, got %g", sigma));
    if (!(lambda >= 0.0)) throw ConfigError(format("lambda must be >= 0, got %g", lambda));
    return r - lambda * zeta(dist) - 0.5 * sigma * sigma;
}

bool Gamma::is_zero() const { return is_finite() && std::abs(value_) < kGammaZeroThreshold; }

std::string Gamma::to_string() const {
    if (is_min()) return "min";
    if (is_max()) return "max";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
}

Gamma Gamma::parse(const std::string& text) {
    if (text == "min") return Gamma::min();
    if (text == "max") return Gamma::max();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("gamma must be a number, \"min\" or \"max\": got \"" + text + "\"");
    }
    if (pos != text.size())
        throw ConfigError("gamma must be a number, \"min\" or \"max\": got \"" + text + "\"");
    return Gamma::finite(v);
}

void OptionSpec::validate() const {
    if (!(theta >= 1.0)) throw ConfigError(format("theta must be >= 1, got %g", theta));
    if (!(strike > 0.0)) throw ConfigError(format("strike must be > 0, got %g", strike));
    if (!(ctr_buyer > 0.0 && ctr_buyer <= 1.0))
        throw ConfigError(format("buyer CTR must lie in (0,1], got %g", ctr_buyer));
    if (!(ctr_market > 0.0 && ctr_market <= 1.0))
        throw ConfigError(format("market CTR must lie in (0,1], got %g", ctr_market));
    if (!(exercise_start >= 0.0))
        throw ConfigError(format("S must be >= 0, got %g", exercise_start));
    if (!(expiry >= exercise_start))
        throw ConfigError(format("T must be >= S, got S=%g T=%g", exercise_start, expiry));
    if (averaging_steps < 1) throw ConfigError("averaging step count m must be >= 1");
    if (gamma.is_finite() && !std::isfinite(gamma.value()))
        throw ConfigError("finite gamma must not be an IEEE infinity; use the min/max sentinels");
}

TimeGrid build_time_grid(const OptionSpec& spec) {
    spec.validate();
    const double S = spec.exercise_start;
    const double T = spec.expiry;
    if (T == S) {
        if (spec.averaging_steps != 1)
            throw ConfigError("degenerate window: T == S admits only m = 1 (European case)");
        if (T == 0.0) throw ConfigError("option lifetime is zero (S = T = 0)");
        // European contract: the window is the terminal point; simulate [0,T]
        // with a fixed subdivision so jump arrivals are still Bernoulli steps.
        const long sub = 256;
        return TimeGrid{T / static_cast<double>(sub), sub - 1, 1};
    }
    const double dt = (T - S) / static_cast<double>(spec.averaging_steps);
    const long m_tilde = static_cast<long>(std::ceil(S / dt - 1e-12));
    return TimeGrid{dt, m_tilde, spec.averaging_steps};
}

PriceSeries make_price_series(std::vector<double> timestamps, std::vector<double> prices) {
    if (timestamps.size() != prices.size())
        throw DataError("timestamp and price columns differ in length");
    if (prices.size() < 2) throw DataError("price series needs at least 2 observations");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0))
            throw DataError(format("nonpositive price %g at row %g", prices[i],
                                   static_cast<double>(i + 1)));
    }
    const double step = timestamps[1] - timestamps[0];
    if (!(step > 0.0)) throw DataError("timestamps must be strictly increasing");
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        const double gap = timestamps[i] - timestamps[i - 1];
        if (std::abs(gap - step) > 1e-9 * std::max(std::abs(step), 1.0))
            throw DataError(format("non-uniform spacing: gap %g at row %g differs from first gap",
                                   gap, static_cast<double>(i + 1)));
    }
    PriceSeries s;
    s.timestamps = std::move(timestamps);
    s.prices = std::move(prices);
    s.dt = step;
    return s;
}

}  // namespace adopt
