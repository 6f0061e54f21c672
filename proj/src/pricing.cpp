#include "adopt/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "adopt/payoff.hpp"

namespace adopt {

namespace {

constexpr double kPoissonWeightCutoff = 1e-12;

void require_risk_neutral(const JumpDiffusionParams& params) {
    if (!params.is_risk_neutral())
        throw ConfigError("pricing requires risk-neutral parameters; got real-world drift");
}

PricingResult make_closed_form_result(double pi0, int terms, double remainder) {
    PricingResult r;
    r.method = PricingMethod::closed_form;
    r.pi0 = pi0;
    r.std_error = 0.0;
    r.ci95_low = pi0;
    r.ci95_high = pi0;
    r.n_replications = 0;
    r.series_terms = terms;
    r.series_remainder_bound = remainder;
    return r;
}

// One bracket of the series: (c~/c) X0 Omega N(xi1) - K N(xi2), with the
// B -> 0 degenerate limit (deterministic exponent) handled explicitly.
double series_bracket(double x0, double strike, double quality, const ClosedFormTerms& t) {
    if (t.b2 <= 0.0) {
        const double forward = quality * x0 * std::exp(t.a);
        return forward > strike ? forward - strike : 0.0;
    }
    return quality * x0 * t.omega * normal_cdf(t.xi1) - strike * normal_cdf(t.xi2);
}

struct SeriesParams {
    double lambda_T = 0.0;
    double jump_growth = 1.0;  // e^{alpha + beta^2/2}, growth rate of Omega in k
};

// Sums the Poisson-weighted brackets. term(k) must return the bracket for k
// jumps. Throws if the truncation rule never fires before k_max.
double poisson_series(const SeriesParams& sp, int k_max, double& remainder_bound,
                      int& terms_used, double (*bracket)(int, const void*), const void* ctx) {
    double weight = std::exp(-sp.lambda_T);  // e^{-lambda T} (lambda T)^k / k!
    double total = 0.0;
    double last_term = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        last_term = weight * bracket(k, ctx);
        total += last_term;
        terms_used = k + 1;
        weight *= sp.lambda_T / static_cast<double>(k + 1);
        if (static_cast<double>(k) >= sp.lambda_T && weight < kPoissonWeightCutoff) {
            // Geometric bound on the tail: bracket growth is at most
            // jump_growth per extra jump once xi1, xi2 saturate.
            const double ratio =
                sp.lambda_T * std::max(1.0, sp.jump_growth) / static_cast<double>(k + 2);
            remainder_bound = ratio < 1.0
                                  ? std::abs(last_term) * ratio / (1.0 - ratio)
                                  : std::abs(last_term);
            return total;
        }
    }
    throw NumericError("closed-form series did not satisfy the truncation rule within k_max terms");
}

struct BracketCtx {
    double x0;
    const JumpDiffusionParams* params;
    const OptionSpec* spec;
};

double closed_form_bracket(int k, const void* raw) {
    const auto* ctx = static_cast<const BracketCtx*>(raw);
    const ClosedFormTerms t = closed_form_term(ctx->x0, *ctx->params, *ctx->spec, k);
    return series_bracket(ctx->x0, ctx->spec->strike,
                          ctx->spec->ctr_market / ctx->spec->ctr_buyer, t);
}

const LogNormalJumps& require_lognormal(const JumpDiffusionParams& params) {
    const auto* ln = std::get_if<LogNormalJumps>(&params.jumps);
    if (ln == nullptr)
        throw ConfigError("the explicit formula supports log-normal jumps only; use the Monte Carlo pricer");
    return *ln;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

ClosedFormTerms closed_form_term(double x0, const JumpDiffusionParams& params,
                                 const OptionSpec& spec, int k) {
    require_risk_neutral(params);
    const LogNormalJumps& ln = require_lognormal(params);
    if (!(x0 > 0.0)) throw ConfigError("initial price x0 must be > 0");

    const double S = spec.exercise_start;
    const double T = spec.expiry;
    const double c = params.rate() - params.lambda * zeta(params.jumps) -
                     0.5 * params.sigma * params.sigma;
    const double kd = static_cast<double>(k);

    ClosedFormTerms t;
    t.k = k;
    if (S == T) {
        t.a = c * T + kd * ln.alpha;
        t.b2 = params.sigma * params.sigma * T + kd * ln.beta * ln.beta;
    } else {
        t.a = 0.5 * c * (T + S) + kd * ln.alpha;
        t.b2 = params.sigma * params.sigma * T / 3.0 +
               2.0 * params.sigma * params.sigma * S / 3.0 + kd * ln.beta * ln.beta;
    }
    t.omega = std::exp(0.5 * (t.b2 + 2.0 * t.a));
    t.phi = std::log(spec.ctr_buyer * spec.strike) - std::log(spec.ctr_market * x0);
    if (t.b2 > 0.0) {
        const double b = std::sqrt(t.b2);
        t.xi1 = b - t.phi / b + t.a / b;
        t.xi2 = t.a / b - t.phi / b;
    }
    return t;
}

PricingResult mc_price(double x0, const JumpDiffusionParams& params, const OptionSpec& spec,
                       long n_replications, RngSpec rng, ExecMode mode) {
    require_risk_neutral(params);
    spec.validate();
    if (!(x0 > 0.0)) throw ConfigError("initial price x0 must be > 0");
    if (n_replications < 2)
        throw ConfigError("Monte Carlo needs z >= 2 replications for a variance estimate");

    const TimeGrid grid = build_time_grid(spec);
    const JumpDiffusionStepper stepper(params, grid.dt);
    const double log_x0 = std::log(x0);
    const long z = n_replications;

    std::vector<double> payoffs(static_cast<std::size_t>(z));
    if (mode == ExecMode::serial) {
        std::vector<double> window(static_cast<std::size_t>(grid.m));
        for (long j = 1; j <= z; ++j) {
            simulate_window_logs(log_x0, stepper, grid,
                                 RngSpec{rng.seed, rng.stream_id + static_cast<std::uint64_t>(j)},
                                 window);
            payoffs[static_cast<std::size_t>(j - 1)] =
                payoff_from_mean(power_mean_from_logs(window, spec.gamma), spec);
        }
    } else {
#pragma omp parallel
        {
            std::vector<double> window(static_cast<std::size_t>(grid.m));
#pragma omp for schedule(static)
            for (long j = 1; j <= z; ++j) {
                simulate_window_logs(
                    log_x0, stepper, grid,
                    RngSpec{rng.seed, rng.stream_id + static_cast<std::uint64_t>(j)}, window);
                payoffs[static_cast<std::size_t>(j - 1)] =
                    payoff_from_mean(power_mean_from_logs(window, spec.gamma), spec);
            }
        }
    }

    // Deterministic single-pass reduction (Welford), independent of the
    // parallel schedule above.
    double mean = 0.0;
    double m2 = 0.0;
    for (long j = 0; j < z; ++j) {
        const double d = payoffs[static_cast<std::size_t>(j)] - mean;
        mean += d / static_cast<double>(j + 1);
        m2 += d * (payoffs[static_cast<std::size_t>(j)] - mean);
    }
    const double payoff_sd = std::sqrt(m2 / static_cast<double>(z - 1));
    const double discount = std::exp(-params.rate() * spec.expiry);

    PricingResult r;
    r.method = PricingMethod::monte_carlo;
    r.pi0 = discount * mean;
    r.std_error = discount * payoff_sd / std::sqrt(static_cast<double>(z));
    r.ci95_low = r.pi0 - 1.96 * r.std_error;
    r.ci95_high = r.pi0 + 1.96 * r.std_error;
    r.n_replications = z;
    return r;
}

PricingResult closed_form_price(double x0, const JumpDiffusionParams& params,
                                const OptionSpec& spec, int k_max) {
    require_risk_neutral(params);
    spec.validate();
    if (!(x0 > 0.0)) throw ConfigError("initial price x0 must be > 0");
    if (!spec.gamma.is_zero())
        throw ConfigError("the explicit formula requires gamma = 0 (geometric mean)");
    const LogNormalJumps& ln = require_lognormal(params);
    if (!(params.sigma > 0.0 || ln.beta > 0.0))
        throw ConfigError("the explicit formula needs sigma > 0 or beta > 0 (B > 0)");
    if (k_max < 1) throw ConfigError("k_max must be >= 1");

    const double T = spec.expiry;
    SeriesParams sp;
    sp.lambda_T = params.lambda * T;
    sp.jump_growth = std::exp(ln.alpha + 0.5 * ln.beta * ln.beta);

    BracketCtx ctx{x0, &params, &spec};
    double remainder = 0.0;
    int terms = 0;
    const double sum = poisson_series(sp, k_max, remainder, terms, &closed_form_bracket, &ctx);
    const double discount = std::exp(-params.rate() * T);
    return make_closed_form_result(spec.theta * discount * sum, terms,
                                   spec.theta * discount * remainder);
}

PricingResult merton_european_price(double x0, const JumpDiffusionParams& params,
                                    double strike, double maturity, double theta,
                                    double ctr_buyer, double ctr_market, int k_max) {
    OptionSpec spec;
    spec.theta = theta;
    spec.strike = strike;
    spec.ctr_buyer = ctr_buyer;
    spec.ctr_market = ctr_market;
    spec.exercise_start = maturity;
    spec.expiry = maturity;
    spec.averaging_steps = 1;
    spec.gamma = Gamma::finite(0.0);
    return closed_form_price(x0, params, spec, k_max);
}

std::vector<SensitivityEntry> price_sensitivities(double x0, const JumpDiffusionParams& params,
                                                  const OptionSpec& spec, double rel_bump,
                                                  long n_replications, RngSpec rng, int k_max) {
    require_risk_neutral(params);
    spec.validate();
    if (!(rel_bump > 0.0)) throw ConfigError("bump size must be > 0");

    const bool closed = spec.gamma.is_zero() &&
                        std::holds_alternative<LogNormalJumps>(params.jumps) &&
                        (params.sigma > 0.0 || std::get<LogNormalJumps>(params.jumps).beta > 0.0);

    auto price = [&](double x, const JumpDiffusionParams& p, const OptionSpec& s) {
        if (closed) return closed_form_price(x, p, s, k_max).pi0;
        return mc_price(x, p, s, n_replications, rng).pi0;  // common random numbers
    };

    const double base = price(x0, params, spec);
    std::vector<SensitivityEntry> out;
    auto record = [&](const std::string& name, double down, double up) {
        SensitivityEntry e;
        e.parameter = name;
        e.price_down = down;
        e.price_base = base;
        e.price_up = up;
        e.direction = up > down ? 1 : (up < down ? -1 : 0);
        out.push_back(e);
    };

    {
        record("x0", price(x0 * (1.0 - rel_bump), params, spec),
               price(x0 * (1.0 + rel_bump), params, spec));
    }
    {
        OptionSpec s = spec;
        s.strike = spec.strike * (1.0 - rel_bump);
        const double down = price(x0, params, s);
        s.strike = spec.strike * (1.0 + rel_bump);
        record("strike", down, price(x0, params, s));
    }
    {
        JumpDiffusionParams p = params;
        const double dr = std::max(std::abs(params.drift) * rel_bump, 1e-4);
        p.drift = params.drift - dr;
        const double down = price(x0, p, spec);
        p.drift = params.drift + dr;
        record("r", down, price(x0, p, spec));
    }
    {
        OptionSpec s = spec;
        s.expiry = spec.expiry * (1.0 + rel_bump);
        if (spec.exercise_start == spec.expiry) s.exercise_start = s.expiry;
        const double up = price(x0, params, s);
        s = spec;
        s.expiry = spec.expiry * (1.0 - rel_bump);
        if (spec.exercise_start == spec.expiry)
            s.exercise_start = s.expiry;
        else if (s.expiry <= s.exercise_start)
            s.exercise_start = s.expiry;  // keep the window valid under the bump
        record("T", price(x0, params, s), up);
    }
    {
        JumpDiffusionParams p = params;
        const double ds = std::max(params.sigma * rel_bump, 1e-4);
        p.sigma = std::max(params.sigma - ds, 0.0);
        const double down = price(x0, p, spec);
        p.sigma = params.sigma + ds;
        record("sigma", down, price(x0, p, spec));
    }
    {
        OptionSpec s = spec;
        s.theta = spec.theta * (1.0 + rel_bump);
        const double up = price(x0, params, s);
        s.theta = std::max(spec.theta * (1.0 - rel_bump), 1.0);
        record("theta", price(x0, params, s), up);
    }
    {
        OptionSpec s = spec;
        s.ctr_market = std::min(spec.ctr_market * (1.0 + rel_bump), 1.0);
        const double up = price(x0, params, s);
        s.ctr_market = spec.ctr_market * (1.0 - rel_bump);
        record("ctr_market", price(x0, params, s), up);
    }
    {
        OptionSpec s = spec;
        s.ctr_buyer = std::min(spec.ctr_buyer * (1.0 + rel_bump), 1.0);
        const double up = price(x0, params, s);
        s.ctr_buyer = spec.ctr_buyer * (1.0 - rel_bump);
        record("ctr_buyer", price(x0, params, s), up);
    }
    return out;
}

}  // namespace adopt
