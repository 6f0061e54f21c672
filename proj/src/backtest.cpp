#include "adopt/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "adopt/pricing.hpp"

namespace adopt {

std::string regime_name(MarketRegime r) { return r == MarketRegime::bull ? "bull" : "bear"; }

std::string moneyness_name(Moneyness m) {
    switch (m) {
        case Moneyness::itm: return "itm";
        case Moneyness::atm: return "atm";
        case Moneyness::otm: return "otm";
    }
    return "unknown";
}

double moneyness_strike(Moneyness m, double x0) {
    switch (m) {
        case Moneyness::itm: return 0.75 * x0;
        case Moneyness::atm: return x0;
        case Moneyness::otm: return 1.25 * x0;
    }
    throw ConfigError("unknown moneyness");
}

std::string method_name(BacktestMethod m) {
    switch (m) {
        case BacktestMethod::closed_form_lognormal: return "closed_form_lognormal";
        case BacktestMethod::mc_lognormal: return "mc_lognormal";
        case BacktestMethod::mc_log_ade: return "mc_log_ade";
        case BacktestMethod::mc_log_laplacian: return "mc_log_laplacian";
    }
    return "unknown";
}

MarketRegime classify_regime(double x0, std::span<const double> future_prices) {
    if (future_prices.empty()) throw ConfigError("regime classification needs future prices");
    const double mean = std::accumulate(future_prices.begin(), future_prices.end(), 0.0) /
                        static_cast<double>(future_prices.size());
    return x0 <= mean ? MarketRegime::bull : MarketRegime::bear;
}

bool decide_exercise(const PriceWindow& test_window, const OptionSpec& spec) {
    return payoff(test_window, spec) > 0.0;
}

BacktestOutcome revenue_change(double pi0, const OptionSpec& spec,
                               const PriceWindow& test_window, MarketRegime regime,
                               Moneyness moneyness) {
    if (!(pi0 >= 0.0)) throw ConfigError("option price must be >= 0");
    const bool exercised = decide_exercise(test_window, spec);
    const double auction = std::accumulate(test_window.prices.begin(), test_window.prices.end(),
                                           0.0) /
                           static_cast<double>(test_window.prices.size());
    if (!(auction > 0.0)) throw NumericError("undefined revenue ratio: auction revenue is zero");

    BacktestOutcome out;
    out.exercised = exercised;
    out.revenue_auction = auction;
    // Per-inventory accounting: the premium is pi0/theta; on exercise the
    // seller receives K per inventory, otherwise the inventory goes back to
    // the auction.
    out.revenue_option = pi0 / spec.theta + (exercised ? spec.strike : auction);
    out.revenue_change = (out.revenue_option - out.revenue_auction) / out.revenue_auction;
    out.regime = regime;
    out.moneyness = moneyness;
    out.pi0_used = pi0;
    return out;
}

namespace {

JumpDiffusionParams method_params(BacktestMethod method, const BacktestConfig& cfg,
                                  const CalibrationReport& cal) {
    switch (method) {
        case BacktestMethod::closed_form_lognormal:
        case BacktestMethod::mc_lognormal:
            return JumpDiffusionParams::risk_neutral(
                cfg.rate, cal.mle.sigma_hat, cal.lambda_hat,
                LogNormalJumps{cal.mle.mu_v_hat, cal.mle.sigma_v_hat});
        case BacktestMethod::mc_log_ade:
            return JumpDiffusionParams::risk_neutral(cfg.rate, cal.mle.sigma_hat,
                                                     cal.lambda_hat, cfg.ade);
        case BacktestMethod::mc_log_laplacian:
            return JumpDiffusionParams::risk_neutral(cfg.rate, cal.mle.sigma_hat,
                                                     cal.lambda_hat, cfg.laplacian);
    }
    throw ConfigError("unknown backtest method");
}

}  // namespace

BacktestTable run_backtest_suite(std::span<const SlotSeries> slots, const BacktestConfig& config) {
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
        throw ConfigError("train fraction must lie in (0,1)");

    BacktestTable table;
    for (const SlotSeries& slot : slots) {
        const std::vector<double>& prices = slot.series.prices;
        const double dt = slot.series.dt;
        const long n = static_cast<long>(prices.size());
        const long n_train = static_cast<long>(std::floor(config.train_fraction * n));
        const long n_test = n - n_train;
        if (n_train < 31 || n_test < 2)
            throw DataError("slot \"" + slot.name +
                            "\": too short to split into calibration and test segments");

        PriceSeries train;
        train.timestamps.assign(slot.series.timestamps.begin(),
                                slot.series.timestamps.begin() + n_train);
        train.prices.assign(prices.begin(), prices.begin() + n_train);
        train.dt = dt;
        const CalibrationReport cal = calibrate_series(train, config.detector);

        const double x0 = train.prices.back();
        // Averaging window: second half of the test segment, per-step spacing
        // equal to the data spacing.
        const long m = n_test / 2;
        const long m_tilde = n_test - m;
        OptionSpec spec;
        spec.theta = config.theta;
        spec.ctr_buyer = config.ctr_buyer;
        spec.ctr_market = config.ctr_market;
        spec.exercise_start = static_cast<double>(m_tilde) * dt;
        spec.expiry = static_cast<double>(n_test) * dt;
        spec.averaging_steps = m;
        spec.gamma = config.gamma;

        const std::span<const double> future(prices.begin() + n_train, prices.end());
        const MarketRegime regime = classify_regime(x0, future);
        PriceWindow window;
        window.prices.assign(prices.begin() + n_train + m_tilde, prices.end());

        for (Moneyness mny : {Moneyness::itm, Moneyness::atm, Moneyness::otm}) {
            OptionSpec priced = spec;
            priced.strike = moneyness_strike(mny, x0);
            for (BacktestMethod method : config.methods) {
                const JumpDiffusionParams params = method_params(method, config, cal);
                PricingResult pr;
                if (method == BacktestMethod::closed_form_lognormal)
                    pr = closed_form_price(x0, params, priced, config.k_max);
                else
                    pr = mc_price(x0, params, priced, config.n_replications, config.rng);
                const BacktestOutcome outcome =
                    revenue_change(pr.pi0, priced, window, regime, mny);
                table.rows.push_back({slot.name, regime, mny, method, outcome.exercised,
                                      pr.pi0, outcome.revenue_change});
            }
        }
    }

    // Aggregate by (regime, moneyness, method); insertion order is fixed by
    // the enum values so reports are deterministic.
    std::map<std::tuple<int, int, int>, std::vector<double>> groups;
    for (const BacktestRow& row : table.rows)
        groups[{static_cast<int>(row.regime), static_cast<int>(row.moneyness),
                static_cast<int>(row.method)}]
            .push_back(row.revenue_change);
    for (const auto& [key, changes] : groups) {
        BacktestAggregate agg;
        agg.regime = static_cast<MarketRegime>(std::get<0>(key));
        agg.moneyness = static_cast<Moneyness>(std::get<1>(key));
        agg.method = static_cast<BacktestMethod>(std::get<2>(key));
        agg.n_slots = static_cast<long>(changes.size());
        agg.positive_share =
            static_cast<double>(std::count_if(changes.begin(), changes.end(),
                                              [](double c) { return c > 0.0; })) /
            static_cast<double>(changes.size());
        agg.mean_change = std::accumulate(changes.begin(), changes.end(), 0.0) /
                          static_cast<double>(changes.size());
        table.aggregates.push_back(agg);
    }
    return table;
}

}  // namespace adopt
