#pragma once

#include <span>
#include <string>
#include <vector>

#include "adopt/calibrate.hpp"
#include "adopt/core.hpp"
#include "adopt/payoff.hpp"
#include "adopt/rng.hpp"

namespace adopt {

// Bull iff X0 <= mean of the m_tilde+m future prices (ties are Bull).
enum class MarketRegime : std::uint8_t { bull, bear };

// Exercise price relative to the spot at pricing time:
// ITM K = 0.75 X0, ATM K = X0, OTM K = 1.25 X0.
enum class Moneyness : std::uint8_t { itm, atm, otm };

std::string regime_name(MarketRegime r);
std::string moneyness_name(Moneyness m);
double moneyness_strike(Moneyness m, double x0);

MarketRegime classify_regime(double x0, std::span<const double> future_prices);

// True iff the realized payoff is strictly positive (perfect-foresight buyer).
bool decide_exercise(const PriceWindow& test_window, const OptionSpec& spec);

struct BacktestOutcome {
    bool exercised = false;
    double revenue_option = 0.0;   // per inventory: pi0/theta + (K or auction leg)
    double revenue_auction = 0.0;  // per inventory: mean test-window price
    double revenue_change = 0.0;   // (option - auction) / auction
    MarketRegime regime = MarketRegime::bull;
    Moneyness moneyness = Moneyness::atm;
    double pi0_used = 0.0;
};

// Seller-revenue accounting for one slot/contract on realized test prices.
// Throws NumericError when the auction leg is zero (undefined ratio).
BacktestOutcome revenue_change(double pi0, const OptionSpec& spec,
                               const PriceWindow& test_window, MarketRegime regime,
                               Moneyness moneyness);

enum class BacktestMethod : std::uint8_t {
    closed_form_lognormal,
    mc_lognormal,
    mc_log_ade,
    mc_log_laplacian,
};

std::string method_name(BacktestMethod m);

struct SlotSeries {
    std::string name;
    PriceSeries series;
};

struct BacktestConfig {
    double train_fraction = 0.5;  // leading share of each series used to calibrate
    double rate = 0.1;
    double ctr_buyer = 0.2;
    double ctr_market = 0.2;
    Gamma gamma = Gamma::finite(0.0);
    double theta = 1.0;
    long n_replications = 20000;
    RngSpec rng;
    int k_max = 200;
    DetectorConfig detector;
    // Jump laws other than log-normal are not calibrated (the mixture MLE is
    // normal only); their parameters are supplied here.
    LogAdeJumps ade{25.0, 25.0, 0.5, 0.5};
    LogLaplacianJumps laplacian{0.0, 0.1};
    std::vector<BacktestMethod> methods = {
        BacktestMethod::closed_form_lognormal, BacktestMethod::mc_lognormal,
        BacktestMethod::mc_log_ade, BacktestMethod::mc_log_laplacian};
};

struct BacktestRow {
    std::string slot;
    MarketRegime regime = MarketRegime::bull;
    Moneyness moneyness = Moneyness::atm;
    BacktestMethod method = BacktestMethod::mc_lognormal;
    bool exercised = false;
    double pi0 = 0.0;
    double revenue_change = 0.0;
};

struct BacktestAggregate {
    MarketRegime regime = MarketRegime::bull;
    Moneyness moneyness = Moneyness::atm;
    BacktestMethod method = BacktestMethod::mc_lognormal;
    long n_slots = 0;
    double positive_share = 0.0;  // fraction of slots with revenue_change > 0
    double mean_change = 0.0;
};

struct BacktestTable {
    std::vector<BacktestRow> rows;
    std::vector<BacktestAggregate> aggregates;
};

// Full revenue study: per slot, calibrate on the training segment, price the
// option per moneyness and method, decide exercise on the held-out window and
// aggregate revenue changes by regime. Empty input gives an empty table.
BacktestTable run_backtest_suite(std::span<const SlotSeries> slots, const BacktestConfig& config);

}  // namespace adopt
