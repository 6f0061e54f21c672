#pragma once

#include <span>
#include <string>
#include <vector>

#include "adopt/errors.hpp"

namespace adopt {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

// Fourth standardized moment (non-excess; a normal sample gives ~3). n >= 4.
double sample_kurtosis(std::span<const double> data);

// One-sample Kolmogorov-Smirnov test against N(mean, sd^2) with *known*
// parameters; asymptotic p-value with Stephens' finite-sample scaling.
TestResult ks_test_known(std::span<const double> data, double mean, double sd,
                         double alpha = 0.05);

// KS normality test with the null fitted from the sample (mean and variance
// estimated). The asymptotic p-value is used without a Lilliefors correction,
// which makes the test conservative. n >= 8.
TestResult ks_normality_test(std::span<const double> data, double alpha = 0.05);

// Shapiro-Wilk W test, Royston's approximation; valid for 12 <= n <= 5000.
TestResult sw_normality_test(std::span<const double> data, double alpha = 0.05);

// Ljung-Box Q test for autocorrelation up to the given lag count; chi-square
// p-value. Requires n > lags + 1 and a non-constant series.
TestResult ljung_box_test(std::span<const double> data, int lags, double alpha = 0.05);

struct LjungBoxEntry {
    int lags = 0;
    std::string transform;  // "raw", "abs" or "square"
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

// One row of the stylized-fact battery over a log return series.
struct StylizedFactsReport {
    long n_obs = 0;
    double kurtosis = 0.0;
    bool heavy_tails = false;           // kurtosis above 3 by > 2 null SEs
    TestResult ks;                      // normality, estimated parameters
    TestResult sw;
    std::vector<LjungBoxEntry> ljung_box;  // lags {5,10,15} x {raw,abs,square}
    bool autocorrelation = false;       // any raw-transform rejection
    bool volatility_clustering = false; // any abs/square rejection
};

// Runs the full battery at 5% significance. n >= 30.
StylizedFactsReport build_report(std::span<const double> returns);

}  // namespace adopt
