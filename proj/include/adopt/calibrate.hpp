#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adopt/core.hpp"

namespace adopt {

// Log change rates R(t, dt) = ln X(t+dt) - ln X(t) on a uniform grid.
struct LogReturnSeries {
    std::vector<double> returns;
    double dt = 0.0;
};

LogReturnSeries log_returns(const PriceSeries& series);

// ---------------------------------------------------------------------------
// Jump detection
// ---------------------------------------------------------------------------

enum class JumpDetector : std::uint8_t { gc, pji, cobw, bv_lm, hampel };

std::string detector_name(JumpDetector d);
JumpDetector parse_detector(const std::string& name);

struct DetectorConfig {
    // GC: flag returns outside the global [q, 1-q] empirical centiles.
    double gc_centile = 0.005;
    // COBW: disjoint blocks; flag outside block median +- z_{1-q}*1.4826*MAD.
    // Blockwise *empirical* centiles of a 20-24 point block always flag the
    // block extremes, so the centile is taken of the block's fitted Gaussian.
    // MAD estimation noise on short blocks roughly doubles the nominal false
    // rate, hence the tight default.
    double cobw_centile = 0.001;
    long cobw_block_hourly = 24;
    long cobw_block_daily = 20;
    long cobw_min_block = 5;  // shorter trailing blocks merge backwards
    // Hampel: rolling median/MAD filter.
    long hampel_window = 11;
    double hampel_k = 3.0;
    // PJI: |r| above k times the trailing mean absolute return.
    long pji_window = 20;
    double pji_k = 4.0;
    // BV-LM: Lee-Mykland statistic with trailing bipower window K and a
    // Gumbel rejection threshold; intraday series only (dt < 1/365).
    long bv_window = 16;
    double bv_significance = 0.01;
};

struct JumpDetectionResult {
    JumpDetector detector = JumpDetector::gc;
    std::vector<long> jump_indices;   // sorted, 0-based into returns
    std::vector<double> jump_returns;
    DetectorConfig config;
};

JumpDetectionResult detect_jumps(const LogReturnSeries& returns, JumpDetector detector,
                                 const DetectorConfig& config = {});

struct DetectorDiagnostic {
    JumpDetector detector = JumpDetector::gc;
    long flagged = 0;
    double residual_kurtosis = 0.0;  // kurtosis after removing flagged returns
};

// Runs every applicable detector, removes its flags and picks the one whose
// residual kurtosis is closest to 3 (ties: fewest flags, then enum order).
// Needs at least 30 observations.
std::pair<JumpDetector, std::vector<DetectorDiagnostic>> select_detector(
    const LogReturnSeries& returns, const DetectorConfig& config = {});

// lambda_hat = flags / (n * dt), clamped so lambda_hat * dt <= 0.5.
double estimate_lambda(const JumpDetectionResult& detection, long n_obs, double dt);

// ---------------------------------------------------------------------------
// Maximum likelihood for the normal-mixture discretization
// ---------------------------------------------------------------------------

struct MleEstimate {
    double sigma_hat = 0.0;    // diffusion volatility per sqrt-year
    double mu_v_hat = 0.0;     // jump log-size mean (alpha)
    double sigma_v_hat = 0.0;  // jump log-size sd (beta)
    double lambda_hat = 0.0;   // echo of the fixed intensity
    double mu_hat = 0.0;       // drift nuisance parameter, reported
    double log_likelihood = 0.0;
    bool converged = false;
    long n_obs = 0;
};

// Maximizes the two-component mixture likelihood
//   prod_j (1 - lambda*dt) f1(z_j) + lambda*dt f2(z_j)
// with f1 = N((mu - sigma^2/2)dt, sigma^2 dt) and
// f2 = N((mu - sigma^2/2)dt + mu_V, sigma^2 dt + sigma_V^2), lambda held
// fixed. Multi-start Nelder-Mead on a log parameterization of the scales.
// Throws NumericError for fewer than 30 observations, lambda*dt >= 1 or a
// degenerate sample.
MleEstimate fit_mle(const LogReturnSeries& returns, double lambda_fixed);

// ---------------------------------------------------------------------------

struct CalibrationReport {
    std::vector<DetectorDiagnostic> detectors;
    JumpDetector selected = JumpDetector::gc;
    std::vector<long> jump_indices;
    double lambda_hat = 0.0;
    MleEstimate mle;
};

// End-to-end pipeline: returns -> detector selection -> lambda -> MLE.
CalibrationReport calibrate_series(const PriceSeries& series,
                                   const DetectorConfig& config = {},
                                   std::optional<JumpDetector> forced = std::nullopt);

}  // namespace adopt
