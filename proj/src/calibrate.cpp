#include "adopt/calibrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

namespace adopt {

namespace {

constexpr double kMadToSigma = 1.4826;  // consistency factor for Gaussian MAD

double median_inplace(std::vector<double>& v) {
    if (v.empty()) throw NumericError("median of empty range");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(mid) - 1, v.end());
    return 0.5 * (hi + v[mid - 1]);
}

// Linear-interpolation empirical quantile (same convention as numpy default).
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double h = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - std::floor(h);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::vector<long> detect_gc(std::span<const double> r, double q) {
    std::vector<double> sorted(r.begin(), r.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = quantile_sorted(sorted, q);
    const double hi = quantile_sorted(sorted, 1.0 - q);
    std::vector<long> idx;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] < lo || r[i] > hi) idx.push_back(static_cast<long>(i));
    return idx;
}

std::vector<long> detect_cobw(std::span<const double> r, const DetectorConfig& cfg, double dt) {
    const long block =
        dt < 1.0 / 365.0 ? cfg.cobw_block_hourly : cfg.cobw_block_daily;
    if (static_cast<long>(r.size()) < 2 * block)
        throw NumericError("COBW needs at least two blocks of observations");
    static const boost::math::normal_distribution<double> norm;
    const double z = boost::math::quantile(norm, 1.0 - cfg.cobw_centile);

    std::vector<long> idx;
    long start = 0;
    while (start < static_cast<long>(r.size())) {
        long end = std::min(start + block, static_cast<long>(r.size()));
        // A short trailing block merges with the previous one.
        if (static_cast<long>(r.size()) - end < cfg.cobw_min_block)
            end = static_cast<long>(r.size());
        std::vector<double> tmp(r.begin() + start, r.begin() + end);
        const double med = median_inplace(tmp);
        for (double& v : tmp) v = std::abs(v - med);
        const double mad = median_inplace(tmp);
        // A zero-MAD block is constant; any deviation from it is an outlier.
        const double cut = z * kMadToSigma * mad;
        for (long i = start; i < end; ++i)
            if (std::abs(r[static_cast<std::size_t>(i)] - med) > cut) idx.push_back(i);
        start = end;
    }
    return idx;
}

std::vector<long> detect_hampel(std::span<const double> r, const DetectorConfig& cfg) {
    const long w = cfg.hampel_window;
    if (static_cast<long>(r.size()) < 2 * w)
        throw NumericError("Hampel filter needs at least two windows of observations");
    const long half = w / 2;
    std::vector<long> idx;
    std::vector<double> window;
    for (long i = 0; i < static_cast<long>(r.size()); ++i) {
        const long lo = std::max<long>(0, i - half);
        const long hi = std::min<long>(static_cast<long>(r.size()), lo + w);
        window.assign(r.begin() + lo, r.begin() + hi);
        const double med = median_inplace(window);
        for (double& v : window) v = std::abs(v - med);
        const double mad = median_inplace(window);
        if (std::abs(r[static_cast<std::size_t>(i)] - med) > cfg.hampel_k * kMadToSigma * mad)
            idx.push_back(i);
    }
    return idx;
}

std::vector<long> detect_pji(std::span<const double> r, const DetectorConfig& cfg) {
    const long w = cfg.pji_window;
    if (static_cast<long>(r.size()) < 2 * w)
        throw NumericError("PJI needs at least two windows of observations");
    std::vector<long> idx;
    double trailing = 0.0;
    for (long i = 0; i < static_cast<long>(r.size()); ++i) {
        if (i >= w) {
            const double mean_abs = trailing / static_cast<double>(w);
            if (std::abs(r[static_cast<std::size_t>(i)]) > cfg.pji_k * mean_abs)
                idx.push_back(i);
            trailing -= std::abs(r[static_cast<std::size_t>(i - w)]);
        }
        trailing += std::abs(r[static_cast<std::size_t>(i)]);
    }
    return idx;
}

std::vector<long> detect_bv_lm(std::span<const double> r, const DetectorConfig& cfg, double dt) {
    if (!(dt < 1.0 / 365.0))
        throw ConfigError("BV-LM requires intraday data (dt < 1/365); use another detector");
    const long K = cfg.bv_window;
    if (static_cast<long>(r.size()) < 2 * K)
        throw NumericError("BV-LM needs at least two bipower windows of observations");

    const double n = static_cast<double>(r.size());
    const double c = std::sqrt(2.0 / M_PI);
    const double log_n = std::log(n);
    const double cn = std::sqrt(2.0 * log_n) / c -
                      (std::log(M_PI) + std::log(log_n)) / (2.0 * c * std::sqrt(2.0 * log_n));
    const double sn = 1.0 / (c * std::sqrt(2.0 * log_n));
    const double beta_star = -std::log(-std::log(1.0 - cfg.bv_significance));

    std::vector<long> idx;
    for (long i = K; i < static_cast<long>(r.size()); ++i) {
        // Trailing bipower variance over the K returns ending at i-1.
        double bv = 0.0;
        for (long j = i - K + 1; j < i; ++j)
            bv += std::abs(r[static_cast<std::size_t>(j)]) *
                  std::abs(r[static_cast<std::size_t>(j - 1)]);
        bv /= static_cast<double>(K - 2);
        if (!(bv > 0.0)) {
            // Constant trailing window: any move is a jump.
            if (std::abs(r[static_cast<std::size_t>(i)]) > 0.0) idx.push_back(i);
            continue;
        }
        const double L = r[static_cast<std::size_t>(i)] / std::sqrt(bv);
        if ((std::abs(L) - cn) / sn > beta_star) idx.push_back(i);
    }
    return idx;
}

double kurtosis_without(std::span<const double> r, const std::vector<long>& drop) {
    std::vector<double> kept;
    kept.reserve(r.size());
    std::size_t d = 0;
    for (long i = 0; i < static_cast<long>(r.size()); ++i) {
        if (d < drop.size() && drop[d] == i) {
            ++d;
            continue;
        }
        kept.push_back(r[static_cast<std::size_t>(i)]);
    }
    if (kept.size() < 4) return std::numeric_limits<double>::infinity();
    const double mu = std::accumulate(kept.begin(), kept.end(), 0.0) / static_cast<double>(kept.size());
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : kept) {
        const double d2 = (v - mu) * (v - mu);
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(kept.size());
    m4 /= static_cast<double>(kept.size());
    if (!(m2 > 0.0)) return std::numeric_limits<double>::infinity();
    return m4 / (m2 * m2);
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex (standard reflection/expansion/contraction/shrink).
// ---------------------------------------------------------------------------

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double scale, double tol, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale;
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    SimplexResult res;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        if (std::abs(vals[worst] - vals[best]) <
            tol * (std::abs(vals[best]) + std::abs(vals[worst]) + 1e-30) + 1e-14) {
            res.x = pts[best];
            res.value = vals[best];
            res.converged = true;
            return res;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + coeff * (pts[worst][d] - centroid[d]);
            return p;
        };

        std::vector<double> refl = blend(-1.0);
        const double f_refl = f(refl);
        if (f_refl < vals[best]) {
            std::vector<double> exp_p = blend(-2.0);
            const double f_exp = f(exp_p);
            if (f_exp < f_refl) {
                pts[worst] = std::move(exp_p);
                vals[worst] = f_exp;
            } else {
                pts[worst] = std::move(refl);
                vals[worst] = f_refl;
            }
        } else if (f_refl < vals[second_worst]) {
            pts[worst] = std::move(refl);
            vals[worst] = f_refl;
        } else {
            std::vector<double> contr = blend(f_refl < vals[worst] ? -0.5 : 0.5);
            const double f_contr = f(contr);
            if (f_contr < std::min(vals[worst], f_refl)) {
                pts[worst] = std::move(contr);
                vals[worst] = f_contr;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    const std::size_t best = static_cast<std::size_t>(
        std::min_element(vals.begin(), vals.end()) - vals.begin());
    res.x = pts[best];
    res.value = vals[best];
    res.converged = false;
    return res;
}

double log_add_exp(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

LogReturnSeries log_returns(const PriceSeries& series) {
    if (series.prices.size() < 2) throw DataError("log returns need at least 2 prices");
    LogReturnSeries out;
    out.dt = series.dt;
    out.returns.resize(series.prices.size() - 1);
    for (std::size_t i = 0; i + 1 < series.prices.size(); ++i)
        out.returns[i] = std::log(series.prices[i + 1]) - std::log(series.prices[i]);
    return out;
}

std::string detector_name(JumpDetector d) {
    switch (d) {
        case JumpDetector::gc: return "gc";
        case JumpDetector::pji: return "pji";
        case JumpDetector::cobw: return "cobw";
        case JumpDetector::bv_lm: return "bv_lm";
        case JumpDetector::hampel: return "hampel";
    }
    return "unknown";
}

JumpDetector parse_detector(const std::string& name) {
    if (name == "gc") return JumpDetector::gc;
    if (name == "pji") return JumpDetector::pji;
    if (name == "cobw") return JumpDetector::cobw;
    if (name == "bv_lm" || name == "bv-lm") return JumpDetector::bv_lm;
    if (name == "hampel") return JumpDetector::hampel;
    throw ConfigError("unknown jump detector \"" + name + "\"");
}

JumpDetectionResult detect_jumps(const LogReturnSeries& returns, JumpDetector detector,
                                 const DetectorConfig& config) {
    const std::span<const double> r(returns.returns);
    if (r.size() < 4) throw NumericError("jump detection needs at least 4 returns");

    JumpDetectionResult res;
    res.detector = detector;
    res.config = config;
    switch (detector) {
        case JumpDetector::gc: res.jump_indices = detect_gc(r, config.gc_centile); break;
        case JumpDetector::cobw: res.jump_indices = detect_cobw(r, config, returns.dt); break;
        case JumpDetector::hampel: res.jump_indices = detect_hampel(r, config); break;
        case JumpDetector::pji: res.jump_indices = detect_pji(r, config); break;
        case JumpDetector::bv_lm: res.jump_indices = detect_bv_lm(r, config, returns.dt); break;
    }
    res.jump_returns.reserve(res.jump_indices.size());
    for (long i : res.jump_indices) res.jump_returns.push_back(r[static_cast<std::size_t>(i)]);
    return res;
}

std::pair<JumpDetector, std::vector<DetectorDiagnostic>> select_detector(
    const LogReturnSeries& returns, const DetectorConfig& config) {
    if (returns.returns.size() < 30)
        throw NumericError("detector selection needs at least 30 observations");

    std::vector<JumpDetector> candidates = {JumpDetector::gc, JumpDetector::pji,
                                            JumpDetector::cobw, JumpDetector::hampel};
    if (returns.dt < 1.0 / 365.0) candidates.push_back(JumpDetector::bv_lm);

    std::vector<DetectorDiagnostic> diags;
    for (JumpDetector d : candidates) {
        const JumpDetectionResult det = detect_jumps(returns, d, config);
        DetectorDiagnostic diag;
        diag.detector = d;
        diag.flagged = static_cast<long>(det.jump_indices.size());
        diag.residual_kurtosis = kurtosis_without(returns.returns, det.jump_indices);
        diags.push_back(diag);
    }

    const auto better = [](const DetectorDiagnostic& a, const DetectorDiagnostic& b) {
        const double da = std::abs(a.residual_kurtosis - 3.0);
        const double db = std::abs(b.residual_kurtosis - 3.0);
        if (da != db) return da < db;
        return a.flagged < b.flagged;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < diags.size(); ++i)
        if (better(diags[i], diags[best])) best = i;
    return {diags[best].detector, diags};
}

double estimate_lambda(const JumpDetectionResult& detection, long n_obs, double dt) {
    if (n_obs < 1) throw ConfigError("estimate_lambda needs n_obs >= 1");
    if (!(dt > 0.0)) throw ConfigError("estimate_lambda needs dt > 0");
    const double lambda =
        static_cast<double>(detection.jump_indices.size()) / (static_cast<double>(n_obs) * dt);
    return std::min(lambda, 0.5 / dt);
}

MleEstimate fit_mle(const LogReturnSeries& returns, double lambda_fixed) {
    const std::vector<double>& z = returns.returns;
    const double dt = returns.dt;
    if (z.size() < 30) throw NumericError("MLE needs at least 30 observations");
    if (!(dt > 0.0)) throw ConfigError("MLE needs dt > 0");
    if (!(lambda_fixed >= 0.0)) throw ConfigError("lambda must be >= 0");
    const double w = lambda_fixed * dt;
    if (w >= 1.0) throw NumericError("lambda * dt >= 1: the Bernoulli mixture weight is invalid");

    const double n = static_cast<double>(z.size());
    const double zbar = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double zvar = 0.0;
    for (double v : z) zvar += (v - zbar) * (v - zbar);
    zvar /= n;
    if (!(std::sqrt(zvar) > 1e-12))
        throw NumericError("degenerate variance: returns are (nearly) constant");

    // Parameter vector: (mu, ln sigma, mu_V, ln sigma_V); jump block dropped
    // when the mixture weight is zero.
    const bool with_jumps = w > 0.0;
    const double log_w = with_jumps ? std::log(w) : 0.0;
    const double log_1mw = std::log1p(-w);

    auto neg_ll = [&](const std::vector<double>& p) {
        const double mu = p[0];
        const double sigma = std::exp(p[1]);
        const double mean1 = (mu - 0.5 * sigma * sigma) * dt;
        const double var1 = sigma * sigma * dt;
        if (!(var1 > 1e-300)) return 1e300;
        double mean2 = 0.0;
        double var2 = 0.0;
        if (with_jumps) {
            const double mu_v = p[2];
            const double sigma_v = std::exp(p[3]);
            mean2 = mean1 + mu_v;
            var2 = var1 + sigma_v * sigma_v;
        }
        const double c1 = -0.5 * std::log(2.0 * M_PI * var1);
        const double c2 = with_jumps ? -0.5 * std::log(2.0 * M_PI * var2) : 0.0;
        double ll = 0.0;
        for (double v : z) {
            const double d1 = v - mean1;
            const double l1 = log_1mw + c1 - 0.5 * d1 * d1 / var1;
            if (with_jumps) {
                const double d2 = v - mean2;
                const double l2 = log_w + c2 - 0.5 * d2 * d2 / var2;
                ll += log_add_exp(l1, l2);
            } else {
                ll += l1;
            }
        }
        if (!std::isfinite(ll)) return 1e300;
        return -ll;
    };

    // Deterministic multi-start recipes built from sample moments.
    const double sigma_all = std::sqrt(zvar / dt);
    const auto mu_from = [&](double sig) { return zbar / dt + 0.5 * sig * sig; };
    std::vector<std::vector<double>> starts;
    if (with_jumps) {
        const double s_half = 0.5 * sigma_all;
        const double spread = std::sqrt(zvar);
        starts = {
            {mu_from(sigma_all), std::log(sigma_all), 0.0, std::log(spread)},
            {mu_from(s_half), std::log(s_half), 2.0 * spread, std::log(spread)},
            {mu_from(s_half), std::log(s_half), -2.0 * spread, std::log(spread)},
            {mu_from(s_half), std::log(s_half), 0.0, std::log(3.0 * spread)},
            {mu_from(0.25 * sigma_all), std::log(0.25 * sigma_all), 4.0 * spread,
             std::log(2.0 * spread)},
        };
    } else {
        starts = {
            {mu_from(sigma_all), std::log(sigma_all)},
            {mu_from(0.5 * sigma_all), std::log(0.5 * sigma_all)},
        };
    }

    SimplexResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& s : starts) {
        const SimplexResult r = nelder_mead(neg_ll, s, 0.25, 1e-10, 4000);
        if (r.value < best.value) best = r;
    }

    MleEstimate est;
    est.mu_hat = best.x[0];
    est.sigma_hat = std::exp(best.x[1]);
    if (with_jumps) {
        est.mu_v_hat = best.x[2];
        est.sigma_v_hat = std::exp(best.x[3]);
    }
    est.lambda_hat = lambda_fixed;
    est.log_likelihood = -best.value;
    est.converged = best.converged;
    est.n_obs = static_cast<long>(z.size());
    if (est.sigma_hat * std::sqrt(dt) < 1e-8)
        throw NumericError("degenerate variance: fitted sigma*sqrt(dt) below 1e-8");
    return est;
}

CalibrationReport calibrate_series(const PriceSeries& series, const DetectorConfig& config,
                                   std::optional<JumpDetector> forced) {
    const LogReturnSeries rets = log_returns(series);
    CalibrationReport report;
    if (forced.has_value()) {
        report.selected = *forced;
        const auto [ignored, diags] = select_detector(rets, config);
        report.detectors = diags;
    } else {
        auto [selected, diags] = select_detector(rets, config);
        report.selected = selected;
        report.detectors = std::move(diags);
    }
    const JumpDetectionResult det = detect_jumps(rets, report.selected, config);
    report.jump_indices = det.jump_indices;
    report.lambda_hat =
        estimate_lambda(det, static_cast<long>(rets.returns.size()), rets.dt);
    report.mle = fit_mle(rets, report.lambda_hat);
    return report;
}

}  // namespace adopt
