#include "adopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace adopt {

namespace {

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Central moments about the sample mean, 1/n normalization.
double central_moment(std::span<const double> x, double mu, int order) {
    double acc = 0.0;
    for (double v : x) acc += std::pow(v - mu, order);
    return acc / static_cast<double>(x.size());
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double std_normal_quantile(double p) {
    static const boost::math::normal_distribution<double> norm;
    return boost::math::quantile(norm, p);
}

// Upper-tail probability of the asymptotic Kolmogorov distribution.
double kolmogorov_sf(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        sign = -sign;
        if (std::abs(term) < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_against(std::span<const double> data, double mean, double sd, double alpha) {
    if (data.size() < 8) throw NumericError("KS test needs at least 8 observations");
    if (!(sd > 0.0)) throw NumericError("KS test: null distribution has zero variance");
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = std_normal_cdf((sorted[i] - mean) / sd);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(f - lo), std::abs(hi - f)});
    }
    const double sq = std::sqrt(n);
    const double lambda = (sq + 0.12 + 0.11 / sq) * d;
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(lambda);
    r.reject = r.p_value < alpha;
    return r;
}

}  // namespace

double sample_kurtosis(std::span<const double> data) {
    if (data.size() < 4) throw NumericError("kurtosis needs at least 4 observations");
    const double mu = mean_of(data);
    const double m2 = central_moment(data, mu, 2);
    if (!(m2 > 0.0)) throw NumericError("kurtosis undefined for a constant series");
    return central_moment(data, mu, 4) / (m2 * m2);
}

TestResult ks_test_known(std::span<const double> data, double mean, double sd, double alpha) {
    return ks_against(data, mean, sd, alpha);
}

TestResult ks_normality_test(std::span<const double> data, double alpha) {
    if (data.size() < 8) throw NumericError("KS test needs at least 8 observations");
    const double mu = mean_of(data);
    const double var = central_moment(data, mu, 2);
    if (!(var > 0.0)) throw NumericError("KS test: sample variance is zero");
    return ks_against(data, mu, std::sqrt(var), alpha);
}

TestResult sw_normality_test(std::span<const double> data, double alpha) {
    const std::size_t n = data.size();
    if (n < 12 || n > 5000)
        throw NumericError("Shapiro-Wilk test supports 12 <= n <= 5000");

    std::vector<double> x(data.begin(), data.end());
    std::sort(x.begin(), x.end());
    const double nd = static_cast<double>(n);

    // Royston's approximation to the expected normal order statistics and
    // the W coefficients.
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = std_normal_quantile((static_cast<double>(i + 1) - 0.375) / (nd + 0.25));
    double m_norm2 = 0.0;
    for (double v : m) m_norm2 += v * v;

    const double u = 1.0 / std::sqrt(nd);
    std::vector<double> a(n);
    const double rsqrt_m = 1.0 / std::sqrt(m_norm2);
    const double a_n = -2.706056 * std::pow(u, 5) + 4.434685 * std::pow(u, 4) -
                       2.071190 * std::pow(u, 3) - 0.147981 * u * u + 0.221157 * u +
                       m[n - 1] * rsqrt_m;
    const double a_n1 = -3.582633 * std::pow(u, 5) + 5.682633 * std::pow(u, 4) -
                        1.752461 * std::pow(u, 3) - 0.293762 * u * u + 0.042981 * u +
                        m[n - 2] * rsqrt_m;
    const double phi = (m_norm2 - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
                       (1.0 - 2.0 * a_n * a_n - 2.0 * a_n1 * a_n1);
    const double rsqrt_phi = 1.0 / std::sqrt(phi);
    for (std::size_t i = 2; i + 2 < n; ++i) a[i] = m[i] * rsqrt_phi;
    a[n - 1] = a_n;
    a[n - 2] = a_n1;
    a[0] = -a_n;
    a[1] = -a_n1;

    const double xbar = mean_of(x);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += a[i] * x[i];
        den += (x[i] - xbar) * (x[i] - xbar);
    }
    if (!(den > 0.0)) throw NumericError("Shapiro-Wilk: sample variance is zero");
    const double w = num * num / den;

    // Normalizing transform of ln(1 - W), valid for n >= 12.
    const double lg = std::log(nd);
    const double mu_w = 0.0038915 * lg * lg * lg - 0.083751 * lg * lg - 0.31082 * lg - 1.5861;
    const double sd_w = std::exp(0.0030302 * lg * lg - 0.082676 * lg - 0.4803);
    const double z = (std::log(1.0 - w) - mu_w) / sd_w;

    TestResult r;
    r.statistic = w;
    r.p_value = std::clamp(1.0 - std_normal_cdf(z), 0.0, 1.0);
    r.reject = r.p_value < alpha;
    return r;
}

TestResult ljung_box_test(std::span<const double> data, int lags, double alpha) {
    const long n = static_cast<long>(data.size());
    if (lags < 1) throw NumericError("Ljung-Box: lag count must be >= 1");
    if (n <= lags + 1) throw NumericError("Ljung-Box test needs n > lags + 1");
    const double mu = mean_of(data);
    double denom = 0.0;
    for (double v : data) denom += (v - mu) * (v - mu);
    if (!(denom > 0.0)) throw NumericError("Ljung-Box undefined for a constant series");

    const double nd = static_cast<double>(n);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        double acf = 0.0;
        for (long t = k; t < n; ++t)
            acf += (data[static_cast<std::size_t>(t)] - mu) *
                   (data[static_cast<std::size_t>(t - k)] - mu);
        acf /= denom;
        q += acf * acf / (nd - static_cast<double>(k));
    }
    q *= nd * (nd + 2.0);

    const boost::math::chi_squared_distribution<double> chi2(lags);
    TestResult r;
    r.statistic = q;
    r.p_value = boost::math::cdf(boost::math::complement(chi2, q));
    r.reject = r.p_value < alpha;
    return r;
}

StylizedFactsReport build_report(std::span<const double> returns) {
    if (returns.size() < 30)
        throw NumericError("stylized-fact battery needs at least 30 observations");
    constexpr double kAlpha = 0.05;

    StylizedFactsReport rep;
    rep.n_obs = static_cast<long>(returns.size());
    rep.kurtosis = sample_kurtosis(returns);
    // The null SE of the sample kurtosis is ~sqrt(24/n); the plain "k > 3"
    // rule would flip a coin on Gaussian data.
    rep.heavy_tails =
        rep.kurtosis > 3.0 + 2.0 * std::sqrt(24.0 / static_cast<double>(returns.size()));
    rep.ks = ks_normality_test(returns, kAlpha);
    rep.sw = sw_normality_test(returns, kAlpha);

    std::vector<double> abs_r(returns.size());
    std::vector<double> sq_r(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) {
        abs_r[i] = std::abs(returns[i]);
        sq_r[i] = returns[i] * returns[i];
    }
    const std::pair<std::string, std::span<const double>> transforms[] = {
        {"raw", returns}, {"abs", abs_r}, {"square", sq_r}};
    for (int lags : {5, 10, 15}) {
        for (const auto& [name, series] : transforms) {
            const TestResult t = ljung_box_test(series, lags, kAlpha);
            rep.ljung_box.push_back({lags, name, t.statistic, t.p_value, t.reject});
            if (t.reject) {
                if (name == "raw")
                    rep.autocorrelation = true;
                else
                    rep.volatility_clustering = true;
            }
        }
    }
    return rep;
}

}  // namespace adopt
