#include "adopt/report.hpp"

namespace adopt {

Json to_json(const PricingResult& r) {
    Json j;
    j["method"] = r.method == PricingMethod::monte_carlo ? "monte_carlo" : "closed_form";
    j["pi0"] = r.pi0;
    j["std_error"] = r.std_error;
    j["ci95_low"] = r.ci95_low;
    j["ci95_high"] = r.ci95_high;
    j["z"] = r.n_replications;
    if (r.method == PricingMethod::closed_form) {
        j["series_terms"] = r.series_terms;
        j["series_remainder_bound"] = r.series_remainder_bound;
    }
    return j;
}

Json to_json(const SensitivityEntry& e) {
    Json j;
    j["parameter"] = e.parameter;
    j["price_down"] = e.price_down;
    j["price_base"] = e.price_base;
    j["price_up"] = e.price_up;
    j["direction"] = e.direction;
    return j;
}

Json to_json(const StylizedFactsReport& r) {
    Json j;
    j["n_obs"] = r.n_obs;
    j["kurtosis"] = r.kurtosis;
    j["heavy_tails"] = r.heavy_tails;
    j["ks"] = {{"statistic", r.ks.statistic}, {"p_value", r.ks.p_value}, {"reject", r.ks.reject}};
    j["sw"] = {{"statistic", r.sw.statistic}, {"p_value", r.sw.p_value}, {"reject", r.sw.reject}};
    Json lb = Json::array();
    for (const LjungBoxEntry& e : r.ljung_box) {
        lb.push_back({{"lags", e.lags},
                      {"transform", e.transform},
                      {"statistic", e.statistic},
                      {"p_value", e.p_value},
                      {"reject", e.reject}});
    }
    j["ljung_box"] = std::move(lb);
    j["autocorrelation"] = r.autocorrelation;
    j["volatility_clustering"] = r.volatility_clustering;
    return j;
}

Json to_json(const CalibrationReport& r) {
    Json j;
    Json dets = Json::array();
    for (const DetectorDiagnostic& d : r.detectors) {
        dets.push_back({{"detector", detector_name(d.detector)},
                        {"flagged", d.flagged},
                        {"residual_kurtosis", d.residual_kurtosis}});
    }
    j["detectors"] = std::move(dets);
    j["selected_detector"] = detector_name(r.selected);
    j["jump_indices"] = r.jump_indices;
    j["lambda_hat"] = r.lambda_hat;
    j["mle"] = {{"sigma_hat", r.mle.sigma_hat},
                {"mu_v_hat", r.mle.mu_v_hat},
                {"sigma_v_hat", r.mle.sigma_v_hat},
                {"lambda_hat", r.mle.lambda_hat},
                {"mu_hat", r.mle.mu_hat},
                {"log_likelihood", r.mle.log_likelihood},
                {"converged", r.mle.converged},
                {"n_obs", r.mle.n_obs}};
    return j;
}

Json to_json(const BacktestTable& t) {
    Json j;
    Json rows = Json::array();
    for (const BacktestRow& r : t.rows) {
        rows.push_back({{"slot", r.slot},
                        {"regime", regime_name(r.regime)},
                        {"moneyness", moneyness_name(r.moneyness)},
                        {"method", method_name(r.method)},
                        {"exercised", r.exercised},
                        {"pi0", r.pi0},
                        {"revenue_change", r.revenue_change}});
    }
    j["rows"] = std::move(rows);
    Json aggs = Json::array();
    for (const BacktestAggregate& a : t.aggregates) {
        aggs.push_back({{"regime", regime_name(a.regime)},
                        {"moneyness", moneyness_name(a.moneyness)},
                        {"method", method_name(a.method)},
                        {"n_slots", a.n_slots},
                        {"positive_share", a.positive_share},
                        {"mean_change", a.mean_change}});
    }
    j["aggregates"] = std::move(aggs);
    return j;
}

Json to_json(const JumpDiffusionParams& p) {
    Json j;
    j["measure"] = p.is_risk_neutral() ? "risk_neutral" : "real_world";
    j[p.is_risk_neutral() ? "r" : "mu"] = p.drift;
    j["sigma"] = p.sigma;
    j["lambda"] = p.lambda;
    Json jd;
    jd["distribution"] = jump_distribution_name(p.jumps);
    if (const auto* ln = std::get_if<LogNormalJumps>(&p.jumps)) {
        jd["alpha"] = ln->alpha;
        jd["beta"] = ln->beta;
    } else if (const auto* ade = std::get_if<LogAdeJumps>(&p.jumps)) {
        jd["eta1"] = ade->eta1;
        jd["eta2"] = ade->eta2;
        jd["p1"] = ade->p1;
        jd["p2"] = ade->p2;
    } else if (const auto* lap = std::get_if<LogLaplacianJumps>(&p.jumps)) {
        jd["rho"] = lap->rho;
        jd["eta"] = lap->eta;
    }
    j["jumps"] = std::move(jd);
    return j;
}

Json to_json(const OptionSpec& s) {
    Json j;
    j["theta"] = s.theta;
    j["strike"] = s.strike;
    j["ctr_buyer"] = s.ctr_buyer;
    j["ctr_market"] = s.ctr_market;
    j["S"] = s.exercise_start;
    j["T"] = s.expiry;
    j["m"] = s.averaging_steps;
    if (s.gamma.is_finite())
        j["gamma"] = s.gamma.value();
    else
        j["gamma"] = s.gamma.to_string();
    return j;
}

}  // namespace adopt
