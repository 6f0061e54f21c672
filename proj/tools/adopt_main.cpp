// adopt: average-price advertising option toolkit.
//
// Subcommands: simulate, price, calibrate, facts, backtest. Every command is
// a pure function of (input files, config, seed): reports are byte-identical
// on rerun and across thread counts. Exit codes: 0 success, 2 config error,
// 3 data error, 4 numerical error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "adopt/backtest.hpp"
#include "adopt/calibrate.hpp"
#include "adopt/csv.hpp"
#include "adopt/pricing.hpp"
#include "adopt/report.hpp"
#include "adopt/simulate.hpp"
#include "adopt/stats.hpp"

namespace fs = std::filesystem;
using adopt::Json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "json";
    std::uint64_t seed = 0;
};

struct ModelOpts {
    double x0 = 100.0;
    double rate = 0.1;
    double sigma = 0.2;
    double lambda = 0.0;
    std::string jump = "lognormal";
    double alpha = 0.0;
    double beta = 0.0;
    double eta1 = 25.0;
    double eta2 = 25.0;
    double p1 = 0.5;
    double p2 = 0.5;
    double rho = 0.0;
    double eta = 0.1;
};

struct OptionOpts {
    double strike = 75.0;
    double theta = 1.0;
    double ctr_buyer = 0.2;
    double ctr_market = 0.2;
    double exercise_start = 0.0822;
    double expiry = 0.1644;
    long m = 30;
    std::string gamma = "0";
};

adopt::JumpSizeDistribution make_jumps(const ModelOpts& m) {
    if (m.jump == "lognormal") return adopt::LogNormalJumps{m.alpha, m.beta};
    if (m.jump == "ade") return adopt::LogAdeJumps{m.eta1, m.eta2, m.p1, m.p2};
    if (m.jump == "laplacian") return adopt::LogLaplacianJumps{m.rho, m.eta};
    throw adopt::ConfigError("unknown jump law \"" + m.jump +
                             "\" (expected lognormal, ade or laplacian)");
}

adopt::OptionSpec make_option(const OptionOpts& o) {
    adopt::OptionSpec spec;
    spec.strike = o.strike;
    spec.theta = o.theta;
    spec.ctr_buyer = o.ctr_buyer;
    spec.ctr_market = o.ctr_market;
    spec.exercise_start = o.exercise_start;
    spec.expiry = o.expiry;
    spec.averaging_steps = o.m;
    spec.gamma = adopt::Gamma::parse(o.gamma);
    spec.validate();
    return spec;
}

// Config file values fill in any option the command line left untouched
// (precedence: flags > config file > defaults).
void apply_config_file(CLI::App& cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw adopt::ConfigError("cannot open config file " + path);
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const std::exception& e) {
        throw adopt::ConfigError("config file " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw adopt::ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        CLI::Option* opt = cmd.get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw adopt::ConfigError("config file key \"" + key + "\" is not a known option");
        if (opt->count() > 0) continue;  // explicit flag wins
        const std::string text =
            value.is_string() ? value.get<std::string>() : value.dump();
        try {
            opt->add_result(text);
            opt->run_callback();
        } catch (const CLI::Error&) {
            throw adopt::ConfigError("config file value for \"" + key + "\" is invalid: " + text);
        }
    }
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw adopt::DataError("cannot write " + path.string());
    out << text;
}

void write_report(const CommonOpts& common, const std::string& name, const Json& body) {
    write_text(fs::path(common.out_dir) / name, body.dump(2) + "\n");
}

Json common_echo(const CommonOpts& c) {
    Json j;
    j["seed"] = c.seed;
    j["format"] = c.format;
    return j;
}

std::vector<adopt::SlotSeries> load_slots(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const std::string& input : inputs) {
        if (fs::is_directory(input)) {
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.path().extension() == ".csv") files.push_back(entry.path().string());
        } else {
            files.push_back(input);
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<adopt::SlotSeries> slots;
    for (const std::string& file : files)
        slots.push_back({fs::path(file).stem().string(), adopt::ingest_csv(file)});
    return slots;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const CommonOpts& common, const ModelOpts& model, const OptionOpts& option,
                 long n_paths, const std::string& measure, double mu) {
    const adopt::JumpSizeDistribution jumps = make_jumps(model);
    const adopt::JumpDiffusionParams params =
        measure == "real_world"
            ? adopt::JumpDiffusionParams::real_world(mu, model.sigma, model.lambda, jumps)
            : adopt::JumpDiffusionParams::risk_neutral(model.rate, model.sigma, model.lambda,
                                                       jumps);
    const adopt::OptionSpec spec = make_option(option);
    const adopt::TimeGrid grid = adopt::build_time_grid(spec);
    const auto paths =
        adopt::simulate_paths(model.x0, params, grid, n_paths, adopt::RngSpec{common.seed, 0});

    std::ostringstream csv;
    adopt::write_paths_csv(csv, paths);
    write_text(fs::path(common.out_dir) / "paths.csv", csv.str());

    double mean_terminal = 0.0;
    long total_jumps = 0;
    for (const auto& p : paths) {
        mean_terminal += p.terminal_price();
        total_jumps += static_cast<long>(p.jump_steps.size());
    }
    mean_terminal /= static_cast<double>(paths.size());

    Json report;
    report["command"] = "simulate";
    report["config"] = common_echo(common);
    report["config"]["params"] = adopt::to_json(params);
    report["config"]["option"] = adopt::to_json(spec);
    report["config"]["paths"] = n_paths;
    report["grid"] = {{"dt", grid.dt}, {"m_tilde", grid.m_tilde}, {"m", grid.m}};
    report["mean_terminal_price"] = mean_terminal;
    report["total_jumps"] = total_jumps;
    report["paths_file"] = "paths.csv";
    write_report(common, "simulate_report.json", report);
    std::cout << "simulate: wrote paths.csv and simulate_report.json\n";
    return 0;
}

int cmd_price(const CommonOpts& common, const ModelOpts& model, const OptionOpts& option,
              long z, int k_max, const std::string& method, bool sensitivities) {
    const adopt::JumpDiffusionParams params = adopt::JumpDiffusionParams::risk_neutral(
        model.rate, model.sigma, model.lambda, make_jumps(model));
    const adopt::OptionSpec spec = make_option(option);

    Json report;
    report["command"] = "price";
    report["config"] = common_echo(common);
    report["config"]["params"] = adopt::to_json(params);
    report["config"]["option"] = adopt::to_json(spec);
    report["config"]["x0"] = model.x0;
    report["config"]["z"] = z;
    report["config"]["k_max"] = k_max;
    report["config"]["method"] = method;

    const bool closed_form_applicable =
        spec.gamma.is_zero() && model.jump == "lognormal" && (model.sigma > 0.0 || model.beta > 0.0);
    if (method == "mc" || method == "both") {
        const auto mc = adopt::mc_price(model.x0, params, spec, z, adopt::RngSpec{common.seed, 0});
        report["monte_carlo"] = adopt::to_json(mc);
    }
    if (method == "closed_form" || (method == "both" && closed_form_applicable)) {
        const auto cf = adopt::closed_form_price(model.x0, params, spec, k_max);
        report["closed_form"] = adopt::to_json(cf);
    }
    if (sensitivities) {
        Json s = Json::array();
        for (const auto& e :
             adopt::price_sensitivities(model.x0, params, spec, 0.01, z, adopt::RngSpec{common.seed, 1'000'000}, k_max))
            s.push_back(adopt::to_json(e));
        report["sensitivities"] = std::move(s);
    }
    write_report(common, "price_report.json", report);
    std::cout << "price: wrote price_report.json\n";
    return 0;
}

int cmd_calibrate(const CommonOpts& common, const std::string& input,
                  const std::string& detector) {
    const adopt::PriceSeries series = adopt::ingest_csv(input);
    std::optional<adopt::JumpDetector> forced;
    if (detector != "auto") forced = adopt::parse_detector(detector);
    const adopt::CalibrationReport cal = adopt::calibrate_series(series, {}, forced);

    Json report;
    report["command"] = "calibrate";
    report["config"] = common_echo(common);
    report["config"]["input"] = input;
    report["config"]["detector"] = detector;
    report["n_prices"] = series.prices.size();
    report["dt"] = series.dt;
    report["calibration"] = adopt::to_json(cal);
    write_report(common, "calibration_report.json", report);
    std::cout << "calibrate: wrote calibration_report.json\n";
    return 0;
}

int cmd_facts(const CommonOpts& common, const std::string& input) {
    const adopt::PriceSeries series = adopt::ingest_csv(input);
    const adopt::LogReturnSeries returns = adopt::log_returns(series);
    const adopt::StylizedFactsReport facts = adopt::build_report(returns.returns);

    Json report;
    report["command"] = "facts";
    report["config"] = common_echo(common);
    report["config"]["input"] = input;
    report["dt"] = returns.dt;
    report["facts"] = adopt::to_json(facts);
    write_report(common, "facts_report.json", report);

    if (common.format == "csv") {
        std::ostringstream csv;
        csv << "metric,transform,lags,value,p_value,reject\n";
        csv << "kurtosis,,," << facts.kurtosis << ",,\n";
        csv << "heavy_tails,,," << (facts.heavy_tails ? 1 : 0) << ",,\n";
        csv << "ks,,," << facts.ks.statistic << ',' << facts.ks.p_value << ','
            << (facts.ks.reject ? 1 : 0) << "\n";
        csv << "sw,,," << facts.sw.statistic << ',' << facts.sw.p_value << ','
            << (facts.sw.reject ? 1 : 0) << "\n";
        for (const auto& e : facts.ljung_box)
            csv << "ljung_box," << e.transform << ',' << e.lags << ',' << e.statistic << ','
                << e.p_value << ',' << (e.reject ? 1 : 0) << "\n";
        write_text(fs::path(common.out_dir) / "facts.csv", csv.str());
    }
    std::cout << "facts: wrote facts_report.json\n";
    return 0;
}

int cmd_backtest(const CommonOpts& common, const std::vector<std::string>& inputs,
                 double train_fraction, const ModelOpts& model, const OptionOpts& option,
                 long z) {
    adopt::BacktestConfig cfg;
    cfg.train_fraction = train_fraction;
    cfg.rate = model.rate;
    cfg.ctr_buyer = option.ctr_buyer;
    cfg.ctr_market = option.ctr_market;
    cfg.gamma = adopt::Gamma::parse(option.gamma);
    cfg.theta = option.theta;
    cfg.n_replications = z;
    cfg.rng = adopt::RngSpec{common.seed, 0};
    cfg.ade = adopt::LogAdeJumps{model.eta1, model.eta2, model.p1, model.p2};
    cfg.laplacian = adopt::LogLaplacianJumps{model.rho, model.eta};

    const auto slots = load_slots(inputs);
    const adopt::BacktestTable table = adopt::run_backtest_suite(slots, cfg);

    std::ostringstream csv;
    adopt::write_backtest_csv(csv, table);
    write_text(fs::path(common.out_dir) / "backtest.csv", csv.str());

    Json report;
    report["command"] = "backtest";
    report["config"] = common_echo(common);
    report["config"]["train_fraction"] = train_fraction;
    report["config"]["r"] = model.rate;
    report["config"]["z"] = z;
    report["config"]["gamma"] = option.gamma;
    report["config"]["slots"] = slots.size();
    report["results"] = adopt::to_json(table);
    write_report(common, "backtest_report.json", report);
    std::cout << "backtest: wrote backtest.csv and backtest_report.json\n";
    return 0;
}

void add_model_flags(CLI::App* cmd, ModelOpts& m) {
    cmd->add_option("--x0", m.x0, "spot price at time 0");
    cmd->add_option("--r", m.rate, "riskless rate per year");
    cmd->add_option("--sigma", m.sigma, "diffusion volatility per sqrt-year");
    cmd->add_option("--lambda", m.lambda, "jump intensity per year");
    cmd->add_option("--jump", m.jump, "jump law: lognormal, ade or laplacian");
    cmd->add_option("--alpha", m.alpha, "log-normal jump mean");
    cmd->add_option("--beta", m.beta, "log-normal jump sd");
    cmd->add_option("--eta1", m.eta1, "ADE upward rate (> 1)");
    cmd->add_option("--eta2", m.eta2, "ADE downward rate (> 0)");
    cmd->add_option("--p1", m.p1, "ADE upward probability");
    cmd->add_option("--p2", m.p2, "ADE downward probability");
    cmd->add_option("--rho", m.rho, "Laplacian jump location");
    cmd->add_option("--eta", m.eta, "Laplacian jump scale in (0,1)");
}

void add_option_flags(CLI::App* cmd, OptionOpts& o) {
    cmd->add_option("--K", o.strike, "exercise price per inventory");
    cmd->add_option("--theta", o.theta, "requested inventories");
    cmd->add_option("--c", o.ctr_buyer, "buyer CTR in (0,1]");
    cmd->add_option("--ctilde", o.ctr_market, "market CTR in (0,1]");
    cmd->add_option("--S", o.exercise_start, "exercise time, years");
    cmd->add_option("--T", o.expiry, "expiry, years");
    cmd->add_option("--m", o.m, "averaging steps over [S,T]");
    cmd->add_option("--gamma", o.gamma, "power-mean exponent, number or min/max");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"average-price advertising option pricing toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    ModelOpts model;
    OptionOpts option;

    // simulate
    long n_paths = 10;
    std::string measure = "risk_neutral";
    double mu = 0.1;
    CLI::App* sim = app.add_subcommand("simulate", "simulate spot price paths");
    add_model_flags(sim, model);
    add_option_flags(sim, option);
    sim->add_option("--paths", n_paths, "number of replications");
    sim->add_option("--measure", measure, "risk_neutral or real_world");
    sim->add_option("--mu", mu, "real-world drift (with --measure real_world)");

    // price
    long z = 100000;
    int k_max = 200;
    std::string method = "both";
    bool sensitivities = false;
    CLI::App* price = app.add_subcommand("price", "price an option");
    add_model_flags(price, model);
    add_option_flags(price, option);
    price->add_option("--z", z, "Monte Carlo replications");
    price->add_option("--kmax", k_max, "closed-form series cap");
    price->add_option("--method", method, "mc, closed_form or both");
    price->add_flag("--sensitivities", sensitivities, "emit signed parameter sensitivities");

    // calibrate
    std::string input;
    std::string detector = "auto";
    CLI::App* cal = app.add_subcommand("calibrate", "fit model parameters from a price CSV");
    cal->add_option("--input", input, "price CSV (timestamp,price)")->required();
    cal->add_option("--detector", detector, "auto, gc, pji, cobw, bv_lm or hampel");

    // facts
    std::string facts_input;
    CLI::App* facts = app.add_subcommand("facts", "stylized-fact battery on a price CSV");
    facts->add_option("--input", facts_input, "price CSV (timestamp,price)")->required();

    // backtest
    std::vector<std::string> bt_inputs;
    double train_fraction = 0.5;
    long bt_z = 20000;
    CLI::App* bt = app.add_subcommand("backtest", "seller revenue study over slot CSVs");
    bt->add_option("--input", bt_inputs, "price CSVs or directories of CSVs")->required();
    bt->add_option("--train-frac", train_fraction, "leading fraction used for calibration");
    bt->add_option("--z", bt_z, "Monte Carlo replications per contract");
    add_model_flags(bt, model);
    add_option_flags(bt, option);

    for (CLI::App* cmd : {sim, price, cal, facts, bt}) {
        cmd->add_option("--config", common.config_path, "JSON config file");
        cmd->add_option("--seed", common.seed, "RNG seed");
        cmd->add_option("--out-dir", common.out_dir, "report directory");
        cmd->add_option("--format", common.format, "json or csv");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        apply_config_file(*cmd, common.config_path);
        if (common.format != "json" && common.format != "csv")
            throw adopt::ConfigError("--format must be json or csv");
        if (cmd == sim) return cmd_simulate(common, model, option, n_paths, measure, mu);
        if (cmd == price)
            return cmd_price(common, model, option, z, k_max, method, sensitivities);
        if (cmd == cal) return cmd_calibrate(common, input, detector);
        if (cmd == facts) return cmd_facts(common, facts_input);
        return cmd_backtest(common, bt_inputs, train_fraction, model, option, bt_z);
    } catch (const adopt::ConfigError& e) {
        std::cerr << Json{{"error", {{"type", "config"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const adopt::DataError& e) {
        std::cerr << Json{{"error", {{"type", "data"}, {"message", e.what()}}}}.dump() << "\n";
        return 3;
    } catch (const adopt::NumericError& e) {
        std::cerr << Json{{"error", {{"type", "numerical"}, {"message", e.what()}}}}.dump() << "\n";
        return 4;
    }
}
