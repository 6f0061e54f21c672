#include "adopt/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace adopt {

double SimulatedPath::price(long step) const {
    return std::exp(log_prices.at(static_cast<std::size_t>(step - 1)));
}

double SimulatedPath::terminal_price() const {
    return std::exp(log_prices.back());
}

JumpDiffusionStepper::JumpDiffusionStepper(const JumpDiffusionParams& params, double dt)
    : drift_dt_(params.log_drift() * dt),
      sigma_sqdt_(params.sigma * std::sqrt(dt)),
      jump_prob_(params.lambda * dt),
      jumps_(&params.jumps) {
    params.validate();
    if (!(dt > 0.0)) throw ConfigError("time step must be > 0");
    if (jump_prob_ >= 1.0) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "lambda*dt = %g >= 1: the Bernoulli jump indicator is invalid; refine the grid",
                      jump_prob_);
        throw ConfigError(buf);
    }
}

double JumpDiffusionStepper::sample_jump(Rng& rng) const {
    struct Visitor {
        Rng& rng;
        double operator()(const LogNormalJumps& d) const {
            return d.alpha + d.beta * rng.next_normal();
        }
        double operator()(const LogAdeJumps& d) const {
            // Sign-mixture of exponentials: +Exp(eta1) w.p. p1, -Exp(eta2) otherwise.
            if (rng.next_unit() < d.p1) return rng.next_exponential(d.eta1);
            return -rng.next_exponential(d.eta2);
        }
        double operator()(const LogLaplacianJumps& d) const {
            return rng.next_laplace(d.rho, d.eta);
        }
    };
    return std::visit(Visitor{rng}, *jumps_);
}

SimulatedPath simulate_path(double x0, const JumpDiffusionParams& params,
                            const TimeGrid& grid, RngSpec rng_spec) {
    if (!(x0 > 0.0)) throw ConfigError("initial price x0 must be > 0");
    const JumpDiffusionStepper stepper(params, grid.dt);
    Rng rng(rng_spec);

    SimulatedPath path;
    path.x0 = x0;
    path.grid = grid;
    path.log_prices.resize(static_cast<std::size_t>(grid.steps()));
    double log_x = std::log(x0);
    for (long i = 1; i <= grid.steps(); ++i) {
        bool jumped = false;
        log_x = stepper.step(log_x, rng, jumped);
        path.log_prices[static_cast<std::size_t>(i - 1)] = log_x;
        if (jumped) path.jump_steps.push_back(static_cast<std::uint32_t>(i));
    }
    return path;
}

std::vector<SimulatedPath> simulate_paths(double x0, const JumpDiffusionParams& params,
                                          const TimeGrid& grid, long n_paths,
                                          RngSpec base_rng, ExecMode mode) {
    if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
    // Validate once up front so a bad configuration does not throw from
    // inside the parallel region.
    (void)JumpDiffusionStepper(params, grid.dt);

    std::vector<SimulatedPath> paths(static_cast<std::size_t>(n_paths));
    if (mode == ExecMode::serial) {
        for (long j = 1; j <= n_paths; ++j)
            paths[static_cast<std::size_t>(j - 1)] =
                simulate_path(x0, params, grid, RngSpec{base_rng.seed, base_rng.stream_id + static_cast<std::uint64_t>(j)});
        return paths;
    }
#pragma omp parallel for schedule(static)
    for (long j = 1; j <= n_paths; ++j)
        paths[static_cast<std::size_t>(j - 1)] =
            simulate_path(x0, params, grid, RngSpec{base_rng.seed, base_rng.stream_id + static_cast<std::uint64_t>(j)});
    return paths;
}

void simulate_window_logs(double log_x0, const JumpDiffusionStepper& stepper,
                          const TimeGrid& grid, RngSpec rng_spec,
                          std::span<double> window_logs) {
    Rng rng(rng_spec);
    bool jumped = false;
    double log_x = log_x0;
    for (long i = 0; i < grid.m_tilde; ++i) log_x = stepper.step(log_x, rng, jumped);
    for (long i = 0; i < grid.m; ++i) {
        log_x = stepper.step(log_x, rng, jumped);
        window_logs[static_cast<std::size_t>(i)] = log_x;
    }
}

void write_paths_csv(std::ostream& out, std::span<const SimulatedPath> paths) {
    out << "replication,step,time,price\n";
    char buf[96];
    for (std::size_t j = 0; j < paths.size(); ++j) {
        const SimulatedPath& p = paths[j];
        for (long i = 1; i <= p.grid.steps(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%ld,%.12g,%.17g\n", j + 1, i,
                          p.grid.time(i), p.price(i));
            out << buf;
        }
    }
}

}  // namespace adopt
