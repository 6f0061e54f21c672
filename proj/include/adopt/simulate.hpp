#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "adopt/core.hpp"
#include "adopt/rng.hpp"

namespace adopt {

// Chooses between the OpenMP kernels and the serial reference implementation.
// Both produce bit-identical results; the serial path exists for testing and
// as a baseline in the benchmark.
enum class ExecMode : std::uint8_t { serial, parallel };

struct SimulatedPath {
    double x0 = 0.0;
    TimeGrid grid;
    std::vector<double> log_prices;       // ln X at steps 1 .. m_tilde+m
    std::vector<std::uint32_t> jump_steps; // 1-based steps where a jump fired

    double price(long step) const;  // X at step i (1-based)
    double terminal_price() const;
};

// One exact step of the discretized jump-diffusion in log space:
//   ln X_i = ln X_{i-1} + N(log_drift*dt, sigma^2 dt) + Ber(lambda*dt) * V.
// The Bernoulli jump indicator requires lambda*dt < 1.
class JumpDiffusionStepper {
public:
    JumpDiffusionStepper(const JumpDiffusionParams& params, double dt);

    double step(double log_x, Rng& rng, bool& jumped) const {
        jumped = false;
        double incr = drift_dt_ + sigma_sqdt_ * rng.next_normal();
        if (jump_prob_ > 0.0 && rng.next_unit() < jump_prob_) {
            incr += sample_jump(rng);
            jumped = true;
        }
        return log_x + incr;
    }

    double jump_probability() const { return jump_prob_; }

private:
    double sample_jump(Rng& rng) const;

    double drift_dt_;
    double sigma_sqdt_;
    double jump_prob_;
    const JumpSizeDistribution* jumps_;
};

// Simulates one path on the grid. Replications are reproducible: the path is
// a pure function of (x0, params, grid, rng spec).
SimulatedPath simulate_path(double x0, const JumpDiffusionParams& params,
                            const TimeGrid& grid, RngSpec rng);

// Simulates n_paths replications; path j (1-based) uses stream_id =
// base_rng.stream_id + j, so the result is independent of thread count.
std::vector<SimulatedPath> simulate_paths(double x0, const JumpDiffusionParams& params,
                                          const TimeGrid& grid, long n_paths,
                                          RngSpec base_rng,
                                          ExecMode mode = ExecMode::parallel);

// Hot kernel shared with the Monte Carlo pricer: runs one replication and
// writes the m averaging-window log prices into window_logs (size grid.m).
void simulate_window_logs(double log_x0, const JumpDiffusionStepper& stepper,
                          const TimeGrid& grid, RngSpec rng,
                          std::span<double> window_logs);

// CSV dump with columns replication,step,time,price.
void write_paths_csv(std::ostream& out, std::span<const SimulatedPath> paths);

}  // namespace adopt
