// Throughput benchmark: serial reference vs OpenMP kernels for path
// simulation and Monte Carlo pricing.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>

#include "adopt/pricing.hpp"
#include "adopt/simulate.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    long z = argc > 1 ? std::atol(argv[1]) : 50000;
    const auto params =
        adopt::JumpDiffusionParams::risk_neutral(0.1, 0.2, 2.0, adopt::LogNormalJumps{0.1, 0.2});
    adopt::OptionSpec spec;
    spec.strike = 100.0;
    spec.exercise_start = 0.0;
    spec.expiry = 1.0;
    spec.averaging_steps = 500;
    spec.gamma = adopt::Gamma::finite(0.0);

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("mc_price: z=%ld paths, %ld steps each, %d thread(s)\n", z,
                adopt::build_time_grid(spec).steps(), threads);

    auto t0 = Clock::now();
    const auto serial =
        adopt::mc_price(100.0, params, spec, z, adopt::RngSpec{7, 0}, adopt::ExecMode::serial);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    const auto parallel =
        adopt::mc_price(100.0, params, spec, z, adopt::RngSpec{7, 0}, adopt::ExecMode::parallel);
    const double t_parallel = seconds_since(t0);

    const double steps = static_cast<double>(z) * 500.0;
    std::printf("serial:   %8.3f s  (%.1f Msteps/s)  pi0=%.6f\n", t_serial,
                steps / t_serial / 1e6, serial.pi0);
    std::printf("parallel: %8.3f s  (%.1f Msteps/s)  pi0=%.6f\n", t_parallel,
                steps / t_parallel / 1e6, parallel.pi0);
    std::printf("speedup:  %8.2fx  bit-identical: %s\n", t_serial / t_parallel,
                serial.pi0 == parallel.pi0 && serial.std_error == parallel.std_error ? "yes"
                                                                                     : "NO");
    return 0;
}
