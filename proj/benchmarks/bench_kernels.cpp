// Serial-vs-OpenMP throughput for the amplitude kernels and full trajectory
// ensembles. Usage: qsde_bench [max_qubits]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qsde/ensemble.hpp"
#include "qsde/integrate.hpp"
#include "qsde/kernels.hpp"
#include "qsde/models.hpp"
#include "qsde/rng.hpp"

using namespace qsde;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<kernels::cplx> random_state(int n_qubits, std::uint64_t seed) {
    RngStream rng(seed, 0, 0);
    std::vector<kernels::cplx> amps(std::size_t{1} << n_qubits);
    for (auto& a : amps) a = {rng.normal(), rng.normal()};
    return amps;
}

void bench_rotation(int max_qubits) {
    std::printf("%-8s %-10s %12s %12s %8s\n", "kernel", "qubits", "serial[us]", "openmp[us]",
                "speedup");
    for (int n = 10; n <= max_qubits; n += 2) {
        auto amps = random_state(n, 7);
        kernels::PauliMasks masks{0x5u, 0x3u, {1.0, 0.0}};
        const int reps = std::max(1, 1 << (22 - n));

        auto t0 = clock_type::now();
        for (int i = 0; i < reps; ++i)
            kernels::serial::apply_pauli_rotation(amps, masks, 1e-3);
        const double serial_us = seconds_since(t0) / reps * 1e6;

        t0 = clock_type::now();
        for (int i = 0; i < reps; ++i) kernels::apply_pauli_rotation(amps, masks, 1e-3);
        const double omp_us = seconds_since(t0) / reps * 1e6;

        std::printf("%-8s %-10d %12.2f %12.2f %8.2f\n", "rot", n, serial_us, omp_us,
                    serial_us / omp_us);
    }
}

void bench_ensemble() {
    // Anneal with per-qubit dephasing; trajectory-level parallelism.
    const int n = 4;
    auto problem = AnnealingProblem::linear(n, {{0, 1, -1.0}, {1, 2, -1.0}, {2, 3, -1.0}},
                                            std::vector<double>(n, 0.0), 1.0);
    TrajectoryConfig cfg(build_tfim_anneal(problem), per_qubit_noise(n, 'Z', Schedule::constant(0.2)),
                         StateVector::uniform_plus(n), 1e-3);
    const std::uint64_t r = 2000;

    std::printf("\n%-12s %8s %12s %14s\n", "ensemble", "threads", "time[s]", "traj/s");
    for (int threads : {1, omp_get_max_threads()}) {
        omp_set_num_threads(threads);
        const auto t0 = clock_type::now();
        const auto result = run_ensemble(cfg, 0, r, 42);
        const double dt = seconds_since(t0);
        std::printf("%-12s %8d %12.3f %14.0f   (mean_re %.6f)\n", "tfim-4q", threads, dt,
                    static_cast<double>(r) / dt,
                    result.stats.mean_target_amplitude().real());
    }
}

}  // namespace

int main(int argc, char** argv) {
    const int max_qubits = argc > 1 ? std::atoi(argv[1]) : 18;
    bench_rotation(max_qubits);
    bench_ensemble();
    return 0;
}
