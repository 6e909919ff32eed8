#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsde/brownian.hpp"
#include "qsde/hamiltonian.hpp"
#include "qsde/kernels.hpp"
#include "qsde/noise.hpp"
#include "qsde/state.hpp"

namespace qsde {

enum class Scheme {
    StratonovichSplitting,  // exact unitary Pauli rotations, midpoint coefficients
    ItoEulerMaruyama,       // explicit step with the -(1/2) sum g^2 dt drift
};

struct TrajectoryConfig {
    TrajectoryConfig(HamiltonianSchedule hamiltonian, NoiseSpec noise, StateVector initial_state,
                     double dt, Scheme scheme = Scheme::StratonovichSplitting,
                     bool renormalize_each_step = false);

    HamiltonianSchedule hamiltonian;
    NoiseSpec noise;
    StateVector initial_state;
    double dt;        // adjusted downward so n_steps * dt == total_time exactly
    Scheme scheme;
    bool renormalize_each_step;  // only meaningful for Euler-Maruyama

    std::size_t n_steps;
    double total_time() const { return hamiltonian.total_time(); }
};

// Single steps, exposed for unit tests. dW has one entry per noise channel.
StateVector step_stratonovich_splitting(const StateVector& s, const HamiltonianSchedule& h,
                                        const NoiseSpec& noise, double t, double dt,
                                        const std::vector<double>& dW);
StateVector step_ito_euler_maruyama(const StateVector& s, const HamiltonianSchedule& h,
                                    const NoiseSpec& noise, double t, double dt,
                                    const std::vector<double>& dW, bool renormalize);

// Precompiled bit-mask form of one model; reusable across trajectories.
class TrajectoryIntegrator {
public:
    explicit TrajectoryIntegrator(const TrajectoryConfig& cfg);

    // Deterministic given the path; the path must match (channels, n_steps, dt).
    StateVector run(const BrownianPath& path) const;

    // Path drawn from the stream named by path_seed.
    StateVector run(std::uint64_t path_seed) const;

    const TrajectoryConfig& config() const { return cfg_; }

private:
    struct CompiledOp {
        kernels::PauliMasks masks;
    };

    void split_step(std::span<kernels::cplx> s, const double* coeffs,
                    std::span<const double> dW) const;
    void em_step(std::span<kernels::cplx> cur, std::span<kernels::cplx> next, const double* coeffs,
                 std::span<const double> dW) const;

    TrajectoryConfig cfg_;
    std::vector<CompiledOp> ham_;
    std::vector<CompiledOp> noise_;
    // Schedule values for every step, evaluated once at construction:
    // splitting: Hamiltonian rotation angles (coeff * sched(t_mid) * dt)
    // followed by channel strengths g_k(t_mid); Euler-Maruyama additionally
    // stores the drift factor 1 - (1/2) sum g^2 dt per step.
    std::vector<double> step_coeffs_;
    std::size_t stride_ = 0;
};

StateVector evolve_trajectory(const TrajectoryConfig& cfg, std::uint64_t path_seed);

// Noiseless solver: per-step dense exponential of H(t + dt/2) for
// n <= 12 (the oracle of record), Pauli-splitting beyond that.
StateVector evolve_noiseless_reference(const HamiltonianSchedule& h, const StateVector& s0,
                                       double dt);

// Integrates i d/dt E[phi] = (H(t) - (i/2) sum_k g_k^2(t)) E[phi]. The scalar
// decay per step uses the exact segment integral of sum g^2, so multiplying
// the result by e^Gamma reproduces the noiseless reference to roundoff.
// n <= 12.
StateVector evolve_mean_state_oracle(const HamiltonianSchedule& h, const NoiseSpec& noise,
                                     const StateVector& s0, double dt);

// Noiseless final state plus the target bookkeeping the threshold pipeline
// needs: C_m, epsilon = 1 - |C_m|, and the phase u = conj(C_m)/|C_m| that
// rotates C_m onto the positive real axis.
struct ReferenceSolution {
    StateVector psi_final;
    std::uint64_t target_index = 0;
    std::complex<double> c_m;
    double epsilon = 0.0;
    std::complex<double> phase_u{1.0, 0.0};
};

ReferenceSolution solve_reference(const HamiltonianSchedule& h, const StateVector& s0, double dt,
                                  std::uint64_t target_index);

}  // namespace qsde
