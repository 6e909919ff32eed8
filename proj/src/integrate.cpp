#include "qsde/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsde/dense.hpp"

namespace qsde {

namespace {

std::size_t steps_for(double total_time, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    if (total_time == 0.0) return 0;
    // dt is adjusted downward so that n_steps * dt_eff == total_time.
    const double raw = total_time / dt;
    auto n = static_cast<std::size_t>(std::ceil(raw * (1.0 - 1e-12)));
    return std::max<std::size_t>(n, 1);
}

kernels::PauliMasks masks_of(const PauliString& p) {
    return {p.mask_x(), p.mask_z(), p.base_phase()};
}

// Uniform grid refined with every piecewise-constant knot, so the dense
// midpoint propagators never integrate across a schedule discontinuity.
std::vector<double> dense_time_grid(const HamiltonianSchedule& h, double dt) {
    const double total = h.total_time();
    const std::size_t n_steps = steps_for(total, dt);
    std::vector<double> grid;
    grid.reserve(n_steps + 1);
    for (std::size_t j = 0; j <= n_steps; ++j)
        grid.push_back(total * static_cast<double>(j) / static_cast<double>(n_steps));
    for (const auto& term : h.terms()) {
        if (term.schedule.kind() != Schedule::Kind::PiecewiseConstant) continue;
        for (const auto& [t, v] : term.schedule.knots())
            if (t > 0.0 && t < total) grid.push_back(t);
    }
    std::sort(grid.begin(), grid.end());
    const double tol = 1e-12 * std::max(1.0, total);
    std::vector<double> unique;
    unique.reserve(grid.size());
    for (double t : grid)
        if (unique.empty() || t - unique.back() > tol) unique.push_back(t);
    unique.back() = total;
    return unique;
}

}  // namespace

TrajectoryConfig::TrajectoryConfig(HamiltonianSchedule hamiltonian_in, NoiseSpec noise_in,
                                   StateVector initial_state_in, double dt_in, Scheme scheme_in,
                                   bool renormalize)
    : hamiltonian(std::move(hamiltonian_in)),
      noise(std::move(noise_in)),
      initial_state(std::move(initial_state_in)),
      dt(dt_in),
      scheme(scheme_in),
      renormalize_each_step(renormalize) {
    if (initial_state.n_qubits() != hamiltonian.n_qubits())
        throw std::invalid_argument("TrajectoryConfig: initial state qubit-count mismatch");
    for (const auto& ch : noise.channels) {
        if (ch.op.n_qubits() != hamiltonian.n_qubits())
            throw std::invalid_argument("TrajectoryConfig: noise channel qubit-count mismatch");
        if (!ch.strength.covers(hamiltonian.total_time()))
            throw std::invalid_argument(
                "TrajectoryConfig: noise strength schedule does not cover [0, T]");
    }
    n_steps = steps_for(hamiltonian.total_time(), dt_in);
    if (n_steps > 0) dt = hamiltonian.total_time() / static_cast<double>(n_steps);
}

TrajectoryIntegrator::TrajectoryIntegrator(const TrajectoryConfig& cfg) : cfg_(cfg) {
    ham_.reserve(cfg_.hamiltonian.terms().size());
    for (const auto& term : cfg_.hamiltonian.terms()) ham_.push_back({masks_of(term.op)});
    noise_.reserve(cfg_.noise.channels.size());
    for (const auto& ch : cfg_.noise.channels) noise_.push_back({masks_of(ch.op)});

    // The step grid is fixed, so every schedule evaluation happens here once
    // instead of once per trajectory step.
    const bool splitting = cfg_.scheme == Scheme::StratonovichSplitting;
    stride_ = ham_.size() + noise_.size() + (splitting ? 0 : 1);
    step_coeffs_.resize(cfg_.n_steps * stride_);
    for (std::size_t j = 0; j < cfg_.n_steps; ++j) {
        const double t = static_cast<double>(j) * cfg_.dt;
        const double teval = splitting ? t + 0.5 * cfg_.dt : t;  // midpoint vs Ito left point
        double* row = step_coeffs_.data() + j * stride_;
        std::size_t idx = 0;
        for (const auto& term : cfg_.hamiltonian.terms())
            row[idx++] = term.op.coefficient() * term.schedule.value_at(teval) * cfg_.dt;
        double g2 = 0.0;
        for (const auto& ch : cfg_.noise.channels) {
            const double g = ch.strength.value_at(teval);
            row[idx++] = g;
            g2 += g * g;
        }
        if (!splitting) row[idx] = 1.0 - 0.5 * g2 * cfg_.dt;
    }
}

void TrajectoryIntegrator::split_step(std::span<kernels::cplx> s, const double* coeffs,
                                      std::span<const double> dW) const {
    // Ordered term splitting of exp(-i H(t_mid) dt); each factor is an exact
    // Pauli rotation, so the step is exactly unitary.
    for (std::size_t i = 0; i < ham_.size(); ++i)
        if (coeffs[i] != 0.0) kernels::apply_pauli_rotation(s, ham_[i].masks, coeffs[i]);
    for (std::size_t k = 0; k < noise_.size(); ++k) {
        const double angle = coeffs[ham_.size() + k] * dW[k];
        if (angle != 0.0) kernels::apply_pauli_rotation(s, noise_[k].masks, angle);
    }
}

void TrajectoryIntegrator::em_step(std::span<kernels::cplx> cur, std::span<kernels::cplx> next,
                                   const double* coeffs, std::span<const double> dW) const {
    // phi' = phi - i H(t) phi dt - i sum_k g_k(t) dW_k P_k phi
    //            - (1/2) sum_k g_k^2(t) phi dt       (Ito form)
    kernels::scale_copy(next, cur, coeffs[ham_.size() + noise_.size()]);
    for (std::size_t i = 0; i < ham_.size(); ++i)
        if (coeffs[i] != 0.0) kernels::accumulate_pauli_term(next, cur, ham_[i].masks, coeffs[i]);
    for (std::size_t k = 0; k < noise_.size(); ++k) {
        const double coeff = coeffs[ham_.size() + k] * dW[k];
        if (coeff != 0.0) kernels::accumulate_pauli_term(next, cur, noise_[k].masks, coeff);
    }
}

StateVector TrajectoryIntegrator::run(const BrownianPath& path) const {
    const auto K = static_cast<std::size_t>(cfg_.noise.size());
    if (path.channels != K || path.n_steps != cfg_.n_steps ||
        (cfg_.n_steps > 0 && std::abs(path.dt - cfg_.dt) > 1e-12 * std::max(1.0, cfg_.dt)))
        throw std::invalid_argument("TrajectoryIntegrator: path does not match the config grid");

    StateVector state = cfg_.initial_state;
    if (cfg_.n_steps == 0) return state;

    if (cfg_.scheme == Scheme::StratonovichSplitting) {
        for (std::size_t j = 0; j < cfg_.n_steps; ++j) {
            const std::span<const double> dW(path.increments.data() + j * K, K);
            split_step(state.amplitudes(), step_coeffs_.data() + j * stride_, dW);
        }
        return state;
    }

    StateVector scratch(state.n_qubits());
    auto* cur = &state;
    auto* next = &scratch;
    for (std::size_t j = 0; j < cfg_.n_steps; ++j) {
        const std::span<const double> dW(path.increments.data() + j * K, K);
        em_step(cur->amplitudes(), next->amplitudes(), step_coeffs_.data() + j * stride_, dW);
        if (cfg_.renormalize_each_step) next->normalize();
        std::swap(cur, next);
    }
    return *cur;
}

StateVector TrajectoryIntegrator::run(std::uint64_t path_seed) const {
    const auto path = BrownianPath::generate(path_seed, static_cast<std::size_t>(cfg_.noise.size()),
                                             cfg_.hamiltonian.total_time(), cfg_.dt);
    return run(path);
}

StateVector step_stratonovich_splitting(const StateVector& s, const HamiltonianSchedule& h,
                                        const NoiseSpec& noise, double t, double dt,
                                        const std::vector<double>& dW) {
    if (dW.size() != static_cast<std::size_t>(noise.size()))
        throw std::invalid_argument("step: dW size does not match channel count");
    StateVector out = s;
    const double tm = t + 0.5 * dt;
    for (const auto& term : h.terms()) {
        const double angle = term.op.coefficient() * term.schedule.value_at(tm) * dt;
        if (angle != 0.0)
            kernels::apply_pauli_rotation(out.amplitudes(), masks_of(term.op), angle);
    }
    for (std::size_t k = 0; k < dW.size(); ++k) {
        const auto& ch = noise.channels[k];
        const double angle = ch.strength.value_at(tm) * dW[k];
        if (angle != 0.0) kernels::apply_pauli_rotation(out.amplitudes(), masks_of(ch.op), angle);
    }
    return out;
}

StateVector step_ito_euler_maruyama(const StateVector& s, const HamiltonianSchedule& h,
                                    const NoiseSpec& noise, double t, double dt,
                                    const std::vector<double>& dW, bool renormalize) {
    if (dW.size() != static_cast<std::size_t>(noise.size()))
        throw std::invalid_argument("step: dW size does not match channel count");
    double g2 = 0.0;
    for (const auto& ch : noise.channels) {
        const double g = ch.strength.value_at(t);
        g2 += g * g;
    }
    StateVector out(s.n_qubits());
    kernels::scale_copy(out.amplitudes(), s.amplitudes(), 1.0 - 0.5 * g2 * dt);
    for (const auto& term : h.terms()) {
        const double coeff = term.op.coefficient() * term.schedule.value_at(t) * dt;
        if (coeff != 0.0)
            kernels::accumulate_pauli_term(out.amplitudes(), s.amplitudes(), masks_of(term.op),
                                           coeff);
    }
    for (std::size_t k = 0; k < dW.size(); ++k) {
        const auto& ch = noise.channels[k];
        const double coeff = ch.strength.value_at(t) * dW[k];
        if (coeff != 0.0)
            kernels::accumulate_pauli_term(out.amplitudes(), s.amplitudes(), masks_of(ch.op),
                                           coeff);
    }
    if (renormalize) out.normalize();
    return out;
}

StateVector evolve_trajectory(const TrajectoryConfig& cfg, std::uint64_t path_seed) {
    return TrajectoryIntegrator(cfg).run(path_seed);
}

StateVector evolve_noiseless_reference(const HamiltonianSchedule& h, const StateVector& s0,
                                       double dt) {
    if (s0.n_qubits() != h.n_qubits())
        throw std::invalid_argument("evolve_noiseless_reference: qubit-count mismatch");
    const std::size_t n_steps = steps_for(h.total_time(), dt);
    if (n_steps == 0) return s0;
    const double dt_eff = h.total_time() / static_cast<double>(n_steps);

    if (h.n_qubits() > dense::kMaxDenseQubits) {
        // Pauli-splitting fallback for large systems.
        TrajectoryConfig cfg(h, NoiseSpec{}, s0, dt_eff, Scheme::StratonovichSplitting);
        return TrajectoryIntegrator(cfg).run(BrownianPath::generate(0, 0, h.total_time(), dt_eff));
    }

    const auto grid = dense_time_grid(h, dt_eff);
    Eigen::VectorXcd psi = dense::to_eigen(s0);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        const double step = grid[j + 1] - grid[j];
        const double tm = grid[j] + 0.5 * step;
        const Eigen::MatrixXcd ham = dense::dense_operator(h.evaluate(tm), h.n_qubits());
        psi = dense::hermitian_propagator(ham, step) * psi;
    }
    return dense::from_eigen(h.n_qubits(), psi);
}

StateVector evolve_mean_state_oracle(const HamiltonianSchedule& h, const NoiseSpec& noise,
                                     const StateVector& s0, double dt) {
    if (h.n_qubits() > dense::kMaxDenseQubits)
        throw std::invalid_argument("evolve_mean_state_oracle: capped at 12 qubits");
    if (s0.n_qubits() != h.n_qubits())
        throw std::invalid_argument("evolve_mean_state_oracle: qubit-count mismatch");
    const std::size_t n_steps = steps_for(h.total_time(), dt);
    if (n_steps == 0) return s0;
    const double dt_eff = h.total_time() / static_cast<double>(n_steps);

    const auto grid = dense_time_grid(h, dt_eff);
    Eigen::VectorXcd psi = dense::to_eigen(s0);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        const double step = grid[j + 1] - grid[j];
        const double tm = grid[j] + 0.5 * step;
        const Eigen::MatrixXcd ham = dense::dense_operator(h.evaluate(tm), h.n_qubits());
        psi = dense::hermitian_propagator(ham, step) * psi;
        // The anti-Hermitian part is a scalar, so its contribution over the
        // step is the exact decay exp(-Integral (1/2) sum g^2).
        double seg = 0.0;
        for (const auto& ch : noise.channels)
            seg += ch.strength.integral_square(grid[j], grid[j + 1]);
        psi *= std::exp(-0.5 * seg);
    }
    return dense::from_eigen(h.n_qubits(), psi);
}

ReferenceSolution solve_reference(const HamiltonianSchedule& h, const StateVector& s0, double dt,
                                  std::uint64_t target_index) {
    ReferenceSolution sol{evolve_noiseless_reference(h, s0, dt), target_index, {}, 0.0, {1.0, 0.0}};
    sol.c_m = sol.psi_final.amplitude(target_index);
    const double mag = std::abs(sol.c_m);
    if (mag < 1e-12)
        throw std::runtime_error(
            "solve_reference: target amplitude vanishes; no phase convention exists");
    sol.epsilon = 1.0 - mag;
    sol.phase_u = std::conj(sol.c_m) / mag;
    return sol;
}

}  // namespace qsde
