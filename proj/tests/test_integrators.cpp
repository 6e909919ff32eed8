#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qsde/dense.hpp"
#include "qsde/integrate.hpp"
#include "qsde/models.hpp"
#include "test_util.hpp"

using namespace qsde;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

namespace {

HamiltonianSchedule zero_hamiltonian(int n_qubits, double total_time) {
    return HamiltonianSchedule(n_qubits, {}, total_time);
}

NoiseSpec single_channel(const char* letters, double g) {
    NoiseSpec spec;
    spec.channels.emplace_back(PauliString(letters), Schedule::constant(g));
    return spec;
}

HamiltonianSchedule two_qubit_anneal(double total_time) {
    return build_tfim_anneal(
        AnnealingProblem::linear(2, {{0, 1, -1.0}}, {0.0, 0.0}, total_time));
}

}  // namespace

TEST_CASE("splitting step: identity when H = 0 and g = 0") {
    const auto s = test::random_state(2, 17);
    const auto out = step_stratonovich_splitting(s, zero_hamiltonian(2, 1.0),
                                                 single_channel("ZI", 0.0), 0.0, 0.01, {0.5});
    CHECK(test::max_amplitude_delta(out, s) < 1e-15);
}

TEST_CASE("splitting step: eigenstate phase kick") {
    const double g = 0.7, dW = 0.3;
    const auto out =
        step_stratonovich_splitting(StateVector::basis_state(1, 0), zero_hamiltonian(1, 1.0),
                                    single_channel("Z", g), 0.0, 0.01, {dW});
    CHECK(std::abs(out.amplitude(0) - std::exp(-I * (g * dW))) < 1e-14);
    CHECK(std::abs(out.amplitude(1)) < 1e-15);
}

TEST_CASE("splitting step on |+> matches the dense 2x2 rotation") {
    const double g = 0.9, dW = -0.4;
    const auto out =
        step_stratonovich_splitting(StateVector::uniform_plus(1), zero_hamiltonian(1, 1.0),
                                    single_channel("Z", g), 0.0, 0.01, {dW});
    // cos(g dW)|+> - i sin(g dW)|->, i.e. amplitudes e^{-+ i g dW}/sqrt(2).
    const double theta = g * dW;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude(0) - std::exp(-I * theta) * inv_sqrt2) < 1e-14);
    CHECK(std::abs(out.amplitude(1) - std::exp(I * theta) * inv_sqrt2) < 1e-14);
    CHECK(std::abs(out.norm() - 1.0) < 1e-15);
}

TEST_CASE("euler-maruyama step: reduces to explicit Euler at g = 0") {
    const auto h = two_qubit_anneal(1.0);
    const auto s = test::random_state(2, 23);
    const double dt = 0.01, t = 0.37;
    const auto out = step_ito_euler_maruyama(s, h, NoiseSpec{}, t, dt, {}, false);

    // Manual explicit Euler: s - i H(t) s dt.
    const auto hmat = dense::dense_operator(h.evaluate(t), 2);
    const Eigen::VectorXcd expected =
        dense::to_eigen(s) - I * dt * (hmat * dense::to_eigen(s));
    CHECK(test::max_amplitude_delta(out, dense::from_eigen(2, expected)) < 1e-14);
}

TEST_CASE("euler-maruyama step: hand-computed dephasing step") {
    // H = 0, one Z channel, |0>, dt = 0.01, g = 1, dW = 0.1:
    // amplitude (1 - 0.005 - 0.1 i), squared norm 0.995^2 + 0.01.
    const auto out =
        step_ito_euler_maruyama(StateVector::basis_state(1, 0), zero_hamiltonian(1, 1.0),
                                single_channel("Z", 1.0), 0.0, 0.01, {0.1}, false);
    CHECK(std::abs(out.amplitude(0) - cplx(0.995, -0.1)) < 1e-15);
    CHECK(std::abs(out.amplitude(1)) < 1e-15);
    CHECK(out.norm_sq() == doctest::Approx(0.995 * 0.995 + 0.01).epsilon(1e-14));

    const auto renorm =
        step_ito_euler_maruyama(StateVector::basis_state(1, 0), zero_hamiltonian(1, 1.0),
                                single_channel("Z", 1.0), 0.0, 0.01, {0.1}, true);
    CHECK(renorm.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const cplx direction = out.amplitude(0) / std::abs(out.amplitude(0));
    CHECK(std::abs(renorm.amplitude(0) - direction) < 1e-14);
}

TEST_CASE("dt is adjusted downward to divide the total time") {
    TrajectoryConfig cfg(zero_hamiltonian(1, 1.0), NoiseSpec{}, StateVector::uniform_plus(1),
                         0.3);
    CHECK(cfg.n_steps == 4);
    CHECK(cfg.dt == doctest::Approx(0.25));
    CHECK(cfg.dt <= 0.3);

    TrajectoryConfig exact(zero_hamiltonian(1, 1.0), NoiseSpec{}, StateVector::uniform_plus(1),
                           1e-3);
    CHECK(exact.n_steps == 1000);
    CHECK_THROWS_AS(TrajectoryConfig(zero_hamiltonian(1, 1.0), NoiseSpec{},
                                     StateVector::uniform_plus(1), 0.0),
                    std::invalid_argument);
}

TEST_CASE("noiseless reference falls back to splitting beyond the dense cap") {
    const int n = 13;  // dense path is capped at 12
    const double T = std::numbers::pi / 2;
    const auto h =
        HamiltonianSchedule(n, {{PauliString::single(n, 0, 'X'), Schedule::constant(1.0)}}, T);
    const auto psi = evolve_noiseless_reference(h, StateVector::basis_state(n, 0), T / 200);
    CHECK(std::abs(psi.amplitude(1) - (-I)) < 1e-9);
    CHECK(std::abs(psi.amplitude(0)) < 1e-9);
}

TEST_CASE("trajectory with T = 0 returns the initial state") {
    const auto s0 = test::random_state(1, 3);
    TrajectoryConfig cfg(zero_hamiltonian(1, 0.0), NoiseSpec{}, s0, 1e-3);
    CHECK(test::max_amplitude_delta(evolve_trajectory(cfg, 5), s0) == 0.0);
}

TEST_CASE("trajectories are deterministic in (config, seed)") {
    TrajectoryConfig cfg(two_qubit_anneal(1.0), single_channel("ZI", 0.3),
                         StateVector::uniform_plus(2), 1e-2);
    const auto a = evolve_trajectory(cfg, 9);
    const auto b = evolve_trajectory(cfg, 9);
    CHECK(test::max_amplitude_delta(a, b) == 0.0);
    const auto c = evolve_trajectory(cfg, 10);
    CHECK(test::max_amplitude_delta(a, c) > 1e-6);
}

TEST_CASE("integrator matches a manual loop over single steps") {
    TrajectoryConfig cfg(two_qubit_anneal(0.5), single_channel("IZ", 0.4),
                         StateVector::uniform_plus(2), 0.05);
    const auto path = BrownianPath::generate(77, 1, 0.5, cfg.dt);
    const auto fast = TrajectoryIntegrator(cfg).run(path);

    StateVector slow = cfg.initial_state;
    for (std::size_t j = 0; j < cfg.n_steps; ++j) {
        const double dW = path.increment(j, 0);
        slow = step_stratonovich_splitting(slow, cfg.hamiltonian, cfg.noise,
                                           static_cast<double>(j) * cfg.dt, cfg.dt, {dW});
    }
    CHECK(test::max_amplitude_delta(fast, slow) < 1e-14);
}

TEST_CASE("zero-noise trajectory reproduces the dense reference") {
    const auto h = two_qubit_anneal(1.0);
    const auto s0 = StateVector::uniform_plus(2);
    TrajectoryConfig cfg(h, NoiseSpec{}, s0, 1e-3);
    const auto split = evolve_trajectory(cfg, 1);
    const auto reference = evolve_noiseless_reference(h, s0, 1e-3);
    CHECK(fidelity(split, reference) > 1.0 - 1e-6);

    TrajectoryConfig em_cfg(h, NoiseSpec{}, s0, 1e-3, Scheme::ItoEulerMaruyama);
    const auto em = evolve_trajectory(em_cfg, 1);
    CHECK(fidelity(em, reference) / em.norm_sq() > 1.0 - 1e-4);
}

TEST_CASE("dephasing trajectory follows cos(2 g W) exactly") {
    const double g = 0.6, T = 1.0;
    TrajectoryConfig cfg(zero_hamiltonian(1, T), single_channel("Z", g),
                         StateVector::uniform_plus(1), 1e-2);
    const auto path = BrownianPath::generate(31, 1, T, cfg.dt);
    const auto state = TrajectoryIntegrator(cfg).run(path);
    const double w = path.total(0);
    const double sx = expectation_value(PauliString("X"), state).real();
    CHECK(sx == doctest::Approx(std::cos(2.0 * g * w)).epsilon(1e-10));
}

TEST_CASE("noiseless reference: H = 0 and the Rabi closed form") {
    const auto s0 = test::random_state(2, 8);
    CHECK(test::max_amplitude_delta(evolve_noiseless_reference(zero_hamiltonian(2, 1.0), s0, 0.1),
                                    s0) < 1e-12);

    const double T = 1.3;
    const auto rabi = HamiltonianSchedule(1, {{PauliString("X"), Schedule::constant(1.0)}}, T);
    const auto psi = evolve_noiseless_reference(rabi, StateVector::basis_state(1, 0), 1e-4);
    CHECK(std::abs(psi.amplitude(0) - std::cos(T)) < 1e-8);
    CHECK(std::abs(psi.amplitude(1) - (-I * std::sin(T))) < 1e-8);
}

TEST_CASE("midpoint solver vs single dense exponential for constant H") {
    RngStream rng(41, 0, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 3;
        std::vector<HamiltonianTerm> terms;
        for (int k = 0; k < 4; ++k)
            terms.push_back({test::random_pauli(n, rng), Schedule::constant(rng.normal())});
        const double T = 1.0;
        const HamiltonianSchedule h(n, terms, T);
        const auto s0 = test::random_state(n, 900 + static_cast<std::uint64_t>(rep));

        const auto stepped = evolve_noiseless_reference(h, s0, 1e-4);

        const auto hmat = dense::dense_operator(h.evaluate(0.0), n);
        const Eigen::VectorXcd direct = dense::hermitian_propagator(hmat, T) * dense::to_eigen(s0);
        CHECK(fidelity(stepped, dense::from_eigen(n, direct)) > 1.0 - 1e-8);
    }
}

TEST_CASE("mean-state oracle: reductions and the scalar decay law") {
    const auto h = two_qubit_anneal(1.0);
    const auto s0 = StateVector::uniform_plus(2);
    CHECK(test::max_amplitude_delta(evolve_mean_state_oracle(h, NoiseSpec{}, s0, 1e-3),
                                    evolve_noiseless_reference(h, s0, 1e-3)) < 1e-14);

    // H = 0, constant g: decay e^{-g^2 T / 2} with no rotation.
    const double g = 0.8, T = 1.5;
    const auto decayed = evolve_mean_state_oracle(zero_hamiltonian(1, T), single_channel("Z", g),
                                                  StateVector::uniform_plus(1), 1e-3);
    const double factor = std::exp(-g * g * T / 2.0);
    CHECK(std::abs(decayed.amplitude(0) - factor / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(decayed.amplitude(1) - factor / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("rescaling relation on the two-qubit anneal") {
    const double T = 2.0, g = 0.2;
    const auto h = two_qubit_anneal(T);
    const auto noise = per_qubit_noise(2, 'Z', Schedule::constant(g));
    const auto s0 = StateVector::uniform_plus(2);

    const double gamma = gamma_integral(noise, T);
    CHECK(gamma == doctest::Approx(0.08).epsilon(1e-12));

    const auto mean_state = evolve_mean_state_oracle(h, noise, s0, 1e-3);
    const auto psi = evolve_noiseless_reference(h, s0, 1e-3);
    CHECK(std::abs(mean_state.norm() - std::exp(-gamma)) < 1e-10);

    double max_delta = 0.0;
    for (std::uint64_t j = 0; j < psi.dim(); ++j)
        max_delta = std::max(max_delta, std::abs(std::exp(gamma) * mean_state.amplitude(j) -
                                                 psi.amplitude(j)));
    CHECK(max_delta < 1e-8);
}

TEST_CASE("splitting keeps the norm within 1e-9 over 1e4 steps") {
    RngStream rng(51, 0, 0);
    for (int rep = 0; rep < 4; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        std::vector<HamiltonianTerm> terms;
        for (int k = 0; k < 3; ++k)
            terms.push_back({test::random_pauli(n, rng), Schedule::constant(rng.normal())});
        const HamiltonianSchedule h(n, terms, 1.0);
        NoiseSpec noise;
        noise.channels.emplace_back(test::random_pauli(n, rng), Schedule::constant(0.5));
        TrajectoryConfig cfg(h, noise, test::random_state(n, 60 + static_cast<std::uint64_t>(rep)),
                             1e-4);
        REQUIRE(cfg.n_steps == 10000);
        const auto out = evolve_trajectory(cfg, static_cast<std::uint64_t>(rep));
        CHECK(std::abs(out.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("euler-maruyama global error on the Rabi model is O(dt)") {
    const double T = 1.0;
    const auto rabi = HamiltonianSchedule(1, {{PauliString("X"), Schedule::constant(1.0)}}, T);
    const auto s0 = StateVector::basis_state(1, 0);
    const auto exact = evolve_noiseless_reference(rabi, s0, 1e-5);

    auto em_error = [&](double dt) {
        TrajectoryConfig cfg(rabi, NoiseSpec{}, s0, dt, Scheme::ItoEulerMaruyama);
        return test::max_amplitude_delta(evolve_trajectory(cfg, 0), exact);
    };
    const double e1 = em_error(1e-3);
    const double e2 = em_error(5e-4);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));

    // Single-term splitting is the exact propagator for constant H.
    TrajectoryConfig split_cfg(rabi, NoiseSpec{}, s0, 1e-3);
    CHECK(test::max_amplitude_delta(evolve_trajectory(split_cfg, 0), exact) < 1e-9);
}

TEST_CASE("weak agreement between the two schemes on the dephasing model") {
    const double g = 0.5, T = 1.0, dt = 1e-3;
    const auto h = zero_hamiltonian(1, T);
    const auto noise = single_channel("Z", g);
    TrajectoryConfig split_cfg(h, noise, StateVector::uniform_plus(1), dt);
    TrajectoryConfig em_cfg(h, noise, StateVector::uniform_plus(1), dt,
                            Scheme::ItoEulerMaruyama);
    const TrajectoryIntegrator split(split_cfg), em(em_cfg);

    const int r = 2000;
    cplx sum_split = 0.0, sum_em = 0.0;
    double sum_re2_split = 0.0;
    for (int i = 0; i < r; ++i) {
        const auto path =
            BrownianPath::generate(derive_seed(7, {static_cast<std::uint64_t>(i)}), 1, T, dt);
        const cplx cs = split.run(path).amplitude(0);
        sum_split += cs;
        sum_re2_split += cs.real() * cs.real();
        sum_em += em.run(path).amplitude(0);
    }
    const cplx mean_split = sum_split / static_cast<double>(r);
    const cplx mean_em = sum_em / static_cast<double>(r);

    // Both estimate E C_0 = e^{-g^2 T / 2} / sqrt(2).
    const double expected = std::exp(-g * g * T / 2.0) / std::sqrt(2.0);
    const double var_re = sum_re2_split / r - mean_split.real() * mean_split.real();
    const double se = std::sqrt(var_re / r);
    CHECK(std::abs(mean_split.real() - expected) < 4.0 * se);
    CHECK(std::abs(mean_em.real() - expected) < 4.0 * se + 1e-3);
    CHECK(std::abs(mean_split - mean_em) < 8.0 * se + 1e-3);
}

TEST_CASE("ensemble mean of <X> under dephasing decays as e^{-2 g^2 T}") {
    const double g = 0.5, T = 1.0;
    TrajectoryConfig cfg(zero_hamiltonian(1, T), single_channel("Z", g),
                         StateVector::uniform_plus(1), 1e-3);
    const TrajectoryIntegrator integrator(cfg);
    const PauliString sx("X");

    const int r = 20000;
    double sum = 0.0, sum2 = 0.0;
#pragma omp parallel for reduction(+ : sum, sum2)
    for (int i = 0; i < r; ++i) {
        const auto state =
            integrator.run(derive_seed(13, {static_cast<std::uint64_t>(i)}));
        const double v = expectation_value(sx, state).real();
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / r;
    const double se = std::sqrt((sum2 / r - mean * mean) / r);
    CHECK(std::abs(mean - std::exp(-2.0 * g * g * T)) < 3.0 * se);
}
