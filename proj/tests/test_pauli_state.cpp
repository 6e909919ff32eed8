#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsde/dense.hpp"
#include "qsde/state.hpp"
#include "test_util.hpp"

using namespace qsde;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

TEST_CASE("basis_state places a single unit amplitude") {
    const auto s = StateVector::basis_state(1, 0);
    CHECK(s.amplitude(0) == cplx{1.0, 0.0});
    CHECK(s.amplitude(1) == cplx{0.0, 0.0});

    const auto t = StateVector::basis_state(2, 3);
    for (std::uint64_t j = 0; j < 3; ++j) CHECK(t.amplitude(j) == cplx{0.0, 0.0});
    CHECK(t.amplitude(3) == cplx{1.0, 0.0});

    CHECK_THROWS_WITH_AS(StateVector::basis_state(1, 2),
                         doctest::Contains("out of range"), std::out_of_range);
}

TEST_CASE("single-qubit Pauli actions") {
    const auto zero = StateVector::basis_state(1, 0);

    const auto x_zero = apply_pauli_string(PauliString("X"), zero);
    CHECK(std::abs(x_zero.amplitude(1) - 1.0) < 1e-15);
    CHECK(std::abs(x_zero.amplitude(0)) < 1e-15);

    const auto plus = StateVector::uniform_plus(1);
    const auto z_plus = apply_pauli_string(PauliString("Z"), plus);
    CHECK(std::abs(z_plus.amplitude(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(z_plus.amplitude(1) + 1.0 / std::sqrt(2.0)) < 1e-15);

    const auto y_zero = apply_pauli_string(PauliString("Y"), zero);
    CHECK(std::abs(y_zero.amplitude(1) - I) < 1e-15);
}

TEST_CASE("qubit-count mismatch is rejected") {
    CHECK_THROWS_AS(apply_pauli_string(PauliString("XX"), StateVector::basis_state(1, 0)),
                    std::invalid_argument);
}

TEST_CASE("Pauli strings with unit coefficient are involutions") {
    RngStream rng(11, 0, 0);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto p = test::random_pauli(n, rng);
            const auto s = test::random_state(n, 1000 + static_cast<std::uint64_t>(rep) + n);
            const auto twice = apply_pauli_string(p, apply_pauli_string(p, s));
            CHECK(test::max_amplitude_delta(twice, s) < 1e-12);
        }
    }
}

TEST_CASE("exp(-i angle P) on eigenstates and the identity case") {
    const auto zero = StateVector::basis_state(1, 0);
    const auto rotated = apply_exp_pauli_rotation(PauliString("Z"), std::numbers::pi / 2, zero);
    CHECK(std::abs(rotated.amplitude(0) - (-I)) < 1e-15);  // e^{-i pi/2} = -i

    const auto s = test::random_state(2, 5);
    const auto same = apply_exp_pauli_rotation(PauliString("XI"), 0.0, s);
    CHECK(test::max_amplitude_delta(same, s) == 0.0);
}

TEST_CASE("exp(-i pi/4 X)|0> frozen value") {
    // Dense-exponential oracle: expm(-i pi/4 X) |0> = (|0> - i|1>)/sqrt(2).
    const auto out =
        apply_exp_pauli_rotation(PauliString("X"), std::numbers::pi / 4, StateVector::basis_state(1, 0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude(0) - inv_sqrt2) < 1e-15);
    CHECK(std::abs(out.amplitude(1) - (-I * inv_sqrt2)) < 1e-15);
}

TEST_CASE("rotations agree with the dense matrix exponential") {
    RngStream rng(21, 0, 0);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto p = test::random_pauli(n, rng);
            const double angle = 4.0 * (rng.uniform() - 0.5);
            const auto s = test::random_state(n, 400 + static_cast<std::uint64_t>(10 * n + rep));

            const auto fast = apply_exp_pauli_rotation(p, angle, s);

            const Eigen::MatrixXcd generator = cplx(0.0, -angle) * dense::pauli_matrix(p);
            const Eigen::VectorXcd slow = generator.exp() * dense::to_eigen(s);
            CHECK(test::max_amplitude_delta(fast, dense::from_eigen(n, slow)) < 1e-10);
        }
    }
}

TEST_CASE("rotation rejects non-unit coefficients") {
    CHECK_THROWS_AS(apply_exp_pauli_rotation(PauliString("X", 2.0), 0.1,
                                             StateVector::basis_state(1, 0)),
                    std::invalid_argument);
}

TEST_CASE("dense_operator on small systems") {
    const auto z = dense::dense_operator({{PauliString("Z"), 1.0}}, 1);
    CHECK(std::abs(z(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(z(1, 1) + 1.0) < 1e-15);
    CHECK(std::abs(z(0, 1)) < 1e-15);

    const auto x = dense::dense_operator({{PauliString("X"), 0.5}}, 1);
    CHECK(std::abs(x(0, 1) - 0.5) < 1e-15);
    CHECK(std::abs(x(1, 0) - 0.5) < 1e-15);
    CHECK(std::abs(x(0, 0)) < 1e-15);

    const auto zz = dense::dense_operator({{PauliString("ZZ"), 1.0}}, 2);
    CHECK(std::abs(zz(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(zz(1, 1) + 1.0) < 1e-15);
    CHECK(std::abs(zz(2, 2) + 1.0) < 1e-15);
    CHECK(std::abs(zz(3, 3) - 1.0) < 1e-15);

    CHECK_THROWS_AS(dense::dense_operator({}, 13), std::invalid_argument);
}

TEST_CASE("amplitude accessor") {
    CHECK(StateVector::basis_state(1, 0).amplitude(0) == cplx{1.0, 0.0});
    CHECK(std::abs(StateVector::uniform_plus(1).amplitude(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(StateVector::basis_state(2, 3).amplitude(0) == cplx{0.0, 0.0});
    CHECK_THROWS_AS(StateVector::basis_state(2, 3).amplitude(4), std::out_of_range);
}

TEST_CASE("measurement of a deterministic state") {
    RngStream rng(3, 0, 0);
    const auto one = StateVector::basis_state(1, 1);
    for (int i = 0; i < 50; ++i) CHECK(sample_measurement(one, rng) == 1);
}

TEST_CASE("measurement frequencies on |+>") {
    RngStream rng(4, 0, 0);
    const auto plus = StateVector::uniform_plus(1);
    const int draws = 100000;
    int zeros = 0;
    for (int i = 0; i < draws; ++i)
        if (sample_measurement(plus, rng) == 0) ++zeros;
    const double freq = static_cast<double>(zeros) / draws;
    // 3 sigma binomial band around 0.5
    CHECK(std::abs(freq - 0.5) < 3.0 * std::sqrt(0.25 / draws));
}

TEST_CASE("measurement histogram passes a chi-square test against Born weights") {
    const auto s = test::random_state(3, 77);
    RngStream rng(50, 0, 0);
    const int draws = 100000;
    std::vector<int> counts(8, 0);
    for (int i = 0; i < draws; ++i) ++counts[sample_measurement(s, rng)];
    double chi2 = 0.0;
    for (std::uint64_t j = 0; j < 8; ++j) {
        const double expected = draws * std::norm(s.amplitude(j));
        chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
    }
    CHECK(chi2 < 18.475);  // chi-square 99% quantile, 7 degrees of freedom
}

TEST_CASE("measurement rejects corrupted norms") {
    auto bad = StateVector::from_amplitudes(1, {{0.5, 0.0}, {0.5, 0.0}});
    RngStream rng(6, 0, 0);
    CHECK_THROWS_AS(sample_measurement(bad, rng), std::runtime_error);
    CHECK_NOTHROW(sample_measurement_normalized(bad, rng));
}

TEST_CASE("expectation value of Pauli observables") {
    const auto plus = StateVector::uniform_plus(1);
    CHECK(std::abs(expectation_value(PauliString("X"), plus).real() - 1.0) < 1e-15);
    CHECK(std::abs(expectation_value(PauliString("Z"), plus).real()) < 1e-15);
}
