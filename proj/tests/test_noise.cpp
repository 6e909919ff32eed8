#include <doctest.h>

#include <cmath>

#include "qsde/dense.hpp"
#include "qsde/models.hpp"
#include "qsde/noise.hpp"
#include "qsde/rng.hpp"
#include "test_util.hpp"

using namespace qsde;

TEST_CASE("local condition: Pauli strings pass with their coefficient") {
    const auto r = verify_local_condition(PauliString("XZ"), 1e-10);
    CHECK(r.passed);
    CHECK(r.scalar == doctest::Approx(1.0));
}

TEST_CASE("local condition: dense involution (X + Z)/sqrt(2)") {
    Eigen::MatrixXcd op(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    op << s, s, s, -s;
    const auto r = verify_local_condition(op, 1e-10);
    CHECK(r.passed);
    CHECK(r.scalar == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("local condition: diag(1, 2) fails") {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(2, 2);
    op(0, 0) = 1.0;
    op(1, 1) = 2.0;
    CHECK_FALSE(verify_local_condition(op, 1e-10).passed);
}

TEST_CASE("local condition holds for random Pauli strings up to n = 4") {
    RngStream rng(31, 0, 0);
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 25; ++rep) {
            const auto p = test::random_pauli(n, rng);
            CHECK(verify_local_condition(p, 1e-10).passed);
            // Cross-check through the dense route as well.
            const auto dense_result = verify_local_condition(dense::pauli_matrix(p), 1e-10);
            CHECK(dense_result.passed);
            CHECK(dense_result.scalar == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("local condition rejects random non-involutory operators") {
    RngStream rng(32, 0, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const int dim = 2 + static_cast<int>(rng.next_u64() % 7);
        Eigen::MatrixXcd op(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) op(i, j) = {rng.normal(), rng.normal()};
        op = (op + Eigen::MatrixXcd(op.adjoint())).eval();  // Hermitian but generic spectrum
        CHECK_FALSE(verify_local_condition(op, 1e-8).passed);
    }
}

TEST_CASE("strength_at evaluates the schedule") {
    const NoiseChannel constant(PauliString("Z"), Schedule::constant(0.3));
    CHECK(strength_at(constant, 0.0) == 0.3);
    CHECK(strength_at(constant, 0.7) == 0.3);

    const NoiseChannel ramp(PauliString("Z"),
                            Schedule::piecewise_linear({{0.0, 0.0}, {2.0, 1.0}}));
    CHECK(strength_at(ramp, 1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(strength_at(ramp, 3.0), std::out_of_range);

    const NoiseChannel zero(PauliString("Z"), Schedule::constant(0.0));
    CHECK(strength_at(zero, 1.0) == 0.0);
}

TEST_CASE("channel operators must carry unit coefficient") {
    CHECK_THROWS_AS(NoiseChannel(PauliString("Z", 0.5), Schedule::constant(1.0)),
                    std::invalid_argument);
}

TEST_CASE("gamma integral: constant strengths") {
    const double g = 0.4, T = 3.0;
    NoiseSpec one;
    one.channels.emplace_back(PauliString("Z"), Schedule::constant(g));
    CHECK(gamma_integral(one, T) == doctest::Approx(g * g * T / 2.0).epsilon(1e-14));

    NoiseSpec many;
    for (int k = 0; k < 5; ++k)
        many.channels.emplace_back(PauliString("Z"), Schedule::constant(g));
    CHECK(gamma_integral(many, T) == doctest::Approx(5.0 * g * g * T / 2.0).epsilon(1e-14));
}

TEST_CASE("gamma integral: linear ramp 0 -> 1 over T = 1 gives 1/6") {
    NoiseSpec spec;
    spec.channels.emplace_back(PauliString("Z"),
                               Schedule::piecewise_linear({{0.0, 0.0}, {1.0, 1.0}}));
    const double exact = gamma_integral(spec, 1.0);
    CHECK(exact == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // Numerical quadrature cross-check of the exact path.
    CHECK(gamma_integral_quadrature(spec, 1.0, 20000) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("gamma integral is additive over channels and time subintervals") {
    RngStream rng(33, 0, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const double T = 0.5 + 2.0 * rng.uniform();
        Schedule a = Schedule::piecewise_linear(
            {{0.0, rng.normal()}, {0.4 * T, rng.normal()}, {T, rng.normal()}});
        Schedule b = Schedule::constant(rng.normal());
        NoiseSpec both;
        both.channels.emplace_back(PauliString("Z"), a);
        both.channels.emplace_back(PauliString("X"), b);
        NoiseSpec only_a, only_b;
        only_a.channels.emplace_back(PauliString("Z"), a);
        only_b.channels.emplace_back(PauliString("X"), b);
        CHECK(gamma_integral(both, T) ==
              doctest::Approx(gamma_integral(only_a, T) + gamma_integral(only_b, T))
                  .epsilon(1e-13));

        const double split = 0.5 * (a.integral_square(0.0, 0.61 * T) +
                                    a.integral_square(0.61 * T, T));
        CHECK(gamma_integral(only_a, T) == doctest::Approx(split).epsilon(1e-13));
    }
}

TEST_CASE("gamma integral of an all-zero spec is exactly zero") {
    NoiseSpec spec;
    spec.channels.emplace_back(PauliString("Z"), Schedule::constant(0.0));
    spec.channels.emplace_back(PauliString("XX", 1.0), Schedule::constant(0.0));
    CHECK(gamma_integral(spec, 2.0) == 0.0);
    CHECK(gamma_integral(NoiseSpec{}, 2.0) == 0.0);
}

TEST_CASE("per-channel letters must act on matching qubit counts") {
    // Mixed sizes are caught when the TrajectoryConfig is assembled; here we
    // only check the channel invariant directly.
    NoiseSpec spec;
    spec.channels.emplace_back(PauliString("ZI"), Schedule::constant(0.1));
    CHECK(spec.size() == 1);
}
