#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qsde/pauli.hpp"
#include "qsde/schedule.hpp"

namespace qsde {

// One stochastic control-error channel: a unit-coefficient Pauli string P_k
// driven by its own Brownian motion with strength g_k(t). The error operator
// is g_k(t) P_k, so (g_k P_k)^2 = g_k^2 I -- the local error condition with
// the scalar factored into the strength schedule.
struct NoiseChannel {
    NoiseChannel(PauliString op, Schedule strength);

    PauliString op;      // coefficient forced to 1 at construction
    Schedule strength;   // g_k(t), units 1/sqrt(time)
};

// Ordered channel list; channel k is bound to the k-th independent Brownian
// motion. Empty list = noiseless dynamics.
struct NoiseSpec {
    std::vector<NoiseChannel> channels;

    int size() const { return static_cast<int>(channels.size()); }
    NoiseSpec scaled(double factor) const;  // scales every strength schedule
};

struct LocalConditionResult {
    bool passed = false;
    double scalar = 0.0;  // c >= 0 with op^2 = c^2 I when passed
};

// Checks op^2 = c^2 I within tolerance. Pauli strings pass exactly with
// c = |coefficient|; the dense overload serves validation of arbitrary
// operators (dimension <= 2^12).
LocalConditionResult verify_local_condition(const PauliString& op, double tolerance);
LocalConditionResult verify_local_condition(const Eigen::MatrixXcd& op, double tolerance);

double strength_at(const NoiseChannel& ch, double t);

// Gamma = (1/2) Integral_0^T sum_k g_k^2(t) dt, via exact segment integrals.
double gamma_integral(const NoiseSpec& spec, double total_time);

// Midpoint-rule estimate; validates the exact path in tests.
double gamma_integral_quadrature(const NoiseSpec& spec, double total_time, int quadrature_steps);

}  // namespace qsde
