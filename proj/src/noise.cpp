#include "qsde/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace qsde {

NoiseChannel::NoiseChannel(PauliString op_in, Schedule strength_in)
    : op(std::move(op_in)), strength(std::move(strength_in)) {
    if (std::abs(op.coefficient() - 1.0) > 1e-12)
        throw std::invalid_argument(
            "NoiseChannel: operator coefficient must be 1 (fold the scale into the strength "
            "schedule)");
}

NoiseSpec NoiseSpec::scaled(double factor) const {
    NoiseSpec out = *this;
    for (auto& ch : out.channels) ch.strength = ch.strength.scaled(factor);
    return out;
}

LocalConditionResult verify_local_condition(const PauliString& op, double /*tolerance*/) {
    // (c P)^2 = c^2 I holds identically for Pauli strings.
    return {true, std::abs(op.coefficient())};
}

LocalConditionResult verify_local_condition(const Eigen::MatrixXcd& op, double tolerance) {
    if (op.rows() != op.cols()) return {false, 0.0};
    if (op.rows() > (Eigen::Index{1} << 12))
        throw std::invalid_argument("verify_local_condition: dense operator larger than 2^12");
    const Eigen::MatrixXcd sq = op * op;
    const double c2 = sq.diagonal().real().mean();
    if (c2 < -tolerance) return {false, 0.0};
    const Eigen::MatrixXcd residual =
        sq - c2 * Eigen::MatrixXcd::Identity(op.rows(), op.cols());
    const double max_abs = residual.cwiseAbs().maxCoeff();
    if (max_abs > tolerance) return {false, 0.0};
    return {true, std::sqrt(std::max(c2, 0.0))};
}

double strength_at(const NoiseChannel& ch, double t) { return ch.strength.value_at(t); }

double gamma_integral(const NoiseSpec& spec, double total_time) {
    double total = 0.0;
    for (const auto& ch : spec.channels) total += ch.strength.integral_square(0.0, total_time);
    return 0.5 * total;
}

double gamma_integral_quadrature(const NoiseSpec& spec, double total_time, int quadrature_steps) {
    if (quadrature_steps < 1)
        throw std::invalid_argument("gamma_integral_quadrature: quadrature_steps must be >= 1");
    const double h = total_time / quadrature_steps;
    double total = 0.0;
    for (int j = 0; j < quadrature_steps; ++j) {
        const double t = (j + 0.5) * h;
        for (const auto& ch : spec.channels) {
            const double g = ch.strength.value_at(t);
            total += g * g * h;
        }
    }
    return 0.5 * total;
}

}  // namespace qsde
