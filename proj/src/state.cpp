#include "qsde/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsde/kernels.hpp"

namespace qsde {

namespace {

kernels::PauliMasks masks_of(const PauliString& p) {
    return {p.mask_x(), p.mask_z(), p.base_phase()};
}

void check_same_size(const PauliString& p, const StateVector& s) {
    if (p.n_qubits() != s.n_qubits())
        throw std::invalid_argument("operator acts on " + std::to_string(p.n_qubits()) +
                                    " qubits but state has " + std::to_string(s.n_qubits()));
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30)
        throw std::invalid_argument("StateVector: n_qubits must be in [1, 30]");
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim())
        throw std::out_of_range("basis_state: index " + std::to_string(index) +
                                " out of range for " + std::to_string(n_qubits) + " qubit(s)");
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::uniform_plus(int n_qubits) {
    StateVector s(n_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    for (auto& amp : s.amps_) amp = a;
    return s;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<std::complex<double>> amps) {
    StateVector s(n_qubits);
    if (amps.size() != s.dim())
        throw std::invalid_argument("from_amplitudes: expected " + std::to_string(s.dim()) +
                                    " amplitudes, got " + std::to_string(amps.size()));
    s.amps_ = std::move(amps);
    return s;
}

std::complex<double> StateVector::amplitude(std::uint64_t index) const {
    if (index >= dim())
        throw std::out_of_range("amplitude: index " + std::to_string(index) + " out of range");
    return amps_[index];
}

double StateVector::norm_sq() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("normalize: zero state");
    const double inv = 1.0 / n;
    for (auto& a : amps_) a *= inv;
}

StateVector apply_pauli_string(const PauliString& p, const StateVector& s) {
    check_same_size(p, s);
    StateVector out(s.n_qubits());
    kernels::apply_pauli(out.amplitudes(), s.amplitudes(), masks_of(p), p.coefficient());
    return out;
}

StateVector apply_exp_pauli_rotation(const PauliString& p, double angle, const StateVector& s) {
    check_same_size(p, s);
    if (std::abs(p.coefficient() - 1.0) > 1e-12)
        throw std::invalid_argument(
            "apply_exp_pauli_rotation: operator is not an involution (coefficient must be 1; "
            "fold scaling into the angle)");
    StateVector out = s;
    kernels::apply_pauli_rotation(out.amplitudes(), masks_of(p), angle);
    return out;
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("inner_product: qubit-count mismatch");
    std::complex<double> total = 0.0;
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    for (std::size_t j = 0; j < av.size(); ++j) total += std::conj(av[j]) * bv[j];
    return total;
}

std::complex<double> expectation_value(const PauliString& p, const StateVector& s) {
    return inner_product(s, apply_pauli_string(p, s));
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

namespace {

std::uint64_t born_sample(const StateVector& s, RngStream& rng, double total_weight) {
    const auto amps = s.amplitudes();
    const double u = rng.uniform() * total_weight;
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < amps.size(); ++j) {
        acc += std::norm(amps[j]);
        if (u < acc) return j;
    }
    return amps.size() - 1;
}

}  // namespace

std::uint64_t sample_measurement(const StateVector& s, RngStream& rng) {
    const double n2 = s.norm_sq();
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-6)
        throw std::runtime_error("sample_measurement: state norm " + std::to_string(std::sqrt(n2)) +
                                 " deviates from 1 by more than 1e-6 (integrator corruption?)");
    return born_sample(s, rng, n2);
}

std::uint64_t sample_measurement_normalized(const StateVector& s, RngStream& rng) {
    const double n2 = s.norm_sq();
    if (n2 <= 0.0) throw std::runtime_error("sample_measurement_normalized: zero state");
    return born_sample(s, rng, n2);
}

}  // namespace qsde
