#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsde/pauli.hpp"
#include "qsde/rng.hpp"

namespace qsde {

// Dense complex state vector over n qubits, indexed by bitstrings
// (qubit 0 = least significant bit).
class StateVector {
public:
    explicit StateVector(int n_qubits);  // all-zero amplitudes

    static StateVector basis_state(int n_qubits, std::uint64_t index);
    static StateVector uniform_plus(int n_qubits);  // |+...+>
    static StateVector from_amplitudes(int n_qubits, std::vector<std::complex<double>> amps);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }

    std::complex<double> amplitude(std::uint64_t index) const;  // range-checked

    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::span<std::complex<double>> amplitudes() { return amps_; }

    double norm_sq() const;  // serial fixed-order sum, thread-count independent
    double norm() const;
    void normalize();

    bool operator==(const StateVector& other) const = default;

private:
    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

// out = P|s> including the coefficient.
StateVector apply_pauli_string(const PauliString& p, const StateVector& s);

// exp(-i angle P)|s> = cos(angle)|s> - i sin(angle) P|s>, exact for unit
// coefficient strings (involutions). Rejects non-unit coefficients.
StateVector apply_exp_pauli_rotation(const PauliString& p, double angle, const StateVector& s);

std::complex<double> inner_product(const StateVector& a, const StateVector& b);  // <a|b>
std::complex<double> expectation_value(const PauliString& p, const StateVector& s);
double fidelity(const StateVector& a, const StateVector& b);  // |<a|b>|^2

// One projective measurement in the computational basis. Rejects states whose
// norm is off by more than 1e-6 (an integrator-corruption signal).
std::uint64_t sample_measurement(const StateVector& s, RngStream& rng);

// Born sampling from |a_n|^2 / sum |a_n|^2; for schemes that do not preserve
// the norm exactly (Euler-Maruyama without renormalization).
std::uint64_t sample_measurement_normalized(const StateVector& s, RngStream& rng);

}  // namespace qsde
