#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "qsde/hamiltonian.hpp"
#include "qsde/noise.hpp"
#include "qsde/schedule.hpp"

namespace qsde {

// Transverse-field Ising anneal
//   H(t) = -A(t) sum_i X_i + B(t) (sum_ij J_ij Z_i Z_j + sum_i h_i Z_i)
// with A decreasing to 0 and B increasing from 0. Z_i is the standard Pauli
// operator, so a bitstring b has classical energy
//   E(b) = sum J_ij z_i z_j + sum h_i z_i,  z_i = +1 for bit 0, -1 for bit 1.
struct AnnealingProblem {
    int n_qubits = 0;
    std::vector<std::tuple<int, int, double>> couplings;  // (i, j, J_ij)
    std::vector<double> fields;                           // h_i, size n_qubits
    double total_time = 0.0;
    Schedule schedule_a;  // A(0) > 0, A(T) = 0
    Schedule schedule_b;  // B(0) = 0, B(T) > 0

    // Linear ramps A = 1 - t/T, B = t/T.
    static AnnealingProblem linear(int n_qubits, std::vector<std::tuple<int, int, double>> couplings,
                                   std::vector<double> fields, double total_time);
};

HamiltonianSchedule build_tfim_anneal(const AnnealingProblem& problem);

double ising_energy(const AnnealingProblem& problem, std::uint64_t bits);

// Exhaustive minimizer (n <= 24); ties broken toward the lowest index.
std::uint64_t ising_ground_state(const AnnealingProblem& problem);

// Piecewise-constant H(t): segment s applies its term list for duration_s.
// Term coefficients live on the PauliStrings.
struct PiecewiseSegment {
    double duration = 0.0;
    std::vector<PauliString> terms;
};

struct PiecewiseProgram {
    int n_qubits = 0;
    std::vector<PiecewiseSegment> segments;

    double total_time() const;
};

HamiltonianSchedule build_piecewise(const PiecewiseProgram& program);

// K = n_qubits channels, channel k applying `letter` to qubit k, all with the
// same strength schedule.
NoiseSpec per_qubit_noise(int n_qubits, char letter, Schedule strength);

}  // namespace qsde
