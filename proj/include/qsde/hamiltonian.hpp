#pragma once

#include <utility>
#include <vector>

#include "qsde/pauli.hpp"
#include "qsde/schedule.hpp"

namespace qsde {

// One term of H(t): the operator's own coefficient times schedule(t).
struct HamiltonianTerm {
    PauliString op;
    Schedule schedule;
};

// H(t) = sum_j coeff_j * sched_j(t) * P_j on [0, total_time]. Real
// coefficients on Pauli strings keep every evaluation Hermitian.
class HamiltonianSchedule {
public:
    HamiltonianSchedule(int n_qubits, std::vector<HamiltonianTerm> terms, double total_time);

    int n_qubits() const { return n_qubits_; }
    double total_time() const { return total_time_; }
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }

    // Per-term (operator, schedule value) at time t, in input order.
    // Throws if t is outside [0, total_time].
    std::vector<std::pair<PauliString, double>> evaluate(double t) const;

private:
    int n_qubits_;
    std::vector<HamiltonianTerm> terms_;
    double total_time_;
};

}  // namespace qsde
