#include "qsde/hamiltonian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsde {

HamiltonianSchedule::HamiltonianSchedule(int n_qubits, std::vector<HamiltonianTerm> terms,
                                         double total_time)
    : n_qubits_(n_qubits), terms_(std::move(terms)), total_time_(total_time) {
    if (n_qubits < 1) throw std::invalid_argument("HamiltonianSchedule: n_qubits must be >= 1");
    if (total_time < 0.0) throw std::invalid_argument("HamiltonianSchedule: negative total_time");
    for (const auto& term : terms_) {
        if (term.op.n_qubits() != n_qubits)
            throw std::invalid_argument("HamiltonianSchedule: term '" + term.op.letters() +
                                        "' does not act on " + std::to_string(n_qubits) +
                                        " qubits");
        if (!term.schedule.covers(total_time))
            throw std::invalid_argument("HamiltonianSchedule: schedule of term '" +
                                        term.op.letters() + "' does not cover [0, T]");
    }
}

std::vector<std::pair<PauliString, double>> HamiltonianSchedule::evaluate(double t) const {
    const double slack = 1e-12 * std::max(1.0, total_time_);
    if (t < -slack || t > total_time_ + slack)
        throw std::out_of_range("HamiltonianSchedule::evaluate: t = " + std::to_string(t) +
                                " outside [0, " + std::to_string(total_time_) + "]");
    std::vector<std::pair<PauliString, double>> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) out.emplace_back(term.op, term.schedule.value_at(t));
    return out;
}

}  // namespace qsde
