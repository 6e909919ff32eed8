#include "qsde/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsde {

AnnealingProblem AnnealingProblem::linear(int n_qubits,
                                          std::vector<std::tuple<int, int, double>> couplings,
                                          std::vector<double> fields, double total_time) {
    AnnealingProblem p;
    p.n_qubits = n_qubits;
    p.couplings = std::move(couplings);
    p.fields = std::move(fields);
    p.total_time = total_time;
    p.schedule_a = Schedule::piecewise_linear({{0.0, 1.0}, {total_time, 0.0}});
    p.schedule_b = Schedule::piecewise_linear({{0.0, 0.0}, {total_time, 1.0}});
    return p;
}

namespace {

void validate(const AnnealingProblem& p) {
    if (p.n_qubits < 1) throw std::invalid_argument("AnnealingProblem: empty system");
    if (p.fields.size() != static_cast<std::size_t>(p.n_qubits))
        throw std::invalid_argument("AnnealingProblem: fields size != n_qubits");
    for (const auto& [i, j, J] : p.couplings) {
        if (i < 0 || i >= p.n_qubits || j < 0 || j >= p.n_qubits || i == j)
            throw std::invalid_argument("AnnealingProblem: bad coupling (" + std::to_string(i) +
                                        ", " + std::to_string(j) + ")");
        (void)J;
    }
    if (!(p.schedule_a.value_at(0.0) > 0.0) ||
        std::abs(p.schedule_a.value_at(p.total_time)) > 1e-12)
        throw std::invalid_argument("AnnealingProblem: need A(0) > 0 and A(T) = 0");
    if (std::abs(p.schedule_b.value_at(0.0)) > 1e-12 ||
        !(p.schedule_b.value_at(p.total_time) > 0.0))
        throw std::invalid_argument("AnnealingProblem: need B(0) = 0 and B(T) > 0");
}

}  // namespace

HamiltonianSchedule build_tfim_anneal(const AnnealingProblem& problem) {
    validate(problem);
    std::vector<HamiltonianTerm> terms;
    for (int q = 0; q < problem.n_qubits; ++q)
        terms.push_back({PauliString::single(problem.n_qubits, q, 'X', -1.0),
                         problem.schedule_a});
    for (const auto& [i, j, J] : problem.couplings) {
        if (J == 0.0) continue;
        std::string letters(static_cast<std::size_t>(problem.n_qubits), 'I');
        letters[static_cast<std::size_t>(i)] = 'Z';
        letters[static_cast<std::size_t>(j)] = 'Z';
        terms.push_back({PauliString(letters, J), problem.schedule_b});
    }
    for (int q = 0; q < problem.n_qubits; ++q) {
        if (problem.fields[static_cast<std::size_t>(q)] == 0.0) continue;
        terms.push_back({PauliString::single(problem.n_qubits, q, 'Z',
                                             problem.fields[static_cast<std::size_t>(q)]),
                         problem.schedule_b});
    }
    return HamiltonianSchedule(problem.n_qubits, std::move(terms), problem.total_time);
}

double ising_energy(const AnnealingProblem& problem, std::uint64_t bits) {
    auto z = [bits](int q) { return ((bits >> q) & 1) ? -1.0 : 1.0; };
    double energy = 0.0;
    for (const auto& [i, j, J] : problem.couplings) energy += J * z(i) * z(j);
    for (int q = 0; q < problem.n_qubits; ++q)
        energy += problem.fields[static_cast<std::size_t>(q)] * z(q);
    return energy;
}

std::uint64_t ising_ground_state(const AnnealingProblem& problem) {
    validate(problem);
    if (problem.n_qubits > 24)
        throw std::invalid_argument("ising_ground_state: exhaustive search capped at 24 qubits");
    const std::uint64_t dim = std::uint64_t{1} << problem.n_qubits;
    std::uint64_t best = 0;
    double best_energy = ising_energy(problem, 0);
    for (std::uint64_t b = 1; b < dim; ++b) {
        const double e = ising_energy(problem, b);
        if (e < best_energy) {
            best_energy = e;
            best = b;
        }
    }
    return best;
}

double PiecewiseProgram::total_time() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration;
    return total;
}

HamiltonianSchedule build_piecewise(const PiecewiseProgram& program) {
    if (program.n_qubits < 1) throw std::invalid_argument("PiecewiseProgram: empty system");
    if (program.segments.empty())
        throw std::invalid_argument("PiecewiseProgram: needs at least one segment");
    for (const auto& seg : program.segments)
        if (!(seg.duration > 0.0))
            throw std::invalid_argument("PiecewiseProgram: segment durations must be positive");

    const double total = program.total_time();

    // One term per (op letters, segment): the op is active on its segment and
    // zero elsewhere. Identical letter strings across segments are merged
    // into a single piecewise-constant schedule.
    struct Slot {
        PauliString op;
        std::vector<double> values;  // one per segment, coefficient folded in
    };
    std::vector<Slot> slots;
    for (std::size_t s = 0; s < program.segments.size(); ++s) {
        for (const auto& op : program.segments[s].terms) {
            if (op.n_qubits() != program.n_qubits)
                throw std::invalid_argument("PiecewiseProgram: term qubit-count mismatch");
            Slot* slot = nullptr;
            for (auto& existing : slots)
                if (existing.op.letters() == op.letters()) slot = &existing;
            if (slot == nullptr) {
                slots.push_back({PauliString(op.letters(), 1.0),
                                 std::vector<double>(program.segments.size(), 0.0)});
                slot = &slots.back();
            }
            slot->values[s] += op.coefficient();
        }
    }

    std::vector<HamiltonianTerm> terms;
    terms.reserve(slots.size());
    for (auto& slot : slots) {
        std::vector<std::pair<double, double>> knots;
        double t = 0.0;
        for (std::size_t s = 0; s < program.segments.size(); ++s) {
            knots.emplace_back(t, slot.values[s]);
            t += program.segments[s].duration;
        }
        knots.emplace_back(total, slot.values.back());
        terms.push_back({std::move(slot.op), Schedule::piecewise_constant(std::move(knots))});
    }
    return HamiltonianSchedule(program.n_qubits, std::move(terms), total);
}

NoiseSpec per_qubit_noise(int n_qubits, char letter, Schedule strength) {
    if (n_qubits < 1) throw std::invalid_argument("per_qubit_noise: n_qubits must be >= 1");
    if (letter != 'X' && letter != 'Y' && letter != 'Z')
        throw std::invalid_argument("per_qubit_noise: letter must be X, Y, or Z");
    NoiseSpec spec;
    spec.channels.reserve(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q)
        spec.channels.emplace_back(PauliString::single(n_qubits, q, letter), strength);
    return spec;
}

}  // namespace qsde
