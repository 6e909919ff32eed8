#include "qsde/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsde::dense {

namespace {

void check_cap(int n_qubits) {
    if (n_qubits > kMaxDenseQubits)
        throw std::invalid_argument("dense path capped at " + std::to_string(kMaxDenseQubits) +
                                    " qubits (got " + std::to_string(n_qubits) + ")");
}

}  // namespace

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
    check_cap(p.n_qubits());
    const Eigen::Index d = Eigen::Index{1} << p.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        const auto bu = static_cast<std::uint64_t>(b);
        m(static_cast<Eigen::Index>(bu ^ p.mask_x()), b) = p.coefficient() * p.entry_phase(bu);
    }
    return m;
}

Eigen::MatrixXcd dense_operator(const std::vector<std::pair<PauliString, double>>& terms,
                                int n_qubits) {
    check_cap(n_qubits);
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [op, value] : terms) {
        if (op.n_qubits() != n_qubits)
            throw std::invalid_argument("dense_operator: term qubit-count mismatch");
        const double c = op.coefficient() * value;
        if (c == 0.0) continue;
        for (Eigen::Index b = 0; b < d; ++b) {
            const auto bu = static_cast<std::uint64_t>(b);
            m(static_cast<Eigen::Index>(bu ^ op.mask_x()), b) += c * op.entry_phase(bu);
        }
    }
    return m;
}

Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd& h, double dt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_propagator: eigendecomposition failed");
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index j = 0; j < phases.size(); ++j)
        phases(j) = std::exp(std::complex<double>(0.0, -dt * es.eigenvalues()(j)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd to_eigen(const StateVector& s) {
    const auto amps = s.amplitudes();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t j = 0; j < amps.size(); ++j) v(static_cast<Eigen::Index>(j)) = amps[j];
    return v;
}

StateVector from_eigen(int n_qubits, const Eigen::VectorXcd& v) {
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(v.size()));
    for (Eigen::Index j = 0; j < v.size(); ++j) amps[static_cast<std::size_t>(j)] = v(j);
    return StateVector::from_amplitudes(n_qubits, std::move(amps));
}

}  // namespace qsde::dense
