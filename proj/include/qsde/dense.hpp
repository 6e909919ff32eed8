#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qsde/pauli.hpp"
#include "qsde/state.hpp"

namespace qsde::dense {

// Dense 2^n x 2^n representations, capped at n <= 12. These back the oracle
// paths; the trajectory integrators never touch them.
inline constexpr int kMaxDenseQubits = 12;

Eigen::MatrixXcd pauli_matrix(const PauliString& p);

// Sum of (operator coefficient * value) * P over terms; Hermitian for real
// coefficients.
Eigen::MatrixXcd dense_operator(const std::vector<std::pair<PauliString, double>>& terms,
                                int n_qubits);

// exp(-i H dt) for Hermitian H via eigendecomposition.
Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd& h, double dt);

Eigen::VectorXcd to_eigen(const StateVector& s);
StateVector from_eigen(int n_qubits, const Eigen::VectorXcd& v);

}  // namespace qsde::dense
