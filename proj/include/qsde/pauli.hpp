#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace qsde {

// Tensor product of single-qubit Pauli letters times a real coefficient.
// letters()[k] acts on qubit k, with qubit 0 the least significant bit of a
// basis index. Any letter string with |coefficient| = c squares to c^2 * I.
class PauliString {
public:
    PauliString(std::string letters, double coefficient = 1.0);

    static PauliString identity(int n_qubits);
    static PauliString single(int n_qubits, int qubit, char letter, double coefficient = 1.0);

    int n_qubits() const { return static_cast<int>(letters_.size()); }
    const std::string& letters() const { return letters_; }
    double coefficient() const { return coefficient_; }
    void set_coefficient(double c) { coefficient_ = c; }

    // Bit masks for index arithmetic: X and Y letters flip bits, Z and Y
    // letters contribute (-1)^bit phases. base_phase() carries i^(#Y).
    std::uint64_t mask_x() const { return mask_x_; }
    std::uint64_t mask_z() const { return mask_z_; }
    int y_count() const { return y_count_; }
    std::complex<double> base_phase() const;

    bool is_identity_letters() const { return mask_x_ == 0 && mask_z_ == 0; }

    // Phase of <b ^ mask_x | P | b> for unit coefficient.
    std::complex<double> entry_phase(std::uint64_t b) const;

    bool operator==(const PauliString& other) const = default;

private:
    std::string letters_;
    double coefficient_;
    std::uint64_t mask_x_ = 0;
    std::uint64_t mask_z_ = 0;
    int y_count_ = 0;
};

}  // namespace qsde
