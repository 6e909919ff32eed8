#include "qsde/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qsde {

PauliString::PauliString(std::string letters, double coefficient)
    : letters_(std::move(letters)), coefficient_(coefficient) {
    if (letters_.empty()) throw std::invalid_argument("PauliString: empty letter string");
    if (letters_.size() > 63) throw std::invalid_argument("PauliString: more than 63 qubits");
    for (std::size_t k = 0; k < letters_.size(); ++k) {
        const std::uint64_t bit = std::uint64_t{1} << k;
        switch (letters_[k]) {
            case 'I': break;
            case 'X': mask_x_ |= bit; break;
            case 'Y': mask_x_ |= bit; mask_z_ |= bit; ++y_count_; break;
            case 'Z': mask_z_ |= bit; break;
            default:
                throw std::invalid_argument(std::string("PauliString: invalid letter '") +
                                            letters_[k] + "' (expected I, X, Y, Z)");
        }
    }
}

PauliString PauliString::identity(int n_qubits) {
    return PauliString(std::string(static_cast<std::size_t>(n_qubits), 'I'));
}

PauliString PauliString::single(int n_qubits, int qubit, char letter, double coefficient) {
    if (qubit < 0 || qubit >= n_qubits)
        throw std::invalid_argument("PauliString::single: qubit index out of range");
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    s[static_cast<std::size_t>(qubit)] = letter;
    return PauliString(std::move(s), coefficient);
}

std::complex<double> PauliString::base_phase() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[y_count_ % 4];
}

std::complex<double> PauliString::entry_phase(std::uint64_t b) const {
    const double sign = (std::popcount(b & mask_z_) & 1) ? -1.0 : 1.0;
    return base_phase() * sign;
}

}  // namespace qsde
