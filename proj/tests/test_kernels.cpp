#include <doctest.h>

#include <bit>
#include <cstring>
#include <vector>

#include "qsde/kernels.hpp"
#include "qsde/rng.hpp"

using namespace qsde;
using kernels::cplx;

namespace {

std::vector<cplx> random_amps(int n_qubits, std::uint64_t seed) {
    RngStream rng(seed, 0, 0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (auto& a : amps) a = {rng.normal(), rng.normal()};
    return amps;
}

bool bit_identical(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

kernels::PauliMasks random_masks(int n_qubits, RngStream& rng) {
    const std::uint64_t all = (std::uint64_t{1} << n_qubits) - 1;
    kernels::PauliMasks m;
    m.mx = rng.next_u64() & all;
    m.mz = rng.next_u64() & all;
    // Valid Pauli-string masks carry base_phase = i^(#Y), #Y = |mx & mz|.
    static const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    m.base_phase = phases[std::popcount(m.mx & m.mz) % 4];
    return m;
}

}  // namespace

// The OpenMP kernels only partition the index space, so their output must be
// bit-identical to the serial reference, including above the parallel
// threshold (2^16 amplitudes).
TEST_CASE("parallel kernels match the serial reference bitwise") {
    RngStream rng(1234, 0, 0);
    for (int n : {3, 8, 16, 17}) {
        const auto src = random_amps(n, 55 + static_cast<std::uint64_t>(n));
        for (int rep = 0; rep < 8; ++rep) {
            const auto masks = random_masks(n, rng);
            const double coeff = rng.normal();
            const double angle = rng.normal();

            std::vector<cplx> a(src.size()), b(src.size());
            kernels::serial::apply_pauli(a, src, masks, coeff);
            kernels::apply_pauli(b, src, masks, coeff);
            CHECK(bit_identical(a, b));

            a = src;
            b = src;
            kernels::serial::apply_pauli_rotation(a, masks, angle);
            kernels::apply_pauli_rotation(b, masks, angle);
            CHECK(bit_identical(a, b));

            kernels::serial::scale_copy(a, src, 0.75);
            kernels::scale_copy(b, src, 0.75);
            CHECK(bit_identical(a, b));

            kernels::serial::accumulate_pauli_term(a, src, masks, coeff);
            kernels::accumulate_pauli_term(b, src, masks, coeff);
            CHECK(bit_identical(a, b));
        }
    }
}

TEST_CASE("rotation kernel is exactly norm-preserving in squared sum") {
    RngStream rng(99, 0, 0);
    auto amps = random_amps(10, 7);
    double before = 0.0;
    for (const auto& a : amps) before += std::norm(a);
    for (int rep = 0; rep < 100; ++rep)
        kernels::apply_pauli_rotation(amps, random_masks(10, rng), rng.normal());
    double after = 0.0;
    for (const auto& a : amps) after += std::norm(a);
    CHECK(std::abs(after - before) < 1e-11 * before);
}
