#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace qsde::kernels {

// Amplitude-space kernels behind PauliString application and the SDE
// steppers. Each element of the output depends on at most two input
// amplitudes, so the OpenMP variants partition the index space without
// changing any floating-point result; serial and parallel outputs are
// bit-identical. The serial namespace is the reference implementation used
// by tests and the benchmark.

using cplx = std::complex<double>;

struct PauliMasks {
    std::uint64_t mx = 0;       // bits flipped by X/Y letters
    std::uint64_t mz = 0;       // bits phased by Z/Y letters
    cplx base_phase = 1.0;      // i^(#Y)
};

namespace serial {

// dst[j] = coeff * phase(j^mx) * src[j^mx]
void apply_pauli(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                 double coeff);

// In-place s <- exp(-i angle P) s for a unit-coefficient string.
void apply_pauli_rotation(std::span<cplx> s, const PauliMasks& m, double angle);

// dst[j] -= i * coeff * phase(j^mx) * src[j^mx]   (fused Euler-Maruyama term)
void accumulate_pauli_term(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                           double coeff);

// dst[j] = scale * src[j]
void scale_copy(std::span<cplx> dst, std::span<const cplx> src, double scale);

}  // namespace serial

// OpenMP variants; fall back to the serial loop below a size threshold where
// thread startup would dominate.
void apply_pauli(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                 double coeff);
void apply_pauli_rotation(std::span<cplx> s, const PauliMasks& m, double angle);
void accumulate_pauli_term(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                           double coeff);
void scale_copy(std::span<cplx> dst, std::span<const cplx> src, double scale);

}  // namespace qsde::kernels
