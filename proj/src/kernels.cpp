#include "qsde/kernels.hpp"

#include <bit>
#include <cmath>

namespace qsde::kernels {

namespace {

// Below this size the serial loop wins; also keeps trajectory-level OpenMP
// from fighting amplitude-level OpenMP on small states.
constexpr std::size_t kParallelThreshold = std::size_t{1} << 16;

inline double z_sign(std::uint64_t b, std::uint64_t mz) {
    return (std::popcount(b & mz) & 1) ? -1.0 : 1.0;
}

}  // namespace

namespace serial {

void apply_pauli(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                 double coeff) {
    const std::size_t n = src.size();
    const cplx base = m.base_phase * coeff;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t b = j ^ m.mx;
        dst[j] = base * z_sign(b, m.mz) * src[b];
    }
}

void apply_pauli_rotation(std::span<cplx> s, const PauliMasks& m, double angle) {
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    const std::size_t n = s.size();
    if (m.mx == 0) {
        // Diagonal string: amplitudes pick up e^{-i angle (+/-1)}.
        const cplx phase_plus(c, -sn);
        const cplx phase_minus(c, sn);
        for (std::size_t j = 0; j < n; ++j)
            s[j] *= (std::popcount(j & m.mz) & 1) ? phase_minus : phase_plus;
        return;
    }
    const std::uint64_t pivot = m.mx & (~m.mx + 1);  // lowest flipped bit
    const std::uint64_t lo = pivot - 1;
    const cplx mis = cplx(0, -sn) * m.base_phase;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::uint64_t j = ((i & ~lo) << 1) | (i & lo);
        const std::uint64_t k = j ^ m.mx;
        const cplx aj = s[j];
        const cplx ak = s[k];
        s[j] = c * aj + mis * z_sign(k, m.mz) * ak;
        s[k] = c * ak + mis * z_sign(j, m.mz) * aj;
    }
}

void accumulate_pauli_term(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                           double coeff) {
    const std::size_t n = src.size();
    const cplx factor = cplx(0, -coeff) * m.base_phase;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t b = j ^ m.mx;
        dst[j] += factor * z_sign(b, m.mz) * src[b];
    }
}

void scale_copy(std::span<cplx> dst, std::span<const cplx> src, double scale) {
    const std::size_t n = src.size();
    for (std::size_t j = 0; j < n; ++j) dst[j] = scale * src[j];
}

}  // namespace serial

void apply_pauli(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                 double coeff) {
    const std::size_t n = src.size();
    if (n < kParallelThreshold) {
        serial::apply_pauli(dst, src, m, coeff);
        return;
    }
    const cplx base = m.base_phase * coeff;
#pragma omp parallel for
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
        const std::uint64_t b = static_cast<std::uint64_t>(j) ^ m.mx;
        dst[static_cast<std::size_t>(j)] = base * z_sign(b, m.mz) * src[b];
    }
}

void apply_pauli_rotation(std::span<cplx> s, const PauliMasks& m, double angle) {
    const std::size_t n = s.size();
    if (n < kParallelThreshold) {
        serial::apply_pauli_rotation(s, m, angle);
        return;
    }
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    if (m.mx == 0) {
        const cplx phase_plus(c, -sn);
        const cplx phase_minus(c, sn);
#pragma omp parallel for
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j)
            s[static_cast<std::size_t>(j)] *=
                (std::popcount(static_cast<std::uint64_t>(j) & m.mz) & 1) ? phase_minus
                                                                          : phase_plus;
        return;
    }
    const std::uint64_t pivot = m.mx & (~m.mx + 1);
    const std::uint64_t lo = pivot - 1;
    const cplx mis = cplx(0, -sn) * m.base_phase;
#pragma omp parallel for
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n / 2); ++i) {
        const std::uint64_t u = static_cast<std::uint64_t>(i);
        const std::uint64_t j = ((u & ~lo) << 1) | (u & lo);
        const std::uint64_t k = j ^ m.mx;
        const cplx aj = s[j];
        const cplx ak = s[k];
        s[j] = c * aj + mis * z_sign(k, m.mz) * ak;
        s[k] = c * ak + mis * z_sign(j, m.mz) * aj;
    }
}

void accumulate_pauli_term(std::span<cplx> dst, std::span<const cplx> src, const PauliMasks& m,
                           double coeff) {
    const std::size_t n = src.size();
    if (n < kParallelThreshold) {
        serial::accumulate_pauli_term(dst, src, m, coeff);
        return;
    }
    const cplx factor = cplx(0, -coeff) * m.base_phase;
#pragma omp parallel for
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
        const std::uint64_t b = static_cast<std::uint64_t>(j) ^ m.mx;
        dst[static_cast<std::size_t>(j)] += factor * z_sign(b, m.mz) * src[b];
    }
}

void scale_copy(std::span<cplx> dst, std::span<const cplx> src, double scale) {
    const std::size_t n = src.size();
    if (n < kParallelThreshold) {
        serial::scale_copy(dst, src, scale);
        return;
    }
#pragma omp parallel for
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j)
        dst[static_cast<std::size_t>(j)] = scale * src[static_cast<std::size_t>(j)];
}

}  // namespace qsde::kernels
