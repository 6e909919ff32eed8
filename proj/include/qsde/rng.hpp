#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>

namespace qsde {

// Philox4x32-10 counter-based generator. Each (key, stream, purpose) triple
// names an independent sequence, so trajectory i always sees the same numbers
// no matter which thread runs it or in what order.
class Philox4x32 {
public:
    using result_type = std::uint64_t;

    Philox4x32(std::uint64_t key, std::uint64_t stream, std::uint32_t purpose = 0)
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          ctr_{0, purpose, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (buffered_ == 0) {
            block_ = round10(ctr_, key_);
            ++ctr_[0];  // purpose/stream words stay fixed; 2^32 blocks per sequence
            buffered_ = 2;
        }
        --buffered_;
        const int base = buffered_ ? 0 : 2;
        return static_cast<std::uint64_t>(block_[base]) |
               (static_cast<std::uint64_t>(block_[base + 1]) << 32);
    }

    // One counter block -> four 32-bit words (exposed for known-answer tests).
    static std::array<std::uint32_t, 4> round10(std::array<std::uint32_t, 4> ctr,
                                                std::array<std::uint32_t, 2> key) {
        for (int r = 0; r < 10; ++r) {
            const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> block_{};
    int buffered_ = 0;
};

// splitmix64 finalizer; good enough to decorrelate structured ids.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic seed derivation for nested experiment structure
// (ensemble index, grid point, repeat, ...).
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix64(root);
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
    return h;
}

// Uniform/normal sampling on top of Philox. Box-Muller is used instead of
// std::normal_distribution because the latter's output is
// implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t key, std::uint64_t stream, std::uint32_t purpose = 0)
        : gen_(key, stream, purpose) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    Philox4x32 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qsde
