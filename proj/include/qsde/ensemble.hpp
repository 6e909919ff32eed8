#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qsde/integrate.hpp"

namespace qsde {

struct TrajectoryRecord {
    std::uint64_t trajectory_index = 0;
    std::uint64_t measurement_outcome = 0;
    std::complex<double> target_amplitude;  // raw C_{i,m}, phase not yet aligned
    double final_norm = 1.0;
};

// Ensemble tallies. Amplitude sums are kept as 2^-53-quantized integers so
// that merging partial results is exactly associative and the statistics are
// bit-identical for any worker count or merge order. The quantization error
// (~1e-16 per sample) is far below every statistical tolerance in play.
class EnsembleStatistics {
public:
    EnsembleStatistics() = default;
    EnsembleStatistics(double gamma, std::complex<double> phase_factor);

    // Accumulates the phase-aligned amplitude u * C_{i,m} and the outcome.
    void add(const TrajectoryRecord& rec);

    static EnsembleStatistics merge(const EnsembleStatistics& a, const EnsembleStatistics& b);

    std::uint64_t r() const { return r_; }
    const std::map<std::uint64_t, std::uint64_t>& outcome_counts() const { return counts_; }

    std::complex<double> mean_target_amplitude() const;  // mean of u * C_{i,m}
    double se_re() const;  // standard error of the real part of the mean
    double se_im() const;

    double gamma() const { return gamma_; }
    std::complex<double> phase_factor() const { return phase_u_; }

    bool operator==(const EnsembleStatistics& other) const = default;

private:
    static constexpr double kScale = 9007199254740992.0;  // 2^53
    static std::int64_t quantize(double v);

    double gamma_ = 0.0;
    std::complex<double> phase_u_{1.0, 0.0};
    std::uint64_t r_ = 0;
    __int128 sum_re_ = 0, sum_im_ = 0;
    __int128 sum_re2_ = 0, sum_im2_ = 0;
    std::map<std::uint64_t, std::uint64_t> counts_;
};

struct RescaledMean {
    std::complex<double> value;  // u * e^Gamma * mean C_{i,m}
    double se_re = 0.0;          // standard errors scaled by e^Gamma
    double se_im = 0.0;
};

RescaledMean rescaled_mean_amplitude(const EnsembleStatistics& stats);

struct EnsembleOptions {
    bool keep_records = false;
    std::complex<double> phase_factor{1.0, 0.0};  // u from the noiseless reference
    std::uint64_t first_trajectory_index = 0;     // for mergeable partial runs
};

struct EnsembleResult {
    EnsembleStatistics stats;
    std::vector<TrajectoryRecord> records;  // empty unless keep_records
};

// r independent trajectories, each measured once. Trajectory i derives its
// streams from (root_seed, first_trajectory_index + i), so the result does
// not depend on thread count or scheduling.
EnsembleResult run_ensemble(const TrajectoryConfig& cfg, std::uint64_t target_index,
                            std::uint64_t r, std::uint64_t root_seed,
                            const EnsembleOptions& options = {});

bool target_found(std::span<const TrajectoryRecord> records, std::uint64_t target_index);

// Mean of |C_{i,m}|^2 over the records.
double empirical_weight(std::span<const TrajectoryRecord> records);

}  // namespace qsde
