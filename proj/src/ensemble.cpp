#include "qsde/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsde {

EnsembleStatistics::EnsembleStatistics(double gamma, std::complex<double> phase_factor)
    : gamma_(gamma), phase_u_(phase_factor) {}

std::int64_t EnsembleStatistics::quantize(double v) {
    // Amplitudes are O(1); 2^53 scaling keeps the full double mantissa while
    // staying far from int64 overflow even for |v| up to ~512.
    return std::llround(v * kScale);
}

void EnsembleStatistics::add(const TrajectoryRecord& rec) {
    const std::complex<double> aligned = phase_u_ * rec.target_amplitude;
    const double re = aligned.real();
    const double im = aligned.imag();
    sum_re_ += quantize(re);
    sum_im_ += quantize(im);
    sum_re2_ += quantize(re * re);
    sum_im2_ += quantize(im * im);
    ++r_;
    ++counts_[rec.measurement_outcome];
}

EnsembleStatistics EnsembleStatistics::merge(const EnsembleStatistics& a,
                                             const EnsembleStatistics& b) {
    if (a.gamma_ != b.gamma_ || a.phase_u_ != b.phase_u_)
        throw std::invalid_argument("EnsembleStatistics::merge: mismatched gamma or phase");
    EnsembleStatistics out = a;
    out.r_ += b.r_;
    out.sum_re_ += b.sum_re_;
    out.sum_im_ += b.sum_im_;
    out.sum_re2_ += b.sum_re2_;
    out.sum_im2_ += b.sum_im2_;
    for (const auto& [outcome, count] : b.counts_) out.counts_[outcome] += count;
    return out;
}

namespace {

double dequantize(__int128 sum, double scale, std::uint64_t r) {
    return static_cast<double>(static_cast<long double>(sum) / scale) /
           static_cast<double>(r);
}

}  // namespace

std::complex<double> EnsembleStatistics::mean_target_amplitude() const {
    if (r_ == 0) return {0.0, 0.0};
    return {dequantize(sum_re_, kScale, r_), dequantize(sum_im_, kScale, r_)};
}

double EnsembleStatistics::se_re() const {
    if (r_ < 2) return 0.0;
    const double mean = dequantize(sum_re_, kScale, r_);
    const double mean_sq = dequantize(sum_re2_, kScale, r_);
    const double var = std::max(0.0, mean_sq - mean * mean);
    return std::sqrt(var / static_cast<double>(r_ - 1));
}

double EnsembleStatistics::se_im() const {
    if (r_ < 2) return 0.0;
    const double mean = dequantize(sum_im_, kScale, r_);
    const double mean_sq = dequantize(sum_im2_, kScale, r_);
    const double var = std::max(0.0, mean_sq - mean * mean);
    return std::sqrt(var / static_cast<double>(r_ - 1));
}

RescaledMean rescaled_mean_amplitude(const EnsembleStatistics& stats) {
    const double boost = std::exp(stats.gamma());
    return {boost * stats.mean_target_amplitude(), boost * stats.se_re(), boost * stats.se_im()};
}

EnsembleResult run_ensemble(const TrajectoryConfig& cfg, std::uint64_t target_index,
                            std::uint64_t r, std::uint64_t root_seed,
                            const EnsembleOptions& options) {
    if (r < 1) throw std::invalid_argument("run_ensemble: r must be >= 1");
    if (target_index >= cfg.initial_state.dim())
        throw std::out_of_range("run_ensemble: target index out of range");

    const TrajectoryIntegrator integrator(cfg);
    const double gamma = gamma_integral(cfg.noise, cfg.hamiltonian.total_time());
    const bool strict_norm = cfg.scheme == Scheme::StratonovichSplitting ||
                             cfg.renormalize_each_step;

    std::vector<TrajectoryRecord> records(r);
    std::string failure;

    // Trajectory i is a pure function of (root_seed, index); the loop order
    // and thread count cannot change any record.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(r); ++i) {
        try {
            const std::uint64_t index =
                options.first_trajectory_index + static_cast<std::uint64_t>(i);
            const std::uint64_t path_seed = derive_seed(root_seed, {index, 0});
            const StateVector final_state = integrator.run(path_seed);
            RngStream measure_rng(derive_seed(root_seed, {index, 1}), 0, 0);
            TrajectoryRecord rec;
            rec.trajectory_index = index;
            rec.final_norm = final_state.norm();
            rec.target_amplitude = final_state.amplitude(target_index);
            rec.measurement_outcome =
                strict_norm ? sample_measurement(final_state, measure_rng)
                            : sample_measurement_normalized(final_state, measure_rng);
            records[static_cast<std::size_t>(i)] = rec;
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw std::runtime_error("run_ensemble: " + failure);

    EnsembleResult result{EnsembleStatistics(gamma, options.phase_factor), {}};
    for (const auto& rec : records) result.stats.add(rec);
    if (options.keep_records) result.records = std::move(records);
    return result;
}

bool target_found(std::span<const TrajectoryRecord> records, std::uint64_t target_index) {
    if (records.empty()) throw std::invalid_argument("target_found: no records");
    for (const auto& rec : records)
        if (rec.measurement_outcome == target_index) return true;
    return false;
}

double empirical_weight(std::span<const TrajectoryRecord> records) {
    if (records.empty()) throw std::invalid_argument("empirical_weight: no records");
    double total = 0.0;
    for (const auto& rec : records) total += std::norm(rec.target_amplitude);
    return total / static_cast<double>(records.size());
}

}  // namespace qsde
