#pragma once

#include <cstdint>
#include <vector>

namespace qsde {

// Brownian increments for K channels over n_steps steps of size dt, each
// increment Normal(0, dt). Fully determined by (seed, K, n_steps, dt);
// increments are drawn step-major (all channels of step 0, then step 1, ...).
struct BrownianPath {
    double dt = 0.0;
    std::size_t n_steps = 0;
    std::size_t channels = 0;
    std::vector<double> increments;  // [step * channels + k]

    static BrownianPath generate(std::uint64_t seed, std::size_t channels, double total_time,
                                 double dt);

    double increment(std::size_t step, std::size_t k) const {
        return increments[step * channels + k];
    }

    // W_k at the final time.
    double total(std::size_t k) const;

    // Sums consecutive groups of `factor` increments; the refined path and
    // its coarsening share the same underlying Brownian motion.
    BrownianPath coarsen(std::size_t factor) const;
};

}  // namespace qsde
