#include "qsde/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsde/rng.hpp"

namespace qsde {

BrownianPath BrownianPath::generate(std::uint64_t seed, std::size_t channels, double total_time,
                                    double dt) {
    if (dt <= 0.0) throw std::invalid_argument("BrownianPath: dt must be positive");
    const double ratio = total_time / dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(n_steps)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("BrownianPath: dt does not divide total_time");

    BrownianPath path;
    path.dt = dt;
    path.n_steps = n_steps;
    path.channels = channels;
    path.increments.resize(n_steps * channels);

    RngStream rng(seed, /*stream=*/0, /*purpose=*/0);
    const double scale = std::sqrt(dt);
    for (std::size_t j = 0; j < n_steps; ++j)
        for (std::size_t k = 0; k < channels; ++k)
            path.increments[j * channels + k] = scale * rng.normal();
    return path;
}

double BrownianPath::total(std::size_t k) const {
    double w = 0.0;
    for (std::size_t j = 0; j < n_steps; ++j) w += increments[j * channels + k];
    return w;
}

BrownianPath BrownianPath::coarsen(std::size_t factor) const {
    if (factor == 0 || n_steps % factor != 0)
        throw std::invalid_argument("BrownianPath::coarsen: factor must divide n_steps");
    BrownianPath out;
    out.dt = dt * static_cast<double>(factor);
    out.n_steps = n_steps / factor;
    out.channels = channels;
    out.increments.assign(out.n_steps * channels, 0.0);
    for (std::size_t j = 0; j < n_steps; ++j)
        for (std::size_t k = 0; k < channels; ++k)
            out.increments[(j / factor) * channels + k] += increments[j * channels + k];
    return out;
}

}  // namespace qsde
