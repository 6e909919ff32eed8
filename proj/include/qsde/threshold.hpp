#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qsde/ensemble.hpp"
#include "qsde/integrate.hpp"

namespace qsde {

// Parameter bundle for the measurement-count guarantee: with
// epsilon + delta + alpha e^gamma < 1 and r >> 1/delta^2, 1/alpha^2, the
// target outcome appears among r measurements.
struct ThresholdPlan {
    double epsilon = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    std::uint64_t r = 0;
    double margin_c = 1.0;  // the ">>" multiplier: r >= c/delta^2 and c/alpha^2

    bool satisfies_inequality() const;
    bool satisfies_r_bounds() const;
};

// Slack policy: s = 1 - epsilon, delta = s/3, alpha = (s/3) e^-gamma,
// r = ceil(c * max(1/delta^2, 1/alpha^2)). Guarantees
// epsilon + delta + alpha e^gamma = epsilon + 2s/3 < 1.
ThresholdPlan plan_parameters(double epsilon, double gamma, double margin_c);

bool check_inequality(double epsilon, double delta, double alpha, double gamma);

struct EnsembleDiagnostic {
    bool hit = false;              // target appeared among the r outcomes
    double rescaled_re = 0.0;      // e^gamma * mean of Re(u C_{i,m})
    double rescaled_im = 0.0;
    double se_re = 0.0;
    double se_im = 0.0;
};

struct TheoremReport {
    ThresholdPlan plan;
    std::uint64_t trials = 0;
    std::uint64_t hit_count = 0;
    double empirical_success = 0.0;
    std::vector<EnsembleDiagnostic> per_ensemble;
};

// Runs M independent ensembles of size plan.r; success = target found.
TheoremReport verify_theorem(const TrajectoryConfig& cfg, std::uint64_t target_index,
                             const ThresholdPlan& plan, std::uint64_t trials,
                             std::uint64_t root_seed, std::complex<double> phase_u);

struct HoeffdingReport {
    std::uint64_t r = 0;
    std::uint64_t trials = 0;
    double delta = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    std::uint64_t re_violations = 0;  // |e^G mean Re(uC) - (1-eps)| > delta
    std::uint64_t im_violations = 0;  // |e^G mean Im(uC)| > delta
    double bound = 0.0;               // 2 exp(-r delta^2 / 2)
};

// Empirical check of the concentration bounds on the rescaled sample means.
// epsilon and u are measured from the noiseless reference internally.
HoeffdingReport hoeffding_empirical_check(const TrajectoryConfig& cfg, std::uint64_t target_index,
                                          std::uint64_t r, double delta, std::uint64_t trials,
                                          std::uint64_t root_seed);

struct SweepEntry {
    double g = 0.0;
    double gamma = 0.0;
    std::uint64_t min_r = 0;
    bool censored = false;  // no r <= r_cap reached the success target
    std::uint64_t repeats = 0;
};

// For each g, finds the smallest r whose empirical success rate over
// `repeats` ensembles reaches p_star (doubling bracket + bisection).
// make_config(g) must build the model with every channel at strength g.
std::vector<SweepEntry> sweep_noise_strength(
    const std::function<TrajectoryConfig(double)>& make_config, std::uint64_t target_index,
    const std::vector<double>& g_grid, double p_star, std::uint64_t repeats, std::uint64_t r_cap,
    std::uint64_t root_seed);

}  // namespace qsde
