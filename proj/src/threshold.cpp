#include "qsde/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsde/rng.hpp"

namespace qsde {

bool ThresholdPlan::satisfies_inequality() const {
    return check_inequality(epsilon, delta, alpha, gamma);
}

bool ThresholdPlan::satisfies_r_bounds() const {
    const double need = margin_c * std::max(1.0 / (delta * delta), 1.0 / (alpha * alpha));
    return static_cast<double>(r) >= need;
}

ThresholdPlan plan_parameters(double epsilon, double gamma, double margin_c) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("plan_parameters: epsilon must lie in (0, 1)");
    if (gamma < 0.0) throw std::invalid_argument("plan_parameters: gamma must be >= 0");
    if (margin_c < 1.0) throw std::invalid_argument("plan_parameters: margin_c must be >= 1");
    const double slack = 1.0 - epsilon;
    ThresholdPlan plan;
    plan.epsilon = epsilon;
    plan.gamma = gamma;
    plan.margin_c = margin_c;
    plan.delta = slack / 3.0;
    plan.alpha = slack / 3.0 * std::exp(-gamma);
    const double need =
        margin_c * std::max(1.0 / (plan.delta * plan.delta), 1.0 / (plan.alpha * plan.alpha));
    plan.r = static_cast<std::uint64_t>(std::ceil(need));
    return plan;
}

bool check_inequality(double epsilon, double delta, double alpha, double gamma) {
    return epsilon + delta + alpha * std::exp(gamma) < 1.0;
}

TheoremReport verify_theorem(const TrajectoryConfig& cfg, std::uint64_t target_index,
                             const ThresholdPlan& plan, std::uint64_t trials,
                             std::uint64_t root_seed, std::complex<double> phase_u) {
    if (trials < 1) throw std::invalid_argument("verify_theorem: trials must be >= 1");
    if (plan.r < 1) throw std::invalid_argument("verify_theorem: plan.r must be >= 1");

    TheoremReport report;
    report.plan = plan;
    report.trials = trials;
    report.per_ensemble.resize(trials);

    EnsembleOptions options;
    options.keep_records = true;
    options.phase_factor = phase_u;

    for (std::uint64_t m = 0; m < trials; ++m) {
        const auto result = run_ensemble(cfg, target_index, plan.r,
                                         derive_seed(root_seed, {m}), options);
        const auto rescaled = rescaled_mean_amplitude(result.stats);
        EnsembleDiagnostic diag;
        diag.hit = target_found(result.records, target_index);
        diag.rescaled_re = rescaled.value.real();
        diag.rescaled_im = rescaled.value.imag();
        diag.se_re = rescaled.se_re;
        diag.se_im = rescaled.se_im;
        report.per_ensemble[m] = diag;
        if (diag.hit) ++report.hit_count;
    }
    report.empirical_success =
        static_cast<double>(report.hit_count) / static_cast<double>(trials);
    return report;
}

HoeffdingReport hoeffding_empirical_check(const TrajectoryConfig& cfg, std::uint64_t target_index,
                                          std::uint64_t r, double delta, std::uint64_t trials,
                                          std::uint64_t root_seed) {
    if (r < 1 || trials < 1)
        throw std::invalid_argument("hoeffding_empirical_check: r and trials must be >= 1");
    if (delta <= 0.0) throw std::invalid_argument("hoeffding_empirical_check: delta must be > 0");

    const auto reference =
        solve_reference(cfg.hamiltonian, cfg.initial_state, cfg.dt, target_index);

    HoeffdingReport report;
    report.r = r;
    report.trials = trials;
    report.delta = delta;
    report.gamma = gamma_integral(cfg.noise, cfg.hamiltonian.total_time());
    report.epsilon = reference.epsilon;
    report.bound = 2.0 * std::exp(-static_cast<double>(r) * delta * delta / 2.0);

    EnsembleOptions options;
    options.phase_factor = reference.phase_u;
    const double expected_re = 1.0 - reference.epsilon;

    for (std::uint64_t m = 0; m < trials; ++m) {
        const auto result =
            run_ensemble(cfg, target_index, r, derive_seed(root_seed, {m}), options);
        const auto rescaled = rescaled_mean_amplitude(result.stats);
        if (std::abs(rescaled.value.real() - expected_re) > delta) ++report.re_violations;
        if (std::abs(rescaled.value.imag()) > delta) ++report.im_violations;
    }
    return report;
}

namespace {

// Success frequency of `repeats` independent ensembles of size r.
double probe_success(const TrajectoryConfig& cfg, std::uint64_t target_index, std::uint64_t r,
                     std::uint64_t repeats, std::uint64_t probe_seed) {
    EnsembleOptions options;
    options.keep_records = true;
    std::uint64_t hits = 0;
    for (std::uint64_t m = 0; m < repeats; ++m) {
        const auto result =
            run_ensemble(cfg, target_index, r, derive_seed(probe_seed, {m}), options);
        if (target_found(result.records, target_index)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(repeats);
}

}  // namespace

std::vector<SweepEntry> sweep_noise_strength(
    const std::function<TrajectoryConfig(double)>& make_config, std::uint64_t target_index,
    const std::vector<double>& g_grid, double p_star, std::uint64_t repeats, std::uint64_t r_cap,
    std::uint64_t root_seed) {
    if (g_grid.empty()) throw std::invalid_argument("sweep_noise_strength: empty grid");
    if (!(p_star > 0.0 && p_star <= 1.0))
        throw std::invalid_argument("sweep_noise_strength: p_star must lie in (0, 1]");
    if (repeats < 1 || r_cap < 1)
        throw std::invalid_argument("sweep_noise_strength: repeats and r_cap must be >= 1");

    std::vector<SweepEntry> table;
    table.reserve(g_grid.size());

    for (std::size_t gi = 0; gi < g_grid.size(); ++gi) {
        const double g = g_grid[gi];
        const TrajectoryConfig cfg = make_config(g);
        SweepEntry entry;
        entry.g = g;
        entry.gamma = gamma_integral(cfg.noise, cfg.hamiltonian.total_time());
        entry.repeats = repeats;

        auto success_at = [&](std::uint64_t r) {
            return probe_success(cfg, target_index, r, repeats,
                                 derive_seed(root_seed, {gi, r}));
        };

        // Doubling bracket, then bisection on the (noisy, statistically
        // monotone) success curve.
        std::uint64_t lo = 0;
        std::uint64_t hi = 1;
        bool reached = false;
        while (true) {
            if (success_at(hi) >= p_star) {
                reached = true;
                break;
            }
            if (hi >= r_cap) break;
            lo = hi;
            hi = std::min(hi * 2, r_cap);
        }
        if (!reached) {
            entry.censored = true;
            entry.min_r = r_cap;
            table.push_back(entry);
            continue;
        }
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (success_at(mid) >= p_star)
                hi = mid;
            else
                lo = mid;
        }
        entry.min_r = hi;
        table.push_back(entry);
    }
    return table;
}

}  // namespace qsde
