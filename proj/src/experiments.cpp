#include "qsde/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "qsde/dense.hpp"
#include "qsde/ensemble.hpp"
#include "qsde/output.hpp"
#include "qsde/threshold.hpp"

namespace qsde::experiments {

using nlohmann::ordered_json;

namespace {

ordered_json base_summary(const ExperimentConfig& cfg, const std::string& command) {
    ordered_json summary;
    summary["command"] = command;
    summary["config"] = cfg.echo;
    return summary;
}

struct Reference {
    StateVector psi;
    std::uint64_t target = 0;
    std::complex<double> c_m;
    double epsilon = 0.0;
    std::complex<double> phase_u{1.0, 0.0};
};

Reference make_reference(const ExperimentConfig& cfg, double dt) {
    Reference ref{evolve_noiseless_reference(*cfg.hamiltonian, *cfg.initial_state, dt)};
    ref.target = cfg.resolve_target(&ref.psi);
    ref.c_m = ref.psi.amplitude(ref.target);
    const double mag = std::abs(ref.c_m);
    if (mag < 1e-12)
        throw std::runtime_error("reference target amplitude vanishes; pick another target");
    ref.epsilon = 1.0 - mag;
    ref.phase_u = std::conj(ref.c_m) / mag;
    return ref;
}

ordered_json reference_block(const Reference& ref) {
    ordered_json j;
    j["target_index"] = ref.target;
    j["c_m_re"] = ref.c_m.real();
    j["c_m_im"] = ref.c_m.imag();
    j["c_m_abs"] = std::abs(ref.c_m);
    j["epsilon"] = ref.epsilon;
    j["phase_u_re"] = ref.phase_u.real();
    j["phase_u_im"] = ref.phase_u.imag();
    return j;
}

ordered_json ensemble_block(const EnsembleStatistics& stats) {
    const auto mean = stats.mean_target_amplitude();
    const auto rescaled = rescaled_mean_amplitude(stats);
    ordered_json j;
    j["r"] = stats.r();
    j["gamma"] = stats.gamma();
    j["mean_re"] = mean.real();
    j["mean_im"] = mean.imag();
    j["se_re"] = stats.se_re();
    j["se_im"] = stats.se_im();
    ordered_json counts = ordered_json::object();
    for (const auto& [outcome, count] : stats.outcome_counts())
        counts[std::to_string(outcome)] = count;
    j["outcome_counts"] = std::move(counts);
    j["rescaled_mean_re"] = rescaled.value.real();
    j["rescaled_mean_im"] = rescaled.value.imag();
    j["rescaled_se_re"] = rescaled.se_re;
    j["rescaled_se_im"] = rescaled.se_im;
    return j;
}

}  // namespace

Artifacts run_noiseless(const ExperimentConfig& cfg, bool dt_halve) {
    Artifacts artifacts;
    artifacts.summary = base_summary(cfg, "noiseless");

    const Reference ref = make_reference(cfg, cfg.dt);
    ordered_json results = reference_block(ref);
    results["dt"] = cfg.dt;
    results["norm"] = ref.psi.norm();

    CsvFile amplitudes{"amplitudes.csv", "index,re,im,prob", {}};
    const auto amps = ref.psi.amplitudes();
    for (std::uint64_t j = 0; j < amps.size(); ++j)
        amplitudes.rows.push_back({std::to_string(j), out::format_double(amps[j].real()),
                                   out::format_double(amps[j].imag()),
                                   out::format_double(std::norm(amps[j]))});
    artifacts.series.push_back(std::move(amplitudes));

    if (dt_halve) {
        const Reference fine = make_reference(cfg, 0.5 * cfg.dt);
        double max_delta = 0.0;
        for (std::uint64_t j = 0; j < ref.psi.dim(); ++j)
            max_delta = std::max(max_delta,
                                 std::abs(fine.psi.amplitude(j) - ref.psi.amplitude(j)));
        ordered_json halved = reference_block(fine);
        halved["dt"] = 0.5 * cfg.dt;
        halved["max_component_delta_vs_dt"] = max_delta;
        results["dt_halved"] = std::move(halved);
    }

    artifacts.summary["results"] = std::move(results);
    return artifacts;
}

Artifacts run_ensemble_command(const ExperimentConfig& cfg, bool dt_halve,
                               bool dump_trajectories) {
    if (!cfg.r) throw std::invalid_argument("run.r: required for the ensemble subcommand");

    Artifacts artifacts;
    artifacts.summary = base_summary(cfg, "ensemble");

    const Reference ref = make_reference(cfg, cfg.dt);

    EnsembleOptions options;
    options.keep_records = dump_trajectories;
    options.phase_factor = ref.phase_u;
    const auto result =
        run_ensemble(cfg.trajectory_config(), ref.target, *cfg.r, cfg.root_seed, options);

    ordered_json results = ensemble_block(result.stats);
    results["reference"] = reference_block(ref);
    results["dt"] = cfg.dt;

    CsvFile outcomes{"outcomes.csv", "outcome,count", {}};
    for (const auto& [outcome, count] : result.stats.outcome_counts())
        outcomes.rows.push_back({std::to_string(outcome), std::to_string(count)});
    artifacts.series.push_back(std::move(outcomes));

    if (dump_trajectories) {
        CsvFile dump{"trajectories.csv",
                     "trajectory_index,outcome,amplitude_re,amplitude_im,final_norm",
                     {}};
        for (const auto& rec : result.records)
            dump.rows.push_back({std::to_string(rec.trajectory_index),
                                 std::to_string(rec.measurement_outcome),
                                 out::format_double(rec.target_amplitude.real()),
                                 out::format_double(rec.target_amplitude.imag()),
                                 out::format_double(rec.final_norm)});
        artifacts.series.push_back(std::move(dump));
    }

    if (dt_halve) {
        const Reference fine = make_reference(cfg, 0.5 * cfg.dt);
        EnsembleOptions fine_options;
        fine_options.phase_factor = fine.phase_u;
        const auto fine_result = run_ensemble(cfg.trajectory_config(0.5 * cfg.dt), fine.target,
                                              *cfg.r, cfg.root_seed, fine_options);
        ordered_json halved = ensemble_block(fine_result.stats);
        halved["dt"] = 0.5 * cfg.dt;
        const auto a = rescaled_mean_amplitude(result.stats);
        const auto b = rescaled_mean_amplitude(fine_result.stats);
        halved["rescaled_mean_gap"] = std::abs(a.value - b.value);
        halved["combined_se"] =
            std::hypot(std::hypot(a.se_re, b.se_re), std::hypot(a.se_im, b.se_im));
        results["dt_halved"] = std::move(halved);
    }

    artifacts.summary["results"] = std::move(results);
    return artifacts;
}

Artifacts run_verify_theorem(const ExperimentConfig& cfg) {
    if (cfg.plan.gammas.empty())
        throw std::invalid_argument("plan.gammas: required for the verify-theorem subcommand");
    const double gamma_base = gamma_integral(cfg.noise, cfg.total_time);
    if (gamma_base <= 0.0)
        throw std::invalid_argument(
            "noise: verify-theorem needs a non-zero noise model to scale to the requested "
            "gammas");

    Artifacts artifacts;
    artifacts.summary = base_summary(cfg, "verify-theorem");

    const Reference ref = make_reference(cfg, cfg.dt);
    ordered_json results;
    results["reference"] = reference_block(ref);
    results["margin_c"] = cfg.plan.margin_c;
    results["p_star"] = cfg.plan.p_star;
    results["trials"] = cfg.plan.trials;

    CsvFile series{"theorem_ensembles.csv",
                   "gamma,ensemble,hit,rescaled_re,rescaled_im,se_re,se_im",
                   {}};

    auto run_one = [&](const ThresholdPlan& plan, std::uint64_t salt) {
        const double factor = std::sqrt(plan.gamma / gamma_base);
        TrajectoryConfig traj(*cfg.hamiltonian, cfg.noise.scaled(factor), *cfg.initial_state,
                              cfg.dt, cfg.scheme, cfg.renormalize_each_step);
        const auto report = verify_theorem(traj, ref.target, plan, cfg.plan.trials,
                                           derive_seed(cfg.root_seed, {salt}), ref.phase_u);
        for (std::uint64_t m = 0; m < report.per_ensemble.size(); ++m) {
            const auto& diag = report.per_ensemble[m];
            series.rows.push_back({out::format_double(plan.gamma), std::to_string(m),
                                   diag.hit ? "1" : "0", out::format_double(diag.rescaled_re),
                                   out::format_double(diag.rescaled_im),
                                   out::format_double(diag.se_re),
                                   out::format_double(diag.se_im)});
        }
        ordered_json j;
        j["gamma"] = plan.gamma;
        j["epsilon"] = plan.epsilon;
        j["delta"] = plan.delta;
        j["alpha"] = plan.alpha;
        j["r"] = plan.r;
        j["inequality_holds"] = plan.satisfies_inequality();
        j["trials"] = report.trials;
        j["hit_count"] = report.hit_count;
        j["empirical_success"] = report.empirical_success;
        j["meets_p_star"] = report.empirical_success >= cfg.plan.p_star;
        return j;
    };

    ordered_json plans = ordered_json::array();
    for (std::size_t gi = 0; gi < cfg.plan.gammas.size(); ++gi) {
        const auto plan = plan_parameters(ref.epsilon, cfg.plan.gammas[gi], cfg.plan.margin_c);
        plans.push_back(run_one(plan, gi));
    }
    results["plans"] = std::move(plans);

    if (cfg.plan.contrast.enabled) {
        ThresholdPlan contrast;
        contrast.epsilon = ref.epsilon;
        contrast.gamma = cfg.plan.contrast.gamma;
        const double slack = 1.0 - ref.epsilon;
        contrast.delta = slack / 3.0;
        contrast.alpha = slack / 3.0 * std::exp(-contrast.gamma);
        contrast.r = cfg.plan.contrast.r;  // deliberately starved of measurements
        contrast.margin_c = 0.0;
        ordered_json j = run_one(contrast, 0xC0u);
        j["forced_r"] = true;
        results["contrast"] = std::move(j);
    }

    artifacts.summary["results"] = std::move(results);
    artifacts.series.push_back(std::move(series));
    return artifacts;
}

Artifacts run_sweep(const ExperimentConfig& cfg) {
    if (!cfg.per_qubit_letter || !cfg.per_qubit_constant_g)
        throw std::invalid_argument(
            "noise: the sweep subcommand needs the per_qubit builder with a constant strength");
    if (cfg.sweep.g_grid.empty() && cfg.sweep.gammas.empty())
        throw std::invalid_argument("sweep: give g_grid or gammas");

    std::vector<double> grid = cfg.sweep.g_grid;
    if (grid.empty()) {
        // Gamma = K g^2 T / 2 for K identical constant channels.
        const double K = static_cast<double>(cfg.noise.size());
        for (double gamma : cfg.sweep.gammas)
            grid.push_back(std::sqrt(2.0 * gamma / (K * cfg.total_time)));
    }

    Artifacts artifacts;
    artifacts.summary = base_summary(cfg, "sweep");

    const Reference ref = make_reference(cfg, cfg.dt);

    auto make_config = [&](double g) {
        return TrajectoryConfig(*cfg.hamiltonian,
                                per_qubit_noise(cfg.n_qubits, *cfg.per_qubit_letter,
                                                Schedule::constant(g)),
                                *cfg.initial_state, cfg.dt, cfg.scheme,
                                cfg.renormalize_each_step);
    };

    const auto table =
        sweep_noise_strength(make_config, ref.target, grid, cfg.sweep.p_star, cfg.sweep.trials,
                             cfg.sweep.r_cap, derive_seed(cfg.root_seed, {0x5EEDu}));

    ordered_json results;
    results["reference"] = reference_block(ref);
    results["p_star"] = cfg.sweep.p_star;
    results["r_cap"] = cfg.sweep.r_cap;

    CsvFile series{"sweep.csv", "g,gamma,min_r,censored,repeats", {}};
    ordered_json rows = ordered_json::array();
    for (const auto& entry : table) {
        series.rows.push_back({out::format_double(entry.g), out::format_double(entry.gamma),
                               std::to_string(entry.min_r), entry.censored ? "1" : "0",
                               std::to_string(entry.repeats)});
        ordered_json j;
        j["g"] = entry.g;
        j["gamma"] = entry.gamma;
        j["min_r"] = entry.min_r;
        j["censored"] = entry.censored;
        j["repeats"] = entry.repeats;
        rows.push_back(std::move(j));
    }
    results["table"] = std::move(rows);

    artifacts.summary["results"] = std::move(results);
    artifacts.series.push_back(std::move(series));
    return artifacts;
}

Artifacts run_oracle_check(const ExperimentConfig& cfg, bool dt_halve) {
    Artifacts artifacts;
    artifacts.summary = base_summary(cfg, "oracle-check");

    const double gamma = gamma_integral(cfg.noise, cfg.total_time);

    auto check_at = [&](double dt) {
        const StateVector psi = evolve_noiseless_reference(*cfg.hamiltonian, *cfg.initial_state, dt);
        const StateVector mean =
            evolve_mean_state_oracle(*cfg.hamiltonian, cfg.noise, *cfg.initial_state, dt);
        const double boost = std::exp(gamma);
        double max_delta = 0.0;
        for (std::uint64_t j = 0; j < psi.dim(); ++j)
            max_delta =
                std::max(max_delta, std::abs(boost * mean.amplitude(j) - psi.amplitude(j)));
        ordered_json j;
        j["dt"] = dt;
        j["gamma"] = gamma;
        j["mean_state_norm"] = mean.norm();
        j["max_component_delta"] = max_delta;
        j["tolerance"] = cfg.oracle_tolerance;
        j["pass"] = max_delta < cfg.oracle_tolerance;
        return j;
    };

    ordered_json results = check_at(cfg.dt);
    bool pass = results["pass"].get<bool>();
    if (dt_halve) {
        ordered_json halved = check_at(0.5 * cfg.dt);
        pass = pass && halved["pass"].get<bool>();
        results["dt_halved"] = std::move(halved);
    }
    artifacts.summary["results"] = std::move(results);
    artifacts.exit_code = pass ? 0 : 3;
    return artifacts;
}

void write_artifacts(const Artifacts& artifacts, const std::string& dir) {
    const std::filesystem::path base(dir);
    out::write_summary(base / "summary.json", artifacts.summary);
    for (const auto& csv : artifacts.series)
        out::write_csv(base / csv.name, csv.header, csv.rows);
}

}  // namespace qsde::experiments
