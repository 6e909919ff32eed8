// Command-line front end: declarative experiment configs in, deterministic
// JSON/CSV artifacts out. Exit codes: 0 success, 2 validation error,
// 3 oracle-check failure.

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qsde/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "qsde-out";
    std::string threads = "auto";
    bool lenient = false;
    bool dt_halve = false;
    bool dump_trajectories = false;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed_override, "override run.root_seed")
        ->each([&args](const std::string&) { args.has_seed_override = true; });
    cmd->add_option("--threads", args.threads, "worker threads (integer or 'auto')");
    cmd->add_flag("--lenient", args.lenient, "downgrade unknown config keys to warnings");
    cmd->add_flag("--dt-halve", args.dt_halve, "repeat the run at dt/2 (convergence gate)");
    cmd->add_flag("--dump-trajectories", args.dump_trajectories,
                  "write per-trajectory records (ensemble only)");
}

int apply_threads(const std::string& threads) {
    if (threads == "auto") return 0;
    try {
        const int n = std::stoi(threads);
        if (n < 1) throw std::invalid_argument("");
        omp_set_num_threads(n);
        return 0;
    } catch (const std::exception&) {
        std::cerr << "error: --threads must be a positive integer or 'auto'\n";
        return 2;
    }
}

std::optional<qsde::ExperimentConfig> load_config(const CommonArgs& args) {
    std::ifstream f(args.config_path);
    std::stringstream buffer;
    buffer << f.rdbuf();
    auto parsed = qsde::parse_config(buffer.str(), args.lenient);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    if (!parsed.config) {
        for (const auto& e : parsed.errors) std::cerr << "error: " << e << "\n";
        return std::nullopt;
    }
    auto cfg = std::move(*parsed.config);
    if (args.has_seed_override) {
        cfg.root_seed = args.seed_override;
        cfg.echo["run"]["root_seed"] = args.seed_override;
    }
    if (args.dump_trajectories) {
        cfg.dump_trajectories = true;
        cfg.echo["output"]["dump_trajectories"] = true;
    }
    return cfg;
}

int run_command(const CommonArgs& args, const std::string& command) {
    if (const int rc = apply_threads(args.threads); rc != 0) return rc;
    const auto cfg = load_config(args);
    if (!cfg) return 2;

    qsde::experiments::Artifacts artifacts;
    try {
        if (command == "noiseless")
            artifacts = qsde::experiments::run_noiseless(*cfg, args.dt_halve);
        else if (command == "ensemble")
            artifacts = qsde::experiments::run_ensemble_command(*cfg, args.dt_halve,
                                                                cfg->dump_trajectories);
        else if (command == "verify-theorem")
            artifacts = qsde::experiments::run_verify_theorem(*cfg);
        else if (command == "sweep")
            artifacts = qsde::experiments::run_sweep(*cfg);
        else if (command == "oracle-check")
            artifacts = qsde::experiments::run_oracle_check(*cfg, args.dt_halve);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        qsde::experiments::write_artifacts(artifacts, args.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << args.out_dir << "/summary.json\n";
    return artifacts.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic Schrodinger trajectory simulator and threshold harness"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"noiseless", "ensemble", "verify-theorem", "sweep",
                                               "oracle-check"};
    const std::vector<std::string> descriptions = {
        "integrate the noiseless dynamics and report the target amplitude",
        "run r noisy trajectories, one measurement each",
        "check the measurement-count bound on plans built from (epsilon, gamma)",
        "find the minimal r reaching the success target across noise strengths",
        "deterministic rescaling check: e^Gamma * mean-state vs noiseless state"};

    std::vector<CommonArgs> args(commands.size());
    for (std::size_t i = 0; i < commands.size(); ++i)
        add_common(app.add_subcommand(commands[i], descriptions[i]), args[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < commands.size(); ++i)
        if (app.get_subcommand(commands[i])->parsed()) return run_command(args[i], commands[i]);
    return 2;
}
