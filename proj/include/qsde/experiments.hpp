#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qsde/config.hpp"

namespace qsde::experiments {

struct CsvFile {
    std::string name;  // file name within the output directory
    std::string header;
    std::vector<std::vector<std::string>> rows;
};

struct Artifacts {
    nlohmann::ordered_json summary;
    std::vector<CsvFile> series;
    int exit_code = 0;  // 0 ok, 3 oracle-check mismatch
};

// Subcommand bodies. Each is deterministic in (config, seed) alone; thread
// count only changes wall time. Validation that depends on the subcommand
// (e.g. ensemble requires run.r) throws std::invalid_argument, which the CLI
// maps to exit code 2.
Artifacts run_noiseless(const ExperimentConfig& cfg, bool dt_halve);
Artifacts run_ensemble_command(const ExperimentConfig& cfg, bool dt_halve, bool dump_trajectories);
Artifacts run_verify_theorem(const ExperimentConfig& cfg);
Artifacts run_sweep(const ExperimentConfig& cfg);
Artifacts run_oracle_check(const ExperimentConfig& cfg, bool dt_halve);

// Writes summary.json plus all CSV series into `dir` (atomically).
void write_artifacts(const Artifacts& artifacts, const std::string& dir);

}  // namespace qsde::experiments
