#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsde/integrate.hpp"
#include "qsde/models.hpp"

namespace qsde {

struct PlanSpec {
    double margin_c = 100.0;
    double p_star = 0.95;
    std::uint64_t trials = 200;
    std::vector<double> gammas;
    struct Contrast {
        bool enabled = false;
        std::uint64_t r = 1;
        double gamma = 2.0;
    } contrast;
};

struct SweepSpec {
    std::vector<double> g_grid;   // exactly one of g_grid / gammas is given
    std::vector<double> gammas;
    double p_star = 0.95;
    std::uint64_t trials = 100;
    std::uint64_t r_cap = 100000;
};

// Parsed and validated experiment description (see README for the schema).
struct ExperimentConfig {
    nlohmann::ordered_json echo;  // canonical form with defaults filled

    int n_qubits = 0;
    std::optional<HamiltonianSchedule> hamiltonian;
    NoiseSpec noise;
    std::optional<StateVector> initial_state;

    std::optional<AnnealingProblem> anneal;  // present for the tfim_anneal builder
    std::optional<char> per_qubit_letter;    // present for the per_qubit noise builder
    std::optional<double> per_qubit_constant_g;

    double total_time = 0.0;
    double dt = 0.0;
    Scheme scheme = Scheme::StratonovichSplitting;
    bool renormalize_each_step = false;
    std::optional<std::uint64_t> r;

    enum class TargetKind { Index, IsingGround, Argmax };
    TargetKind target_kind = TargetKind::Argmax;
    std::uint64_t target_index = 0;

    std::uint64_t root_seed = 0;

    PlanSpec plan;
    SweepSpec sweep;
    double oracle_tolerance = 1e-8;
    bool dump_trajectories = false;

    TrajectoryConfig trajectory_config() const;
    TrajectoryConfig trajectory_config(double dt_override) const;

    // Index target directly; Ising ground by brute force; argmax from the
    // reference state (|amplitude|, lowest index on ties).
    std::uint64_t resolve_target(const StateVector* psi_reference) const;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;    // all violations, not just the first
    std::vector<std::string> warnings;  // unknown keys under lenient mode
};

// Strict mode rejects unknown keys; lenient downgrades them to warnings.
ParseResult parse_config(const std::string& text, bool lenient = false);

}  // namespace qsde
