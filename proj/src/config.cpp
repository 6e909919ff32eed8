#include "qsde/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qsde {

using nlohmann::ordered_json;

namespace {

struct Validator {
    bool lenient = false;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    void fail(const std::string& path, const std::string& message) {
        errors.push_back(path + ": " + message);
    }

    void check_keys(const ordered_json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
        if (!obj.is_object()) return;
        for (const auto& [key, value] : obj.items()) {
            (void)value;
            if (allowed.contains(key)) continue;
            const std::string msg = path + ": unknown key '" + key + "'";
            if (lenient)
                warnings.push_back(msg);
            else
                errors.push_back(msg);
        }
    }

    bool require_object(const ordered_json& parent, const std::string& path,
                        const std::string& key) {
        if (!parent.contains(key)) {
            fail(path + "." + key, "required block missing");
            return false;
        }
        if (!parent.at(key).is_object()) {
            fail(path + "." + key, "must be an object");
            return false;
        }
        return true;
    }

    template <typename T>
    std::optional<T> get(const ordered_json& obj, const std::string& path, const std::string& key,
                         bool required, const char* type_name) {
        if (!obj.contains(key)) {
            if (required) fail(path + "." + key, "required field missing");
            return std::nullopt;
        }
        try {
            return obj.at(key).get<T>();
        } catch (const std::exception&) {
            fail(path + "." + key, std::string("expected ") + type_name);
            return std::nullopt;
        }
    }

    std::optional<double> number(const ordered_json& obj, const std::string& path,
                                 const std::string& key, bool required = false) {
        if (obj.contains(key) && !obj.at(key).is_number()) {
            fail(path + "." + key, "expected a number");
            return std::nullopt;
        }
        return get<double>(obj, path, key, required, "a number");
    }

    std::optional<std::uint64_t> uinteger(const ordered_json& obj, const std::string& path,
                                          const std::string& key, bool required = false) {
        if (obj.contains(key) && !obj.at(key).is_number_unsigned()) {
            fail(path + "." + key, "expected a non-negative integer");
            return std::nullopt;
        }
        return get<std::uint64_t>(obj, path, key, required, "a non-negative integer");
    }

    std::optional<bool> boolean(const ordered_json& obj, const std::string& path,
                                const std::string& key, bool required = false) {
        return get<bool>(obj, path, key, required, "a boolean");
    }

    std::optional<std::string> string(const ordered_json& obj, const std::string& path,
                                      const std::string& key, bool required = false) {
        return get<std::string>(obj, path, key, required, "a string");
    }
};

std::optional<Schedule> parse_schedule(const ordered_json& j, const std::string& path,
                                       Validator& v) {
    if (!j.is_object()) {
        v.fail(path, "schedule must be an object");
        return std::nullopt;
    }
    v.check_keys(j, path, {"kind", "value", "knots"});
    const auto kind = v.string(j, path, "kind", true);
    if (!kind) return std::nullopt;
    try {
        if (*kind == "constant") {
            const auto value = v.number(j, path, "value", true);
            if (!value) return std::nullopt;
            return Schedule::constant(*value);
        }
        if (*kind == "piecewise-linear" || *kind == "piecewise-constant") {
            if (!j.contains("knots") || !j.at("knots").is_array()) {
                v.fail(path + ".knots", "required array of [t, value] pairs");
                return std::nullopt;
            }
            std::vector<std::pair<double, double>> knots;
            for (const auto& k : j.at("knots")) {
                if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
                    v.fail(path + ".knots", "each knot must be [time, value]");
                    return std::nullopt;
                }
                knots.emplace_back(k[0].get<double>(), k[1].get<double>());
            }
            return *kind == "piecewise-linear" ? Schedule::piecewise_linear(std::move(knots))
                                               : Schedule::piecewise_constant(std::move(knots));
        }
        v.fail(path + ".kind",
               "unknown kind '" + *kind +
                   "' (available: constant, piecewise-linear, piecewise-constant)");
    } catch (const std::exception& e) {
        v.fail(path, e.what());
    }
    return std::nullopt;
}

ordered_json schedule_echo(const Schedule& s) {
    ordered_json j;
    switch (s.kind()) {
        case Schedule::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = s.knots()[0].second;
            return j;
        case Schedule::Kind::PiecewiseLinear:
            j["kind"] = "piecewise-linear";
            break;
        case Schedule::Kind::PiecewiseConstant:
            j["kind"] = "piecewise-constant";
            break;
    }
    ordered_json knots = ordered_json::array();
    for (const auto& [t, val] : s.knots()) knots.push_back({t, val});
    j["knots"] = std::move(knots);
    return j;
}

void parse_run(const ordered_json& root, ExperimentConfig& cfg, Validator& v) {
    if (!v.require_object(root, "", "run")) return;
    const auto& run = root.at("run");
    v.check_keys(run, "run",
                 {"total_time", "dt", "scheme", "renormalize_each_step", "r", "target",
                  "root_seed"});

    if (const auto t = v.number(run, "run", "total_time", true)) {
        if (*t > 0.0)
            cfg.total_time = *t;
        else
            v.fail("run.total_time", "must be > 0");
    }
    if (const auto dt = v.number(run, "run", "dt")) {
        if (*dt > 0.0)
            cfg.dt = *dt;
        else
            v.fail("run.dt", "must be > 0");
    } else if (cfg.total_time > 0.0) {
        cfg.dt = 1e-3 * cfg.total_time;  // documented default
    }
    if (const auto scheme = v.string(run, "run", "scheme")) {
        if (*scheme == "stratonovich-splitting")
            cfg.scheme = Scheme::StratonovichSplitting;
        else if (*scheme == "ito-euler-maruyama")
            cfg.scheme = Scheme::ItoEulerMaruyama;
        else
            v.fail("run.scheme",
                   "unknown scheme '" + *scheme +
                       "' (available: stratonovich-splitting, ito-euler-maruyama)");
    }
    if (const auto renorm = v.boolean(run, "run", "renormalize_each_step"))
        cfg.renormalize_each_step = *renorm;
    if (run.contains("r")) {
        if (const auto r = v.uinteger(run, "run", "r")) {
            if (*r >= 1)
                cfg.r = *r;
            else
                v.fail("run.r", "must be >= 1");
        }
    }
    if (run.contains("target")) {
        const auto& t = run.at("target");
        if (t.is_number_unsigned()) {
            cfg.target_kind = ExperimentConfig::TargetKind::Index;
            cfg.target_index = t.get<std::uint64_t>();
        } else if (t.is_string() && t.get<std::string>() == "ising-ground") {
            cfg.target_kind = ExperimentConfig::TargetKind::IsingGround;
        } else if (t.is_string() && t.get<std::string>() == "argmax") {
            cfg.target_kind = ExperimentConfig::TargetKind::Argmax;
        } else {
            v.fail("run.target",
                   "must be a basis index, \"ising-ground\", or \"argmax\"");
        }
    }
    if (const auto seed = v.uinteger(run, "run", "root_seed", true)) cfg.root_seed = *seed;
}

void parse_model(const ordered_json& root, ExperimentConfig& cfg, Validator& v) {
    if (!v.require_object(root, "", "model")) return;
    const auto& model = root.at("model");
    const auto builder = v.string(model, "model", "builder", true);
    if (!builder) return;

    try {
        if (*builder == "tfim_anneal") {
            v.check_keys(model, "model",
                         {"builder", "n_qubits", "couplings", "fields", "schedule_a",
                          "schedule_b"});
            const auto n = v.uinteger(model, "model", "n_qubits", true);
            if (!n) return;
            cfg.n_qubits = static_cast<int>(*n);
            std::vector<std::tuple<int, int, double>> couplings;
            if (model.contains("couplings")) {
                for (const auto& c : model.at("couplings")) {
                    if (!c.is_array() || c.size() != 3) {
                        v.fail("model.couplings", "each entry must be [i, j, J]");
                        return;
                    }
                    couplings.emplace_back(c[0].get<int>(), c[1].get<int>(), c[2].get<double>());
                }
            }
            std::vector<double> fields(*n, 0.0);
            if (model.contains("fields")) {
                const auto f = model.at("fields").get<std::vector<double>>();
                if (f.size() != *n) {
                    v.fail("model.fields", "size must equal n_qubits");
                    return;
                }
                fields = f;
            }
            AnnealingProblem problem = AnnealingProblem::linear(
                cfg.n_qubits, std::move(couplings), std::move(fields), cfg.total_time);
            if (model.contains("schedule_a")) {
                if (auto s = parse_schedule(model.at("schedule_a"), "model.schedule_a", v))
                    problem.schedule_a = *s;
                else
                    return;
            }
            if (model.contains("schedule_b")) {
                if (auto s = parse_schedule(model.at("schedule_b"), "model.schedule_b", v))
                    problem.schedule_b = *s;
                else
                    return;
            }
            cfg.hamiltonian = build_tfim_anneal(problem);
            cfg.anneal = std::move(problem);
            return;
        }
        if (*builder == "piecewise") {
            v.check_keys(model, "model", {"builder", "n_qubits", "segments"});
            const auto n = v.uinteger(model, "model", "n_qubits", true);
            if (!n) return;
            cfg.n_qubits = static_cast<int>(*n);
            if (!model.contains("segments") || !model.at("segments").is_array()) {
                v.fail("model.segments", "required array");
                return;
            }
            PiecewiseProgram program;
            program.n_qubits = cfg.n_qubits;
            for (const auto& seg : model.at("segments")) {
                v.check_keys(seg, "model.segments[]", {"duration", "terms"});
                PiecewiseSegment segment;
                segment.duration = seg.at("duration").get<double>();
                if (seg.contains("terms")) {
                    for (const auto& term : seg.at("terms")) {
                        if (!term.is_array() || term.size() != 2) {
                            v.fail("model.segments[].terms",
                                   "each term must be [letters, coefficient]");
                            return;
                        }
                        segment.terms.emplace_back(term[0].get<std::string>(),
                                                   term[1].get<double>());
                    }
                }
                program.segments.push_back(std::move(segment));
            }
            if (std::abs(program.total_time() - cfg.total_time) >
                1e-9 * std::max(1.0, cfg.total_time)) {
                v.fail("model.segments", "segment durations must sum to run.total_time");
                return;
            }
            cfg.hamiltonian = build_piecewise(program);
            return;
        }
        if (*builder == "pauli_terms") {
            v.check_keys(model, "model", {"builder", "n_qubits", "terms"});
            const auto n = v.uinteger(model, "model", "n_qubits", true);
            if (!n) return;
            cfg.n_qubits = static_cast<int>(*n);
            std::vector<HamiltonianTerm> terms;
            if (model.contains("terms")) {
                for (const auto& term : model.at("terms")) {
                    v.check_keys(term, "model.terms[]", {"letters", "coefficient", "schedule"});
                    const auto letters = term.at("letters").get<std::string>();
                    const double coeff =
                        term.contains("coefficient") ? term.at("coefficient").get<double>() : 1.0;
                    Schedule sched = Schedule::constant(1.0);
                    if (term.contains("schedule")) {
                        if (auto s = parse_schedule(term.at("schedule"), "model.terms[].schedule",
                                                    v))
                            sched = *s;
                        else
                            return;
                    }
                    terms.push_back({PauliString(letters, coeff), std::move(sched)});
                }
            }
            cfg.hamiltonian =
                HamiltonianSchedule(cfg.n_qubits, std::move(terms), cfg.total_time);
            return;
        }
        v.fail("model.builder", "unknown builder '" + *builder +
                                    "' (available: tfim_anneal, piecewise, pauli_terms)");
    } catch (const std::exception& e) {
        v.fail("model", e.what());
    }
}

void parse_initial_state(const ordered_json& root, ExperimentConfig& cfg, Validator& v) {
    std::string kind = "plus";
    std::uint64_t index = 0;
    std::vector<std::complex<double>> values;
    if (root.contains("initial_state")) {
        const auto& init = root.at("initial_state");
        v.check_keys(init, "initial_state", {"kind", "index", "values"});
        if (const auto k = v.string(init, "initial_state", "kind", true)) kind = *k;
        if (const auto i = v.uinteger(init, "initial_state", "index")) index = *i;
        if (init.contains("values")) {
            for (const auto& pair : init.at("values")) {
                if (!pair.is_array() || pair.size() != 2) {
                    v.fail("initial_state.values", "each amplitude must be [re, im]");
                    return;
                }
                values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
            }
        }
    }
    if (cfg.n_qubits < 1) return;  // model already failed
    try {
        if (kind == "plus") {
            cfg.initial_state = StateVector::uniform_plus(cfg.n_qubits);
        } else if (kind == "basis") {
            cfg.initial_state = StateVector::basis_state(cfg.n_qubits, index);
        } else if (kind == "amplitudes") {
            auto s = StateVector::from_amplitudes(cfg.n_qubits, std::move(values));
            if (std::abs(s.norm() - 1.0) > 1e-6) {
                v.fail("initial_state.values", "state must be normalized (|norm - 1| <= 1e-6)");
                return;
            }
            cfg.initial_state = std::move(s);
        } else {
            v.fail("initial_state.kind",
                   "unknown kind '" + kind + "' (available: plus, basis, amplitudes)");
        }
    } catch (const std::exception& e) {
        v.fail("initial_state", e.what());
    }
}

void parse_noise(const ordered_json& root, ExperimentConfig& cfg, Validator& v) {
    if (!root.contains("noise")) return;  // default: noiseless
    const auto& noise = root.at("noise");
    const auto builder = v.string(noise, "noise", "builder", true);
    if (!builder || cfg.n_qubits < 1) return;
    try {
        if (*builder == "none") {
            v.check_keys(noise, "noise", {"builder"});
            return;
        }
        if (*builder == "per_qubit") {
            v.check_keys(noise, "noise", {"builder", "letter", "strength"});
            const auto letter = v.string(noise, "noise", "letter", true);
            if (!letter || letter->size() != 1) {
                v.fail("noise.letter", "must be one of X, Y, Z");
                return;
            }
            if (!noise.contains("strength")) {
                v.fail("noise.strength", "required schedule missing");
                return;
            }
            auto strength = parse_schedule(noise.at("strength"), "noise.strength", v);
            if (!strength) return;
            cfg.noise = per_qubit_noise(cfg.n_qubits, (*letter)[0], *strength);
            cfg.per_qubit_letter = (*letter)[0];
            if (strength->kind() == Schedule::Kind::Constant)
                cfg.per_qubit_constant_g = strength->knots()[0].second;
            return;
        }
        if (*builder == "channels") {
            v.check_keys(noise, "noise", {"builder", "channels"});
            if (!noise.contains("channels") || !noise.at("channels").is_array()) {
                v.fail("noise.channels", "required array");
                return;
            }
            for (const auto& ch : noise.at("channels")) {
                v.check_keys(ch, "noise.channels[]", {"letters", "strength"});
                const auto letters = ch.at("letters").get<std::string>();
                auto strength =
                    parse_schedule(ch.at("strength"), "noise.channels[].strength", v);
                if (!strength) return;
                cfg.noise.channels.emplace_back(PauliString(letters, 1.0), *strength);
            }
            return;
        }
        v.fail("noise.builder", "unknown builder '" + *builder +
                                    "' (available: none, per_qubit, channels)");
    } catch (const std::exception& e) {
        v.fail("noise", e.what());
    }
}

void parse_plan(const ordered_json& root, ExperimentConfig& cfg, Validator& v) {
    if (!root.contains("plan")) return;
    const auto& plan = root.at("plan");
    v.check_keys(plan, "plan", {"margin_c", "p_star", "trials", "gammas", "contrast"});
    if (const auto c = v.number(plan, "plan", "margin_c")) {
        if (*c >= 1.0)
            cfg.plan.margin_c = *c;
        else
            v.fail("plan.margin_c", "must be >= 1");
    }
    if (const auto p = v.number(plan, "plan", "p_star")) {
        if (*p > 0.0 && *p <= 1.0)
            cfg.plan.p_star = *p;
        else
            v.fail("plan.p_star", "must lie in (0, 1]");
    }
    if (const auto m = v.uinteger(plan, "plan", "trials")) {
        if (*m >= 1)
            cfg.plan.trials = *m;
        else
            v.fail("plan.trials", "must be >= 1");
    }
    if (plan.contains("gammas")) {
        try {
            cfg.plan.gammas = plan.at("gammas").get<std::vector<double>>();
        } catch (const std::exception&) {
            v.fail("plan.gammas", "expected an array of numbers");
        }
        for (double g : cfg.plan.gammas)
            if (g < 0.0) v.fail("plan.gammas", "entries must be >= 0");
    }
    if (plan.contains("contrast")) {
        const auto& c = plan.at("contrast");
        v.check_keys(c, "plan.contrast", {"r", "gamma"});
        cfg.plan.contrast.enabled = true;
        if (const auto r = v.uinteger(c, "plan.contrast", "r")) cfg.plan.contrast.r = *r;
        if (const auto g = v.number(c, "plan.contrast", "gamma")) cfg.plan.contrast.gamma = *g;
    }
}

void parse_sweep(const ordered_json& root, ExperimentConfig& cfg, Validator& v) {
    if (!root.contains("sweep")) return;
    const auto& sweep = root.at("sweep");
    v.check_keys(sweep, "sweep", {"g_grid", "gammas", "p_star", "trials", "r_cap"});
    if (sweep.contains("g_grid")) {
        try {
            cfg.sweep.g_grid = sweep.at("g_grid").get<std::vector<double>>();
        } catch (const std::exception&) {
            v.fail("sweep.g_grid", "expected an array of numbers");
        }
    }
    if (sweep.contains("gammas")) {
        try {
            cfg.sweep.gammas = sweep.at("gammas").get<std::vector<double>>();
        } catch (const std::exception&) {
            v.fail("sweep.gammas", "expected an array of numbers");
        }
    }
    if (!cfg.sweep.g_grid.empty() && !cfg.sweep.gammas.empty())
        v.fail("sweep", "give either g_grid or gammas, not both");
    if (const auto p = v.number(sweep, "sweep", "p_star")) {
        if (*p > 0.0 && *p <= 1.0)
            cfg.sweep.p_star = *p;
        else
            v.fail("sweep.p_star", "must lie in (0, 1]");
    }
    if (const auto m = v.uinteger(sweep, "sweep", "trials")) {
        if (*m >= 1)
            cfg.sweep.trials = *m;
        else
            v.fail("sweep.trials", "must be >= 1");
    }
    if (const auto cap = v.uinteger(sweep, "sweep", "r_cap")) {
        if (*cap >= 1)
            cfg.sweep.r_cap = *cap;
        else
            v.fail("sweep.r_cap", "must be >= 1");
    }
}

ordered_json build_echo(const ExperimentConfig& cfg, const ordered_json& root) {
    ordered_json echo;
    echo["model"] = root.contains("model") ? root.at("model") : ordered_json::object();
    if (cfg.anneal) {
        // Fill the defaulted schedules so the echo is self-contained.
        echo["model"]["schedule_a"] = schedule_echo(cfg.anneal->schedule_a);
        echo["model"]["schedule_b"] = schedule_echo(cfg.anneal->schedule_b);
        if (!echo["model"].contains("couplings")) echo["model"]["couplings"] = ordered_json::array();
        if (!echo["model"].contains("fields")) echo["model"]["fields"] = cfg.anneal->fields;
    }
    echo["initial_state"] =
        root.contains("initial_state") ? root.at("initial_state") : ordered_json{{"kind", "plus"}};
    echo["noise"] = root.contains("noise") ? root.at("noise") : ordered_json{{"builder", "none"}};
    ordered_json run;
    run["total_time"] = cfg.total_time;
    run["dt"] = cfg.dt;
    run["scheme"] = cfg.scheme == Scheme::StratonovichSplitting ? "stratonovich-splitting"
                                                                : "ito-euler-maruyama";
    run["renormalize_each_step"] = cfg.renormalize_each_step;
    if (cfg.r) run["r"] = *cfg.r;
    switch (cfg.target_kind) {
        case ExperimentConfig::TargetKind::Index: run["target"] = cfg.target_index; break;
        case ExperimentConfig::TargetKind::IsingGround: run["target"] = "ising-ground"; break;
        case ExperimentConfig::TargetKind::Argmax: run["target"] = "argmax"; break;
    }
    run["root_seed"] = cfg.root_seed;
    echo["run"] = std::move(run);
    if (root.contains("plan")) echo["plan"] = root.at("plan");
    if (root.contains("sweep")) echo["sweep"] = root.at("sweep");
    if (root.contains("oracle_check")) echo["oracle_check"] = root.at("oracle_check");
    ordered_json output;
    output["dump_trajectories"] = cfg.dump_trajectories;
    echo["output"] = std::move(output);
    return echo;
}

}  // namespace

TrajectoryConfig ExperimentConfig::trajectory_config() const { return trajectory_config(dt); }

TrajectoryConfig ExperimentConfig::trajectory_config(double dt_override) const {
    if (!hamiltonian || !initial_state)
        throw std::logic_error("ExperimentConfig: incomplete configuration");
    return TrajectoryConfig(*hamiltonian, noise, *initial_state, dt_override, scheme,
                            renormalize_each_step);
}

std::uint64_t ExperimentConfig::resolve_target(const StateVector* psi_reference) const {
    switch (target_kind) {
        case TargetKind::Index: {
            if (initial_state && target_index >= initial_state->dim())
                throw std::out_of_range("run.target: index out of range");
            return target_index;
        }
        case TargetKind::IsingGround: {
            if (!anneal)
                throw std::runtime_error(
                    "run.target = ising-ground requires the tfim_anneal builder");
            return ising_ground_state(*anneal);
        }
        case TargetKind::Argmax: {
            if (psi_reference == nullptr)
                throw std::runtime_error("run.target = argmax requires a reference state");
            const auto amps = psi_reference->amplitudes();
            std::uint64_t best = 0;
            double best_mag = std::norm(amps[0]);
            for (std::uint64_t j = 1; j < amps.size(); ++j) {
                if (std::norm(amps[j]) > best_mag) {
                    best_mag = std::norm(amps[j]);
                    best = j;
                }
            }
            return best;
        }
    }
    throw std::logic_error("resolve_target: unreachable");
}

ParseResult parse_config(const std::string& text, bool lenient) {
    ParseResult result;
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const std::exception& e) {
        result.errors.push_back(std::string("config: invalid JSON: ") + e.what());
        return result;
    }
    if (!root.is_object()) {
        result.errors.push_back("config: top level must be an object");
        return result;
    }

    Validator v;
    v.lenient = lenient;
    v.check_keys(root, "config",
                 {"model", "initial_state", "noise", "run", "plan", "sweep", "oracle_check",
                  "output"});

    ExperimentConfig cfg;
    parse_run(root, cfg, v);      // first: model builders need total_time
    parse_model(root, cfg, v);
    parse_initial_state(root, cfg, v);
    parse_noise(root, cfg, v);
    parse_plan(root, cfg, v);
    parse_sweep(root, cfg, v);

    if (root.contains("oracle_check")) {
        const auto& oc = root.at("oracle_check");
        v.check_keys(oc, "oracle_check", {"tolerance"});
        if (const auto tol = v.number(oc, "oracle_check", "tolerance")) {
            if (*tol > 0.0)
                cfg.oracle_tolerance = *tol;
            else
                v.fail("oracle_check.tolerance", "must be > 0");
        }
    }
    if (root.contains("output")) {
        const auto& out = root.at("output");
        v.check_keys(out, "output", {"dump_trajectories"});
        if (const auto dump = v.boolean(out, "output", "dump_trajectories"))
            cfg.dump_trajectories = *dump;
    }

    if (cfg.target_kind == ExperimentConfig::TargetKind::Index && cfg.initial_state &&
        cfg.target_index >= cfg.initial_state->dim())
        v.fail("run.target", "basis index out of range for " + std::to_string(cfg.n_qubits) +
                                 " qubit(s)");

    result.errors = std::move(v.errors);
    result.warnings = std::move(v.warnings);
    if (!result.errors.empty()) return result;

    cfg.echo = build_echo(cfg, root);
    result.config = std::move(cfg);
    return result;
}

}  // namespace qsde
