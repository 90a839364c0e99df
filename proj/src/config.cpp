#include "spinspec/config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>

namespace spinspec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
    throw ConfigError(path + ": " + reason);
}

void check_keys(const json& j, const std::string& block,
                std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(block + "." + it.key(), "unknown key");
    }
}

const json& need(const json& j, const std::string& block, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(block + "." + key, "missing");
    return *it;
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::int64_t as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::uint64_t as_uint(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

LatticeGraph parse_graph(const json& j, const std::string& kind) {
    const bool grid = j.contains("rows") || j.contains("cols");
    if (grid && j.contains("n"))
        fail("model.n", "give either n or rows/cols, not both");
    std::string boundary = "open";
    if (auto it = j.find("boundary"); it != j.end()) {
        boundary = as_string(*it, "model.boundary");
        if (boundary != "open" && boundary != "periodic")
            fail("model.boundary", "expected \"open\" or \"periodic\"");
    }
    const bool periodic = boundary == "periodic";
    try {
        if (grid) {
            const auto rows = as_int(need(j, "model", "rows"), "model.rows");
            const auto cols = as_int(need(j, "model", "cols"), "model.cols");
            return grid_graph(static_cast<int>(rows), static_cast<int>(cols),
                              periodic);
        }
        const auto n = as_int(need(j, "model", "n"), "model.n");
        if (n < 1) fail("model.n", "expected n >= 1");
        if (kind == "free_spins" || kind == "synthetic")
            return LatticeGraph{static_cast<int>(n), {}, false};
        return periodic ? ring_graph(static_cast<int>(n))
                        : chain_graph(static_cast<int>(n));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
}

void parse_model(const json& j, ExperimentConfig& cfg) {
    if (!j.is_object()) fail("model", "expected an object");
    const std::string kind =
        as_string(need(j, "model", "model"), "model.model");
    if (kind == "ising") {
        check_keys(j, "model",
                   {"model", "n", "boundary", "rows", "cols", "Jz", "h"});
        IsingLongitudinal m;
        if (auto it = j.find("Jz"); it != j.end())
            m.Jz = as_double(*it, "model.Jz");
        if (auto it = j.find("h"); it != j.end())
            m.h = as_double(*it, "model.h");
        cfg.graph = parse_graph(j, kind);
        cfg.model = m;
    } else if (kind == "xxz") {
        check_keys(j, "model",
                   {"model", "n", "boundary", "rows", "cols", "Jx", "Jz"});
        XXZ m;
        if (auto it = j.find("Jx"); it != j.end())
            m.Jx = as_double(*it, "model.Jx");
        if (auto it = j.find("Jz"); it != j.end())
            m.Jz = as_double(*it, "model.Jz");
        cfg.graph = parse_graph(j, kind);
        cfg.model = m;
    } else if (kind == "free_spins") {
        check_keys(j, "model", {"model", "n", "h"});
        FreeSpins m;
        if (auto it = j.find("h"); it != j.end())
            m.h = as_double(*it, "model.h");
        cfg.graph = parse_graph(j, kind);
        cfg.model = m;
    } else if (kind == "synthetic") {
        check_keys(j, "model", {"model", "n", "levels", "dimension"});
        const json& levels = need(j, "model", "levels");
        if (!levels.is_array() || levels.empty())
            fail("model.levels", "expected a non-empty array");
        Synthetic m;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const std::string path =
                "model.levels[" + std::to_string(i) + "]";
            const json& entry = levels[i];
            if (!entry.is_object()) fail(path, "expected an object");
            check_keys(entry, path, {"energy", "degeneracy"});
            SyntheticLevel lvl;
            lvl.energy =
                as_double(need(entry, path, "energy"), path + ".energy");
            if (auto it = entry.find("degeneracy"); it != entry.end())
                lvl.degeneracy = as_int(*it, path + ".degeneracy");
            m.levels.push_back(lvl);
        }
        if (auto it = j.find("dimension"); it != j.end())
            m.dimension = as_int(*it, "model.dimension");
        cfg.graph = parse_graph(j, kind);
        cfg.model = m;
    } else {
        fail("model.model", "unknown model '" + kind + "'");
    }
}

void parse_budget(const json& j, ErrorBudget& b) {
    if (!j.is_object()) fail("budget", "expected an object");
    check_keys(j, "budget", {"beta", "gamma", "epsilon"});
    b.beta = as_double(need(j, "budget", "beta"), "budget.beta");
    b.gamma = as_double(need(j, "budget", "gamma"), "budget.gamma");
    if (auto it = j.find("epsilon"); it != j.end())
        b.epsilon = as_double(*it, "budget.epsilon");
}

NoiseModel parse_noise(const json& j) {
    if (!j.is_object()) fail("noise", "expected an object");
    const std::string type = as_string(need(j, "noise", "type"), "noise.type");
    if (type == "exact") {
        check_keys(j, "noise", {"type"});
        return Exact{};
    }
    if (type == "shots") {
        check_keys(j, "noise", {"type", "R"});
        return Shots{as_int(need(j, "noise", "R"), "noise.R")};
    }
    if (type == "gaussian") {
        check_keys(j, "noise", {"type", "sigma_g"});
        return AdditiveGaussian{
            as_double(need(j, "noise", "sigma_g"), "noise.sigma_g")};
    }
    fail("noise.type", "unknown noise model '" + type + "'");
}

void parse_run(const json& j, RunBlock& r) {
    if (!j.is_object()) fail("run", "expected an object");
    check_keys(j, "run",
               {"seed", "trials", "output_dir", "use_bandwidth_bound",
                "include_l0_variance", "force_large_N", "guard_band",
                "dos_grid_points"});
    if (auto it = j.find("seed"); it != j.end())
        r.seed = as_uint(*it, "run.seed");
    if (auto it = j.find("trials"); it != j.end()) {
        r.trials = as_int(*it, "run.trials");
        if (r.trials < 1) fail("run.trials", "expected at least 1");
    }
    if (auto it = j.find("output_dir"); it != j.end())
        r.output_dir = as_string(*it, "run.output_dir");
    if (auto it = j.find("use_bandwidth_bound"); it != j.end())
        r.use_bandwidth_bound = as_bool(*it, "run.use_bandwidth_bound");
    if (auto it = j.find("include_l0_variance"); it != j.end())
        r.include_l0_variance = as_bool(*it, "run.include_l0_variance");
    if (auto it = j.find("force_large_N"); it != j.end())
        r.force_large_N = as_bool(*it, "run.force_large_N");
    if (auto it = j.find("guard_band"); it != j.end())
        r.guard_band = as_bool(*it, "run.guard_band");
    if (auto it = j.find("dos_grid_points"); it != j.end()) {
        r.dos_grid_points = as_int(*it, "run.dos_grid_points");
        if (r.dos_grid_points < 2) fail("run.dos_grid_points", "expected >= 2");
    }
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    check_keys(j, "config", {"model", "budget", "noise", "run"});
    ExperimentConfig cfg;
    parse_model(need(j, "config", "model"), cfg);
    parse_budget(need(j, "config", "budget"), cfg.budget);
    cfg.budget.n = cfg.graph.n;
    cfg.noise = j.contains("noise") ? parse_noise(j.at("noise")) : Exact{};
    if (j.contains("run")) parse_run(j.at("run"), cfg.run);
    try {
        (void)build_hamiltonian(cfg.graph, cfg.model);
        validate_budget(cfg.budget);
        validate_noise(cfg.noise);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.config_hash = config_hash_hex(j);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    for (const auto& assignment : overrides) apply_override(j, assignment);
    return parse_config(j);
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment +
                          "': expected block.key=value");
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;  // bare words are strings

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty())
            throw ConfigError("override '" + assignment + "': empty key");
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        if (!node->is_object()) *node = json::object();
        start = dot + 1;
    }
}

std::string config_hash_hex(const json& canonical) {
    // FNV-1a over the sorted-key dump; stable across runs and platforms.
    const std::string s = canonical.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

json plan_to_json(const SamplingPlan& plan) {
    return json{{"delta_E", plan.delta_E}, {"dt", plan.dt},
                {"delta_e", plan.delta_e}, {"T0", plan.T0},
                {"theta", plan.theta},     {"N", plan.N}};
}

SamplingPlan plan_from_json(const json& j) {
    SamplingPlan p;
    try {
        p.delta_E = j.at("delta_E").get<double>();
        p.dt = j.at("dt").get<double>();
        p.delta_e = j.at("delta_e").get<double>();
        p.T0 = j.at("T0").get<double>();
        p.theta = j.at("theta").get<int>();
        p.N = j.at("N").get<std::int64_t>();
    } catch (const json::exception& e) {
        throw ConfigError("plan: " + std::string(e.what()));
    }
    p.window = window_time_samples(WindowSpec{p.theta, p.T0}, p.dt);
    if (static_cast<std::int64_t>(p.window.weights.size()) != p.N / 2 + 1)
        throw ConfigError("plan: inconsistent N / window length");
    return p;
}

json report_to_json(const EstimateReport& r) {
    return json{{"Z_tilde", r.Z_tilde},
                {"F_tilde", r.F_tilde},
                {"Z_exact", r.Z_exact},
                {"F_exact", r.F_exact},
                {"r", r.r},
                {"xi", r.xi},
                {"gamma", r.gamma},
                {"beta", r.beta},
                {"pass", r.pass_r && r.pass_free_energy},
                {"catastrophic", r.catastrophic}};
}

json noise_study_to_json(const NoiseStudyResult& r) {
    return json{{"trials", r.trials},
                {"empirical_mean_Z", r.empirical_mean_Z},
                {"empirical_var", r.empirical_var},
                {"empirical_failure_rate", r.empirical_failure_rate},
                {"predicted_var", r.predicted_var},
                {"predicted_failure", r.predicted_failure},
                {"catastrophic_count", r.catastrophic_count},
                {"seed", r.seed},
                {"prediction",
                 {{"var_sum", r.prediction.var_sum},
                  {"var_integral", r.prediction.var_integral},
                  {"nu_sq", r.prediction.nu_sq},
                  {"includes_l0", r.prediction.includes_l0}}}};
}

json noise_to_json(const NoiseModel& m) {
    if (std::holds_alternative<Shots>(m))
        return json{{"type", "shots"}, {"R", std::get<Shots>(m).R}};
    if (std::holds_alternative<AdditiveGaussian>(m))
        return json{{"type", "gaussian"},
                    {"sigma_g", std::get<AdditiveGaussian>(m).sigma_g}};
    return json{{"type", "exact"}};
}

NoiseModel noise_from_json(const json& j) { return parse_noise(j); }

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace spinspec
