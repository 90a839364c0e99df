// Experiment driver: every subcommand loads one JSON config (with optional
// key=value overrides), runs deterministically under the configured seed, and
// writes artifacts that embed the config hash for provenance.
//
//   plan           derive the sampling plan and emit plan.json
//   sample         simulate the Fourier-sample series, emit samples.csv
//   estimate       turn a samples.csv into estimate.json + dos.csv
//   pipeline       plan -> sample -> estimate in one shot
//   verify-lemmas  window-bound sweep, emit lemmas.csv
//   noise-mc       Monte Carlo noise study, emit noise_mc.json + noise_trials.csv
//   sweep          planner scaling table over n, emit sweep.csv
//
// Exit status: 0 ok, 1 invalid config or runtime error, 2 a pass flag or
// bound check came out false (for scripted gating).
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinspec/config.hpp"
#include "spinspec/noise.hpp"
#include "spinspec/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spinspec;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int threads = 1;
};

struct Context {
    ExperimentConfig cfg;
    fs::path out;
    int threads = 1;
};

Context make_context(const CommonArgs& args) {
    Context ctx;
    ctx.cfg = load_config_file(args.config_path, args.overrides);
    if (!args.out_dir.empty())
        ctx.out = args.out_dir;
    else if (!ctx.cfg.run.output_dir.empty())
        ctx.out = ctx.cfg.run.output_dir;
    else if (const char* env = std::getenv("SPINSPEC_OUT_DIR"); env && *env)
        ctx.out = env;
    else
        ctx.out = ".";
    fs::create_directories(ctx.out);
    ctx.threads = args.threads < 1 ? 1 : args.threads;
    return ctx;
}

PipelineOptions pipeline_options(const RunBlock& run) {
    PipelineOptions opt;
    opt.use_bandwidth_bound = run.use_bandwidth_bound;
    opt.guard_band = run.guard_band;
    opt.force_large_N = run.force_large_N;
    return opt;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    return out;
}

void write_json_file(const fs::path& p, const json& j) {
    auto out = open_out(p);
    out << j.dump(2) << '\n';
}

void print_kv(const std::string& key, const std::string& value) {
    std::cout << "  " << std::left << std::setw(22) << key << value << '\n';
}

json meta_json(const Context& ctx) {
    return json{{"config_hash", ctx.cfg.config_hash},
                {"seed", ctx.cfg.run.seed}};
}

// plan/sample share the spectrum -> frame -> plan preamble.
struct Prepared {
    Hamiltonian h;
    Spectrum spectrum;
    SamplingFrame frame;
    SamplingPlan plan;
};

Prepared prepare(const Context& ctx) {
    Prepared p;
    p.h = build_hamiltonian(ctx.cfg.graph, ctx.cfg.model);
    p.spectrum = exact_spectrum(p.h);
    const auto opt = pipeline_options(ctx.cfg.run);
    p.frame = make_frame(p.spectrum, p.h, ctx.cfg.budget, opt);
    p.plan = plan_deterministic(ctx.cfg.budget, p.frame.delta_E,
                                opt.force_large_N);
    return p;
}

json plan_json(const Context& ctx, const Prepared& p) {
    json out = plan_to_json(p.plan);
    out["xi"] = ctx.cfg.budget.xi();
    out["mu"] = planner_mu();
    out["kappa"] = planner_kappa();
    out["kappa_prime"] = planner_kappa_prime();
    out["energy_offset"] = p.frame.offset;
    out["spectrum_delta_E"] = p.spectrum.delta_E;
    out["n"] = ctx.cfg.budget.n;
    out["beta"] = ctx.cfg.budget.beta;
    out["gamma"] = ctx.cfg.budget.gamma;
    out["config_hash"] = ctx.cfg.config_hash;
    out["seed"] = ctx.cfg.run.seed;
    return out;
}

void write_dos_csv(const fs::path& p, const Context& ctx, const DosCurve& dos,
                   double energy_offset) {
    auto out = open_out(p);
    json meta = meta_json(ctx);
    meta["energy_offset"] = energy_offset;
    out << "# meta: " << meta.dump() << '\n';
    out << "energy,density\n";
    // grid lives in the padded sampling frame; report physical energies
    for (std::size_t i = 0; i < dos.grid.size(); ++i)
        out << format_double(dos.grid[i] - energy_offset) << ','
            << format_double(dos.values[i]) << '\n';
}

json estimate_json(const Context& ctx, const EstimateReport& rep,
                   double energy_offset) {
    json out = report_to_json(rep);
    out["energy_offset"] = energy_offset;
    out["n"] = ctx.cfg.budget.n;
    out["config_hash"] = ctx.cfg.config_hash;
    out["seed"] = ctx.cfg.run.seed;
    return out;
}

void print_report(const EstimateReport& rep) {
    print_kv("Z_tilde", format_double(rep.Z_tilde));
    print_kv("Z_exact", format_double(rep.Z_exact));
    print_kv("r", format_double(rep.r));
    print_kv("xi", format_double(rep.xi));
    print_kv("F_tilde", format_double(rep.F_tilde));
    print_kv("F_exact", format_double(rep.F_exact));
    print_kv("pass", rep.pass_r && rep.pass_free_energy ? "true" : "false");
}

int cmd_plan(const Context& ctx) {
    const Prepared p = prepare(ctx);
    write_json_file(ctx.out / "plan.json", plan_json(ctx, p));
    print_kv("theta", std::to_string(p.plan.theta));
    print_kv("N", std::to_string(p.plan.N));
    print_kv("delta_e", format_double(p.plan.delta_e));
    print_kv("delta_E", format_double(p.plan.delta_E));
    std::cout << "wrote " << (ctx.out / "plan.json").string() << '\n';
    return 0;
}

int cmd_sample(const Context& ctx) {
    const Prepared p = prepare(ctx);
    SampleSet set = sample_series(p.spectrum, p.plan, ctx.cfg.noise,
                                  ctx.cfg.run.seed, p.frame.offset);
    set.config_hash = ctx.cfg.config_hash;
    auto out = open_out(ctx.out / "samples.csv");
    write_sample_set_csv(out, set);
    print_kv("samples", std::to_string(set.samples.size()));
    print_kv("noise", noise_name(ctx.cfg.noise));
    std::cout << "wrote " << (ctx.out / "samples.csv").string() << '\n';
    return 0;
}

int cmd_estimate(const Context& ctx, const std::string& samples_arg) {
    const fs::path samples_path =
        samples_arg.empty() ? ctx.out / "samples.csv" : fs::path(samples_arg);
    std::ifstream in(samples_path);
    if (!in)
        throw std::runtime_error("cannot read '" + samples_path.string() +
                                 "'");
    const SampleSet set = read_sample_set_csv(in);
    if (set.n != ctx.cfg.budget.n)
        throw ConfigError("model.n: sample set was taken for n = " +
                          std::to_string(set.n));
    const auto h = build_hamiltonian(ctx.cfg.graph, ctx.cfg.model);
    const auto spectrum = exact_spectrum(h);
    if (set.dimension != spectrum.dimension)
        throw ConfigError("model: sample set dimension " +
                          std::to_string(set.dimension) +
                          " does not match the configured model");

    const double beta = ctx.cfg.budget.beta;
    // Sampling ran on the offset spectrum; undo the uniform Boltzmann factor.
    const double Z_tilde = std::exp(beta * set.energy_offset) *
                           estimate_partition(set, beta);
    const double Z = partition_function(spectrum, beta);
    const EstimateReport rep = make_report(Z_tilde, Z, ctx.cfg.budget.n, beta,
                                           ctx.cfg.budget.gamma);

    write_json_file(ctx.out / "estimate.json",
                    estimate_json(ctx, rep, set.energy_offset));
    const DosCurve dos = reconstruct_dos(set, ctx.cfg.run.dos_grid_points);
    write_dos_csv(ctx.out / "dos.csv", ctx, dos, set.energy_offset);
    print_report(rep);
    std::cout << "wrote " << (ctx.out / "estimate.json").string() << ", "
              << (ctx.out / "dos.csv").string() << '\n';
    return rep.pass_r && rep.pass_free_energy ? 0 : 2;
}

int cmd_pipeline(const Context& ctx) {
    const auto h = build_hamiltonian(ctx.cfg.graph, ctx.cfg.model);
    PipelineResult res =
        run_pipeline(h, ctx.cfg.budget, ctx.cfg.noise, ctx.cfg.run.seed,
                     pipeline_options(ctx.cfg.run));
    res.samples.config_hash = ctx.cfg.config_hash;

    Prepared p{h, res.spectrum, {res.frame_delta_E, res.energy_offset},
               res.plan};
    write_json_file(ctx.out / "plan.json", plan_json(ctx, p));
    {
        auto out = open_out(ctx.out / "samples.csv");
        write_sample_set_csv(out, res.samples);
    }
    write_json_file(ctx.out / "estimate.json",
                    estimate_json(ctx, res.report, res.energy_offset));
    const DosCurve dos =
        reconstruct_dos(res.samples, ctx.cfg.run.dos_grid_points);
    write_dos_csv(ctx.out / "dos.csv", ctx, dos, res.energy_offset);

    print_kv("theta", std::to_string(res.plan.theta));
    print_kv("N", std::to_string(res.plan.N));
    print_report(res.report);
    std::cout << "wrote plan.json, samples.csv, estimate.json, dos.csv in "
              << ctx.out.string() << '\n';
    return res.report.pass_r && res.report.pass_free_energy ? 0 : 2;
}

int cmd_verify_lemmas(const Context& ctx) {
    // Normalized to delta_e = 1; the bound comparison is scale-free.
    auto out = open_out(ctx.out / "lemmas.csv");
    out << "# meta: " << meta_json(ctx).dump() << '\n';
    out << "theta,alpha,alpha_bound,a_side,a_side_bound,margin\n";
    double min_margin = std::numeric_limits<double>::infinity();
    for (int theta = 2; theta <= 60; theta += 2) {
        const WindowSpec spec{theta, 2.0 * std::numbers::pi};
        const double alpha = alpha_theta(spec);
        const double a_side = side_lobe_area(theta);
        const LemmaBounds bounds = lemma_bounds(theta, 1.0);
        const double margin = std::min(bounds.alpha_bound - alpha,
                                       bounds.a_side_bound - a_side);
        min_margin = std::min(min_margin, margin);
        out << theta << ',' << format_double(alpha) << ','
            << format_double(bounds.alpha_bound) << ','
            << format_double(a_side) << ','
            << format_double(bounds.a_side_bound) << ','
            << format_double(margin) << '\n';
    }
    print_kv("min_margin", format_double(min_margin));
    std::cout << "wrote " << (ctx.out / "lemmas.csv").string() << '\n';
    return min_margin > 0.0 ? 0 : 2;
}

int cmd_noise_mc(const Context& ctx) {
    const auto h = build_hamiltonian(ctx.cfg.graph, ctx.cfg.model);
    const NoiseStudyResult study = monte_carlo_study(
        h, ctx.cfg.budget, ctx.cfg.noise, ctx.cfg.run.trials,
        ctx.cfg.run.seed, ctx.threads, ctx.cfg.run.include_l0_variance);
    json out = noise_study_to_json(study);
    out["config_hash"] = ctx.cfg.config_hash;
    write_json_file(ctx.out / "noise_mc.json", out);

    auto csv = open_out(ctx.out / "noise_trials.csv");
    csv << "# meta: " << meta_json(ctx).dump() << '\n';
    csv << "trial,Z_tilde,F_tilde,pass\n";
    for (std::size_t i = 0; i < study.trial_Z.size(); ++i)
        csv << i << ',' << format_double(study.trial_Z[i]) << ','
            << format_double(estimate_free_energy(study.trial_Z[i],
                                                  ctx.cfg.budget.n,
                                                  ctx.cfg.budget.beta))
            << ',' << int(study.trial_pass[i]) << '\n';

    print_kv("trials", std::to_string(study.trials));
    print_kv("empirical_var", format_double(study.empirical_var));
    print_kv("predicted_var", format_double(study.predicted_var));
    print_kv("empirical_failure", format_double(study.empirical_failure_rate));
    print_kv("predicted_failure", format_double(study.predicted_failure));
    print_kv("catastrophic", std::to_string(study.catastrophic_count));
    std::cout << "wrote " << (ctx.out / "noise_mc.json").string() << " and "
              << (ctx.out / "noise_trials.csv").string() << '\n';
    return 0;
}

int cmd_sweep(const Context& ctx, const std::vector<int>& n_values,
              double delta_E_per_spin) {
    const ScalingStudy study =
        scaling_study(ctx.cfg.budget, n_values,
                      [delta_E_per_spin](int n) { return delta_E_per_spin * n; });
    auto out = open_out(ctx.out / "sweep.csv");
    json meta = meta_json(ctx);
    meta["fitted_exponent"] = study.fitted_exponent;
    meta["delta_E_per_spin"] = delta_E_per_spin;
    out << "# meta: " << meta.dump() << '\n';
    out << "n,delta_E,delta_e,theta,N\n";
    for (const auto& row : study.rows)
        out << row.n << ',' << format_double(row.delta_E) << ','
            << format_double(row.delta_e) << ',' << row.theta << ',' << row.N
            << '\n';
    print_kv("fitted_exponent", format_double(study.fitted_exponent));
    std::cout << "wrote " << (ctx.out / "sweep.csv").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spectral free-energy estimation for spin-1/2 lattices: "
        "deterministic sampling plans, simulated Fourier samples, windowed "
        "partition-function estimates, and noise studies"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonArgs args;
    app.add_option("-c,--config", args.config_path,
                   "experiment JSON config file")
        ->required();
    app.add_option("--set", args.overrides,
                   "override a config entry, e.g. --set budget.gamma=0.05");
    app.add_option("-o,--output-dir", args.out_dir,
                   "output directory (default: run.output_dir from the "
                   "config, else $SPINSPEC_OUT_DIR, else .)");
    app.add_option("--threads", args.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);

    auto* plan_cmd =
        app.add_subcommand("plan", "derive the sampling plan -> plan.json");
    auto* sample_cmd = app.add_subcommand(
        "sample", "simulate the Fourier series -> samples.csv");
    auto* estimate_cmd = app.add_subcommand(
        "estimate", "estimate Z and F from samples -> estimate.json, dos.csv");
    std::string samples_arg;
    estimate_cmd->add_option("--samples", samples_arg,
                             "sample CSV to read (default: samples.csv in "
                             "the output directory)");
    auto* pipeline_cmd = app.add_subcommand(
        "pipeline", "plan + sample + estimate in one run");
    auto* lemmas_cmd = app.add_subcommand(
        "verify-lemmas",
        "compare window constants against their closed-form bounds "
        "-> lemmas.csv");
    auto* mc_cmd = app.add_subcommand(
        "noise-mc",
        "Monte Carlo noise propagation study -> noise_mc.json, "
        "noise_trials.csv");
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "planner scaling table over spin counts -> sweep.csv");
    std::vector<int> sweep_n{4, 8, 16, 32, 64};
    double sweep_de_per_spin = 1.0;
    sweep_cmd->add_option("--n-values", sweep_n, "spin counts to tabulate");
    sweep_cmd->add_option("--delta-E-per-spin", sweep_de_per_spin,
                          "bandwidth per spin for the sweep rule dE = k*n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const Context ctx = make_context(args);
        if (plan_cmd->parsed()) return cmd_plan(ctx);
        if (sample_cmd->parsed()) return cmd_sample(ctx);
        if (estimate_cmd->parsed()) return cmd_estimate(ctx, samples_arg);
        if (pipeline_cmd->parsed()) return cmd_pipeline(ctx);
        if (lemmas_cmd->parsed()) return cmd_verify_lemmas(ctx);
        if (mc_cmd->parsed()) return cmd_noise_mc(ctx);
        if (sweep_cmd->parsed()) return cmd_sweep(ctx, sweep_n, sweep_de_per_spin);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
