// Process-level checks of the command-line tool: exit codes, artifact files,
// and byte-for-byte reproducibility. Each case works in its own scratch
// directory under the test working directory.
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;
namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(SPINSPEC_BIN) + " " + args + " > cli_last_output.txt 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = "cli_scratch_" + name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* kIsingConfig = R"({
  "model": {"model": "ising", "n": 6, "boundary": "periodic",
            "Jz": 1.0, "h": 0.5},
  "budget": {"beta": 1.0, "gamma": 0.1},
  "run": {"seed": 3}
})";
}  // namespace

TEST_CASE("cli: pipeline writes all four artifacts and passes") {
    const fs::path dir = scratch("pipeline");
    write_text(dir / "cfg.json", kIsingConfig);
    const int rc = run_cli("-c " + (dir / "cfg.json").string() + " -o " +
                           dir.string() + " pipeline");
    CHECK(rc == 0);
    for (const char* f : {"plan.json", "samples.csv", "dos.csv",
                          "estimate.json"})
        CHECK(fs::exists(dir / f));

    const json est = json::parse(read_file(dir / "estimate.json"));
    for (const char* k : {"Z_tilde", "F_tilde", "Z_exact", "F_exact", "r",
                          "xi", "pass", "config_hash", "seed"})
        CHECK(est.contains(k));
    CHECK(est.at("pass").get<bool>());
    CHECK(est.at("config_hash").get<std::string>().size() == 16);
    CHECK(est.at("seed").get<std::uint64_t>() == 3);

    const json plan = json::parse(read_file(dir / "plan.json"));
    CHECK(plan.at("N").get<std::int64_t>() > 0);
    CHECK(plan.at("config_hash") == est.at("config_hash"));

    const std::string samples = read_file(dir / "samples.csv");
    CHECK(samples.rfind("# meta:", 0) == 0);
    CHECK(samples.find(est.at("config_hash").get<std::string>()) !=
          std::string::npos);
    CHECK(read_file(dir / "dos.csv").rfind("# meta:", 0) == 0);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
    const fs::path a = scratch("repro_a");
    const fs::path b = scratch("repro_b");
    write_text(a / "cfg.json", kIsingConfig);
    write_text(b / "cfg.json", kIsingConfig);
    REQUIRE(run_cli("-c " + (a / "cfg.json").string() + " -o " + a.string() +
                    " pipeline") == 0);
    REQUIRE(run_cli("-c " + (b / "cfg.json").string() + " -o " + b.string() +
                    " pipeline") == 0);
    CHECK(read_file(a / "samples.csv") == read_file(b / "samples.csv"));
    CHECK(read_file(a / "estimate.json") == read_file(b / "estimate.json"));
    CHECK(read_file(a / "dos.csv") == read_file(b / "dos.csv"));
}

TEST_CASE("cli: sample then estimate round trip") {
    const fs::path dir = scratch("roundtrip");
    write_text(dir / "cfg.json", kIsingConfig);
    const std::string common =
        "-c " + (dir / "cfg.json").string() + " -o " + dir.string();
    REQUIRE(run_cli(common + " sample") == 0);
    CHECK(fs::exists(dir / "samples.csv"));
    CHECK(run_cli(common + " estimate --samples " +
                  (dir / "samples.csv").string()) == 0);
    const json est = json::parse(read_file(dir / "estimate.json"));
    CHECK(est.at("pass").get<bool>());
}

TEST_CASE("cli: config errors exit 1 before any work") {
    const fs::path dir = scratch("badcfg");
    write_text(dir / "cfg.json", kIsingConfig);
    const std::string common =
        "-c " + (dir / "cfg.json").string() + " -o " + dir.string();
    CHECK(run_cli(common + " --set budget.gamma=0 plan") == 1);
    CHECK(run_cli(common + " --set model.typo=1 plan") == 1);
    CHECK(run_cli("-c " + (dir / "missing.json").string() + " plan") == 1);
    CHECK(!fs::exists(dir / "plan.json"));
}

TEST_CASE("cli: failed certification exits 2") {
    // Levels pinned to both frame edges with unequal degeneracy, guard band
    // off, tight budget: the wrapped lobes inflate Z~ far past xi. (Equal
    // degeneracies would cancel: the edge states trade identical weight.)
    const fs::path dir = scratch("fail");
    write_text(dir / "cfg.json", R"({
      "model": {"model": "synthetic", "n": 1,
                "levels": [{"energy": 0.0},
                           {"energy": 1.0, "degeneracy": 3}]},
      "budget": {"beta": 2.0, "gamma": 0.01},
      "run": {"guard_band": false}
    })");
    const std::string common =
        "-c " + (dir / "cfg.json").string() + " -o " + dir.string();
    CHECK(run_cli(common + " pipeline") == 2);
    const json est = json::parse(read_file(dir / "estimate.json"));
    CHECK(!est.at("pass").get<bool>());

    // Same system with the guard band restores the certificate.
    CHECK(run_cli(common + " --set run.guard_band=true pipeline") == 0);
}

TEST_CASE("cli: verify-lemmas reports positive margins") {
    const fs::path dir = scratch("lemmas");
    write_text(dir / "cfg.json", kIsingConfig);
    CHECK(run_cli("-c " + (dir / "cfg.json").string() + " -o " + dir.string() +
                  " verify-lemmas") == 0);
    const std::string csv = read_file(dir / "lemmas.csv");
    CHECK(csv.find("theta") != std::string::npos);
    CHECK(csv.find("margin") != std::string::npos);
}

TEST_CASE("cli: sweep records the fitted exponent") {
    const fs::path dir = scratch("sweep");
    write_text(dir / "cfg.json", kIsingConfig);
    CHECK(run_cli("-c " + (dir / "cfg.json").string() + " -o " + dir.string() +
                  " sweep --n-values 4 --n-values 8 --n-values 16") == 0);
    const std::string csv = read_file(dir / "sweep.csv");
    CHECK(csv.find("fitted_exponent") != std::string::npos);
}

TEST_CASE("cli: noise-mc artifact carries the study fields") {
    const fs::path dir = scratch("noisemc");
    write_text(dir / "cfg.json", R"({
      "model": {"model": "free_spins", "n": 3, "h": 1.0},
      "budget": {"beta": 1.0, "gamma": 0.1},
      "noise": {"type": "gaussian", "sigma_g": 1e-4},
      "run": {"seed": 5, "trials": 50}
    })");
    CHECK(run_cli("-c " + (dir / "cfg.json").string() + " -o " + dir.string() +
                  " noise-mc") == 0);
    const json study = json::parse(read_file(dir / "noise_mc.json"));
    for (const char* k : {"trials", "empirical_var", "predicted_var",
                          "empirical_failure_rate", "catastrophic_count"})
        CHECK(study.contains(k));
    CHECK(study.at("trials").get<int>() == 50);
    CHECK(study.at("prediction").at("var_sum").get<double>() > 0.0);
    CHECK(!study.at("prediction").at("includes_l0").get<bool>());

    const std::string trials_csv = read_file(dir / "noise_trials.csv");
    CHECK(trials_csv.find("trial,Z_tilde,F_tilde,pass") != std::string::npos);
    // meta line + header + one row per trial (file ends with a newline).
    CHECK(std::count(trials_csv.begin(), trials_csv.end(), '\n') == 52);
}
