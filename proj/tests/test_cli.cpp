#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "../vendor/doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return OPTICS_CLI_PATH; }

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    fs::create_directories(dir);
    fs::path log = dir / "cli_output.txt";
    std::string cmd = std::string(cli_path()) + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("optics_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("no arguments or unknown subcommand produce usage and exit 64") {
    TempDir tmp;
    CHECK(run_cli("", tmp.path).exit_code == 64);
    CHECK(run_cli("frobnicate", tmp.path).exit_code == 64);
}

TEST_CASE("analytic subcommand emits profiles and metrics; airy modes resolve s") {
    TempDir tmp;
    fs::path out = tmp.path / "ana";
    RunResult r = run_cli("analytic --out " + out.string(), tmp.path);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "profiles.csv"));
    CHECK(fs::exists(out / "metrics.json"));
    CHECK(fs::exists(out / "config.resolved.json"));
    CHECK(fs::exists(out / "VERSION"));
    std::string metrics = slurp(out / "metrics.json");
    CHECK(metrics.find("0.012688") != std::string::npos);  // s = 1.22 l lambda / b

    // simple_ratio mode resolves the envelope radius to l lambda / b = 10.4 mm.
    fs::path cfg = tmp.path / "simple_ratio.json";
    std::ofstream(cfg) << "{\"airy_mode\": \"simple_ratio\"}\n";
    fs::path out2 = tmp.path / "ana2";
    RunResult r2 =
        run_cli("analytic --config " + cfg.string() + " --out " + out2.string(), tmp.path);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(out2 / "metrics.json").find("0.0104") != std::string::npos);
}

TEST_CASE("report run: violation verdict, self-description, bitwise rerun determinism") {
    TempDir tmp;
    fs::path out1 = tmp.path / "run1";
    RunResult r = run_cli("report --out " + out1.string(), tmp.path);
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(out1 / "report.json"));
    std::string report = slurp(out1 / "report.json");
    CHECK(report.find("\"violation\": true") != std::string::npos);
    CHECK(report.find("\"eta\"") != std::string::npos);
    CHECK(report.find("\"duality_sum\"") != std::string::npos);
    CHECK(fs::exists(out1 / "config.resolved.json"));
    CHECK(fs::exists(out1 / "VERSION"));

    fs::path out2 = tmp.path / "run2";
    CHECK(run_cli("report --out " + out2.string(), tmp.path).exit_code == 0);
    CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));
}

TEST_CASE("simulate smoke contract: plane CSVs plus fluxes.json") {
    TempDir tmp;
    fs::path out = tmp.path / "sim";
    RunResult r =
        run_cli("simulate --variant coherent_wg --dims 1 --out " + out.string(), tmp.path);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "fluxes.json"));
    CHECK(fs::exists(out / "sigma0.csv"));
    CHECK(fs::exists(out / "sigma1.csv"));
    CHECK(fs::exists(out / "sigma2.csv"));
    std::string head = slurp(out / "sigma1.csv").substr(0, 32);
    CHECK(head.find("x_m,irradiance_au") != std::string::npos);
}

TEST_CASE("config errors: unknown keys and constraint violations exit 1") {
    TempDir tmp;
    fs::path bogus = tmp.path / "bogus.json";
    std::ofstream(bogus) << "{\"wavelenght_m\": 650e-9}\n";  // typo key
    RunResult r1 = run_cli("analytic --config " + bogus.string() + " --out " +
                               (tmp.path / "o1").string(),
                           tmp.path);
    CHECK(r1.exit_code == 1);
    CHECK(r1.output.find("wavelenght_m") != std::string::npos);

    fs::path fat = tmp.path / "fat.json";
    std::ofstream(fat) << "{\"wire_thickness_m\": 2}\n";
    RunResult r2 = run_cli("analytic --config " + fat.string() + " --out " +
                               (tmp.path / "o2").string(),
                           tmp.path);
    CHECK(r2.exit_code == 1);
    CHECK(r2.output.find("e < u") != std::string::npos);

    fs::path empty = tmp.path / "empty.json";
    std::ofstream(empty) << "{}\n";
    RunResult r3 = run_cli("analytic --config " + empty.string() + " --out " +
                               (tmp.path / "o3").string(),
                           tmp.path);
    CHECK(r3.exit_code == 0);  // all defaults
}

TEST_CASE("photons subcommand: accuracy table and dot files") {
    TempDir tmp;
    fs::path out = tmp.path / "ph";
    RunResult r = run_cli("photons --counts 30 --trials 100 --seed 9 --out " + out.string(),
                          tmp.path);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "accuracy.json"));
    CHECK(fs::exists(out / "dots_coherent_30.csv"));
    CHECK(fs::exists(out / "dots_decoherent_30.csv"));
}

TEST_CASE("wavepacket subcommand: trajectory and report") {
    TempDir tmp;
    fs::path out = tmp.path / "wp";
    // Full-scale run; the miss scenario is the cheapest well-conditioned one.
    RunResult r = run_cli("wavepacket --scenario miss --out " + out.string(), tmp.path);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "trajectory.csv"));
    CHECK(fs::exists(out / "report.json"));
    std::string report = slurp(out / "report.json");
    CHECK(report.find("norm_transmitted") != std::string::npos);
}
