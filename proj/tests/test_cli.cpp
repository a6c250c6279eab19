#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path d = [] {
        auto p = fs::temp_directory_path() / "vortexsr_cli_test";
        fs::create_directories(p);
        return p;
    }();
    return d;
}

RunResult run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path outfile = scratch_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    const std::string cmd = env + (env.empty() ? "" : " ") + VORTEXSR_CLI_PATH " " + args +
                            " > " + outfile.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(outfile);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("eval subcommand prints 12 significant digits") {
    const auto r = run("eval laguerre --n 1 --s 0 --x 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.606530659713\n");
    const auto b = run("eval bessel --nu 0 --x 1");
    CHECK(b.exit_code == 0);
    CHECK(b.out == "0.765197686558\n");
    const auto g = run("eval genlaguerre --s 3 --l 2 --x 0");
    CHECK(g.exit_code == 0);
    CHECK(g.out == "10\n");
}

TEST_CASE("ground state yields an empty spectrum and success") {
    const auto r = run("quantum-spectrum --n 0 --b 0.1 --theta-count 4");
    CHECK(r.exit_code == 0);
    // Header/echo lines only, no data rows.
    std::istringstream is(r.out);
    std::string line;
    bool has_data = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '#' && line.find("theta") != 0) has_data = true;
    }
    CHECK(!has_data);
}

TEST_CASE("invalid parameters exit with code 1") {
    CHECK(run("quantum-spectrum --n 2 --b -0.5").exit_code == 1);
    CHECK(run("quantum-spectrum --n -3 --b 0.5").exit_code == 1);
    CHECK(run("eval laguerre --n 1 --s 0 --x -2").exit_code == 1);
    CHECK(run("no-such-command").exit_code == 1);
    CHECK(run("classical-spectrum --beta-perp 1.5").exit_code == 1);
}

TEST_CASE("unwritable output path exits with code 3") {
    const auto r = run("quantum-spectrum --n 1 --b 0.01 --theta-count 2 "
                       "-o /nonexistent_dir_zzz/out.csv");
    CHECK(r.exit_code == 3);
}

TEST_CASE("outputs are byte-identical across reruns and thread counts") {
    const fs::path a = scratch_dir() / "a.csv";
    const fs::path b = scratch_dir() / "b.csv";
    const fs::path c = scratch_dir() / "c.csv";
    const std::string args = "quantum-spectrum --n 40 --s 3 --b 0.02 --kz 0.4 "
                             "--theta-count 16 --include-poles --format csv -o ";
    CHECK(run(args + a.string(), "VORTEX_SR_THREADS=1").exit_code == 0);
    CHECK(run(args + b.string(), "VORTEX_SR_THREADS=1").exit_code == 0);
    CHECK(run(args + c.string(), "VORTEX_SR_THREADS=7").exit_code == 0);
    const auto sa = slurp(a);
    CHECK(!sa.empty());
    CHECK(sa == slurp(b));
    CHECK(sa == slurp(c));
}

TEST_CASE("csv schema") {
    const fs::path f = scratch_dir() / "schema.csv";
    REQUIRE(run("quantum-spectrum --n 3 --b 0.1 --theta-count 3 -o " + f.string())
                .exit_code == 0);
    const std::string text = slurp(f);
    CHECK(text.find("theta,nu,polarization,emission_density,L_flux_density,"
                    "power_density,flags") != std::string::npos);
    CHECK(text.find("# ") == 0); // parameter echo header
    CHECK(text.find("# n=3") != std::string::npos);
}

TEST_CASE("json output carries a metadata envelope") {
    const fs::path f = scratch_dir() / "out.json";
    REQUIRE(run("quantum-spectrum --n 2 --b 0.05 --theta-count 3 --format json -o " +
                f.string()).exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(f));
    CHECK(j.contains("metadata"));
    CHECK(j["metadata"].contains("version"));
    CHECK(j["metadata"].contains("config"));
    CHECK(j["metadata"].contains("config_hash"));
    CHECK(j.contains("rows"));
    CHECK(j["rows"].is_array());
    CHECK(!j["rows"].empty());
}

TEST_CASE("config file parameters with command-line override") {
    const fs::path cfgf = scratch_dir() / "run.cfg";
    {
        std::ofstream out(cfgf);
        out << "[eval.laguerre]\n"
            << "n = 1\n"
            << "s = 0\n"
            << "x = 1\n";
    }
    const auto r = run("--config " + cfgf.string() + " eval laguerre");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.606530659713\n");
    const auto o = run("--config " + cfgf.string() + " eval laguerre --x 0");
    CHECK(o.exit_code == 0);
    CHECK(o.out == "0\n");
}

TEST_CASE("comparison drivers run and report small residuals") {
    const auto t = run("compare-tensors --beta 0.5 --nu-max 12 --theta-count 8");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("max_per_harmonic_residual") != std::string::npos);
    CHECK(t.out.find("integrated_residual") != std::string::npos);
    const auto c = run("compare-limits --n 2000 --beta-perp 0.4 --theta-count 6 --nu-max 3");
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("max_rel_deviation") != std::string::npos);
}
