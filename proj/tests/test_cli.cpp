// End-to-end checks of the simulate binary (spawned as a subprocess).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string command = std::string(SIMULATE_BIN) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    const int raw = std::system(command.c_str());
    return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("usage and help") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("--bogus") == 1);
}

TEST_CASE("oracle-check mode writes a passing report") {
    fs::remove_all("cli_oracle");
    const std::string config = std::string(CONFIG_DIR) + "/oracle_check.ini";
    CHECK(run_cli(config + " --out cli_oracle") == 0);
    const std::string report = slurp("cli_oracle/oracle_report.json");
    CHECK(report.find("\"pass\": true") != std::string::npos);
    CHECK(fs::exists("cli_oracle/manifest.json"));
    CHECK(!fs::exists("cli_oracle/INCOMPLETE"));
}

TEST_CASE("uniform zero-potential run produces identical snapshots") {
    fs::remove_all("cli_uniform");
    std::ofstream("cli_uniform.ini")
        << "[run]\nmode = discrete\nsteps = 30\noutput_every = 10\n"
           "out_dir = cli_uniform\n"
           "[lattice]\nsites = 10\nspacing = 0.1\ngamma = 1.0\nlambda = 1.0\n"
           "[initial]\ndensity = constant\ndensity_value = 0.4\n"
           "temperature = constant\ntemperature_value = 0.04\n";
    CHECK(run_cli("cli_uniform.ini") == 0);
    const std::string first = slurp("cli_uniform/snapshots/step_00000000.csv");
    for (const char* name : {"step_00000010.csv", "step_00000020.csv", "step_00000030.csv"})
        CHECK(slurp(fs::path("cli_uniform/snapshots") / name) == first);
}

TEST_CASE("invalid rate configs exit with the config code and list violations") {
    std::ofstream("cli_bad.ini")
        << "[run]\nmode = discrete\n[lattice]\nepsilon = 1.0\nlambda = 0.9\n";
    CHECK(run_cli("cli_bad.ini") == 2);
    const std::string err = slurp("cli_stderr.txt");
    CHECK(err.find("2*lambda*epsilon") != std::string::npos);
}

TEST_CASE("mode override switches the run") {
    fs::remove_all("cli_override");
    // The discrete demo config, forced into oracle-check mode, still works
    // because the lattice section is shared.
    std::ofstream("cli_override.ini")
        << "[run]\nmode = discrete\nsteps = 5\nout_dir = cli_override\n"
           "[lattice]\nsites = 3\nspacing = 1.0\nepsilon = 0.1\nlambda = 1.0\n"
           "[initial]\ndensity = constant\ndensity_value = 0.5\n"
           "temperature = constant\ntemperature_value = 0.1\n"
           "[oracle]\nstates = 5\n";
    CHECK(run_cli("cli_override.ini --mode oracle-check") == 0);
    CHECK(fs::exists("cli_override/oracle_report.json"));
}

TEST_CASE("experiment mode writes the dufour report with the factor near 2") {
    fs::remove_all("cli_dufour");
    std::ofstream("cli_dufour.ini")
        << "[run]\nmode = experiment\nout_dir = cli_dufour\n"
           "[experiment]\nname = dufour\nbase_sites = 48\nlevels = 4\n";
    CHECK(run_cli("cli_dufour.ini") == 0);
    const std::string report = slurp("cli_dufour/report.json");
    CHECK(report.find("\"pass\": true") != std::string::npos);
    CHECK(report.find("j_gamma/(Theta j_c)") != std::string::npos);
    CHECK(fs::exists("cli_dufour/series.csv"));
    CHECK(fs::exists("cli_dufour/report.txt"));
}

TEST_CASE("output root environment variable relocates relative out dirs") {
    fs::remove_all("cli_root");
    std::ofstream("cli_root.ini")
        << "[run]\nmode = discrete\nsteps = 2\nout_dir = nested/run\n"
           "[lattice]\nsites = 4\nspacing = 0.1\nlambda = 1.0\n"
           "[initial]\ndensity = constant\ndensity_value = 0.3\n"
           "temperature = constant\ntemperature_value = 0.05\n";
    const std::string command = std::string("SORETSIM_OUT_ROOT=cli_root ") + SIMULATE_BIN +
                                " cli_root.ini > cli_stdout.txt 2> cli_stderr.txt";
    CHECK(WEXITSTATUS(std::system(command.c_str())) == 0);
    CHECK(fs::exists("cli_root/nested/run/manifest.json"));
}

TEST_CASE("continuum runs write transport diagnostics") {
    fs::remove_all("cli_cont");
    std::ofstream("cli_cont.ini")
        << "[run]\nmode = continuum\nsteps = 10\noutput_every = 5\nout_dir = cli_cont\n"
           "[lattice]\nlambda = 0.5\n"
           "[grid]\ncells = 24\nlength = 1.0\nrho_max = 1.0\n"
           "[initial]\ndensity = gaussian\ndensity_base = 0.2\ndensity_amp = 0.2\n"
           "density_center = 0.5\ndensity_width = 0.2\n"
           "temperature = linear\ntemperature_lo = 0.08\ntemperature_hi = 0.1\n";
    CHECK(run_cli("cli_cont.ini") == 0);
    const std::string diag = slurp("cli_cont/diagnostics.csv");
    CHECK(diag.rfind("x,s_density,sigma,force_c,force_e,L_cc,L_ce,L_ee,xi_c,xi_e", 0) == 0);
    CHECK(fs::exists("cli_cont/snapshots/step_00000010.csv"));
}

TEST_CASE("runs that violate bounds keep the sentinel and exit categorized") {
    fs::remove_all("cli_fail");
    std::ofstream out("cli_fail.ini");
    out << "[run]\nmode = continuum\nsteps = 10\nout_dir = cli_fail\n"
           "[lattice]\nlambda = 0.5\n"
           "[grid]\ncells = 16\nlength = 1.0\nrho_max = 1.0\n"
           "[potential]\nkind = table\nvalues =";
    for (int i = 0; i < 16; ++i)
        out << (i == 8 ? " 0.3" : " 0.0");
    out << "\n[initial]\ndensity = table\ndensity_values =";
    for (int i = 0; i < 16; ++i)
        out << (i == 8 ? " 1e-12" : " 0.5");
    out << "\ntemperature = constant\ntemperature_value = 0.1\n";
    out.close();
    CHECK(run_cli("cli_fail.ini") == 5); // bounds violated
    CHECK(fs::exists("cli_fail/INCOMPLETE"));
    const std::string manifest = slurp("cli_fail/manifest.json");
    CHECK(manifest.find("\"status\": \"failed\"") != std::string::npos);
    CHECK(manifest.find("bounds-violated") != std::string::npos);
}
