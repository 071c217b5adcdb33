#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "soretsim/soretsim.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct LatticeHandle {
    soretsim_lattice* ptr = nullptr;
    ~LatticeHandle() { soretsim_lattice_free(ptr); }
};

struct StateHandle {
    soretsim_state* ptr = nullptr;
    ~StateHandle() { soretsim_state_free(ptr); }
};

} // namespace

TEST_CASE("lattice creation, queries and error codes") {
    LatticeHandle lattice;
    const double v[4] = {0.0, 0.23, 0.19, -0.32};
    CHECK(soretsim_lattice_create(4, 1.0, 0.1, 0.5, v, &lattice.ptr) == SORETSIM_OK);
    CHECK(soretsim_lattice_num_sites(lattice.ptr) == 4);
    CHECK(soretsim_lattice_k_max(lattice.ptr) == 9);
    CHECK(soretsim_lattice_quantization_error(lattice.ptr) == doctest::Approx(0.03));
    double quantized[4];
    CHECK(soretsim_lattice_potential(lattice.ptr, quantized) == SORETSIM_OK);
    CHECK(quantized[1] == doctest::Approx(0.2));

    soretsim_lattice* bad = nullptr;
    CHECK(soretsim_lattice_create(4, 1.0, 1.0, 0.6, nullptr, &bad) ==
          SORETSIM_ERR_INVALID_RATES);
    CHECK(std::string(soretsim_last_error()).find("2*lambda*epsilon") != std::string::npos);
    CHECK(soretsim_lattice_create(4, 1.0, 0.1, 0.5, nullptr, nullptr) ==
          SORETSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("state lifecycle: steps conserve totals and raise entropy") {
    LatticeHandle lattice;
    REQUIRE(soretsim_lattice_create(16, 1.0, 0.25, 0.1, nullptr, &lattice.ptr) == SORETSIM_OK);
    std::vector<double> occupation(16), temperature(16);
    for (int i = 0; i < 16; ++i) {
        occupation[i] = 0.3 + 0.2 * std::sin(0.5 * i);
        temperature[i] = 0.08 + 0.01 * std::cos(0.3 * i);
    }
    StateHandle state;
    REQUIRE(soretsim_state_from_profiles(lattice.ptr, occupation.data(), temperature.data(),
                                         &state.ptr) == SORETSIM_OK);

    double n0 = 0.0, e0 = 0.0, s0 = 0.0;
    CHECK(soretsim_state_totals(state.ptr, lattice.ptr, &n0, &e0) == SORETSIM_OK);
    CHECK(soretsim_state_entropy(state.ptr, lattice.ptr, &s0) == SORETSIM_OK);

    std::vector<double> flux(15), eflux(15);
    for (int step = 0; step < 50; ++step)
        CHECK(soretsim_state_step(state.ptr, lattice.ptr, SORETSIM_SUM_FINITE, flux.data(),
                                  eflux.data()) == SORETSIM_OK);

    double n1 = 0.0, e1 = 0.0, s1 = 0.0;
    CHECK(soretsim_state_totals(state.ptr, lattice.ptr, &n1, &e1) == SORETSIM_OK);
    CHECK(soretsim_state_entropy(state.ptr, lattice.ptr, &s1) == SORETSIM_OK);
    CHECK(std::abs(n1 - n0) < 1e-11);
    CHECK(std::abs(e1 - e0) < 1e-11);
    CHECK(s1 >= s0);

    std::vector<double> n(16), kinetic(16), theta(16);
    CHECK(soretsim_state_get(state.ptr, n.data(), kinetic.data(), theta.data()) ==
          SORETSIM_OK);
    for (int i = 0; i < 16; ++i) {
        CHECK(n[i] >= 0.0);
        CHECK(n[i] <= 1.0);
        CHECK(theta[i] > 0.0);
    }

    CHECK(soretsim_state_step(nullptr, lattice.ptr, 0, nullptr, nullptr) ==
          SORETSIM_ERR_INVALID_ARGUMENT);
    CHECK(soretsim_state_step(state.ptr, lattice.ptr, 7, nullptr, nullptr) ==
          SORETSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracle check through the C surface") {
    LatticeHandle lattice;
    REQUIRE(soretsim_lattice_create(3, 1.0, 0.1, 1.0, nullptr, &lattice.ptr) == SORETSIM_OK);
    const double occupation[3] = {0.5, 0.5, 0.5};
    const double temperature[3] = {0.1, 0.1, 0.1};
    StateHandle state;
    REQUIRE(soretsim_state_from_profiles(lattice.ptr, occupation, temperature, &state.ptr) ==
            SORETSIM_OK);
    double err = 1.0;
    CHECK(soretsim_oracle_check(state.ptr, lattice.ptr, -1, &err) == SORETSIM_OK);
    CHECK(err < 1e-12);
}

TEST_CASE("continuum handles: currents, stepping, entropy") {
    const int cells = 32;
    std::vector<double> rho(cells), theta(cells);
    for (int i = 0; i < cells; ++i) {
        rho[i] = 0.3 + 0.1 * std::cos(M_PI * (i + 0.5) / cells);
        theta[i] = 0.1 + 0.02 * std::cos(M_PI * (i + 0.5) / cells);
    }
    soretsim_continuum* state = nullptr;
    REQUIRE(soretsim_continuum_create(cells, 1.0, 1.0, rho.data(), theta.data(), nullptr,
                                      &state) == SORETSIM_OK);
    std::vector<double> jc(cells + 1), jg(cells + 1), je(cells + 1);
    CHECK(soretsim_continuum_currents(state, 0.5, jc.data(), jg.data(), je.data()) ==
          SORETSIM_OK);
    CHECK(jc[0] == 0.0);
    CHECK(jc[cells] == 0.0);

    double mass0 = 0.0, energy0 = 0.0;
    CHECK(soretsim_continuum_mass_energy(state, &mass0, &energy0) == SORETSIM_OK);
    double s_prev = 0.0;
    CHECK(soretsim_continuum_entropy(state, &s_prev) == SORETSIM_OK);
    double dt = 0.0;
    for (int step = 0; step < 100; ++step) {
        CHECK(soretsim_continuum_step(state, 0.5, 0.0, &dt) == SORETSIM_OK);
        double s_now = 0.0;
        CHECK(soretsim_continuum_entropy(state, &s_now) == SORETSIM_OK);
        CHECK(s_now >= s_prev - 1e-12);
        s_prev = s_now;
    }
    CHECK(dt > 0.0);
    double mass1 = 0.0, energy1 = 0.0;
    CHECK(soretsim_continuum_mass_energy(state, &mass1, &energy1) == SORETSIM_OK);
    CHECK(std::abs(mass1 - mass0) < 1e-12);
    CHECK(std::abs(energy1 - energy0) < 1e-11);

    // Unstable explicit step is refused.
    CHECK(soretsim_continuum_step(state, 0.5, 1.0, nullptr) == SORETSIM_ERR_UNSTABLE_STEP);
    soretsim_continuum_free(state);
}

TEST_CASE("config-driven runs write their artifacts deterministically") {
    const fs::path dir = fs::path("capi_run");
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path config_path = dir / "run.ini";
    {
        std::ofstream out(config_path);
        out << "[run]\n"
               "mode = discrete\n"
               "steps = 20\n"
               "output_every = 5\n"
               "out_dir = " << (dir / "a").string() << "\n"
               "[lattice]\n"
               "sites = 12\n"
               "spacing = 0.05\n"
               "gamma = 1.0\n"
               "lambda = 2.0\n"
               "[initial]\n"
               "density = gaussian\n"
               "density_base = 0.2\n"
               "density_amp = 0.3\n"
               "density_center = 0.5\n"
               "density_width = 0.15\n"
               "temperature = constant\n"
               "temperature_value = 0.02\n";
    }

    CHECK(soretsim_run_file(config_path.string().c_str(), nullptr, nullptr) == SORETSIM_OK);
    CHECK(fs::exists(dir / "a" / "manifest.json"));
    CHECK(fs::exists(dir / "a" / "config.canonical.ini"));
    CHECK(fs::exists(dir / "a" / "snapshots" / "step_00000000.csv"));
    CHECK(fs::exists(dir / "a" / "snapshots" / "step_00000020.csv"));
    CHECK(!fs::exists(dir / "a" / "INCOMPLETE"));

    // Byte-identical data files on a second run.
    CHECK(soretsim_run_file(config_path.string().c_str(), (dir / "b").string().c_str(),
                            nullptr) == SORETSIM_OK);
    for (const char* name : {"step_00000000.csv", "step_00000010.csv", "step_00000020.csv"})
        CHECK(slurp(dir / "a" / "snapshots" / name) == slurp(dir / "b" / "snapshots" / name));

    // Invalid config surfaces as a config status and a sentinel-free failure.
    const fs::path bad_path = dir / "bad.ini";
    std::ofstream(bad_path) << "[run]\nmode = warp\n";
    CHECK(soretsim_run_file(bad_path.string().c_str(), nullptr, nullptr) ==
          SORETSIM_ERR_CONFIG_INVALID);
    CHECK(soretsim_exit_code(SORETSIM_ERR_CONFIG_INVALID) == 2);
    CHECK(soretsim_run_file((dir / "missing.ini").string().c_str(), nullptr, nullptr) ==
          SORETSIM_ERR_IO);
}

TEST_CASE("status names are stable strings") {
    CHECK(std::string(soretsim_status_name(SORETSIM_OK)) == "ok");
    CHECK(std::string(soretsim_status_name(SORETSIM_ERR_ORACLE_MISMATCH)) ==
          "oracle-mismatch");
    CHECK(soretsim_exit_code(SORETSIM_OK) == 0);
}
