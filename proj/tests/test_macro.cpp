#include <doctest.h>

#include <cmath>

#include "biphase/diagnostics.hpp"
#include "biphase/macro.hpp"
#include "biphase/meso.hpp"

using namespace biphase;

TEST_CASE("macro Riemann initial datum") {
    const MacroState s = init_macro_riemann(1000);
    CHECK(total_mass(s) == doctest::Approx(1.0625).epsilon(1e-12));
    const MesoState m = init_meso_riemann(1000);
    for (std::size_t j = 0; j < 1000; ++j) {
        CHECK(s.alpha[j] == 0.5);
        CHECK(s.mixture_density(j) == doctest::Approx(m.rho[j]).epsilon(1e-15));
        CHECK(s.rho_plus[j] == s.rho_minus[j]);
    }
    CHECK_THROWS_AS(init_macro_riemann(3), ConfigError);
}

TEST_CASE("macro step: no relaxation when phases balance") {
    const MaterialPair mat = reference_materials(0.1, 0.1);
    // p_+(2) = 2 = p_-(sqrt 2)
    const std::size_t J = 12;
    std::vector<double> alpha(J, 0.4), rp(J, 2.0), rm(J, std::sqrt(2.0));
    const MacroState s = make_macro_state(StaggeredGrid::uniform(J), alpha, rp, rm);
    const MacroState n = step_macro(s, mat, PressureWeighting::cross, StepPolicy{});
    for (std::size_t j = 0; j < J; ++j) {
        CHECK(n.alpha[j] == doctest::Approx(0.4).epsilon(1e-14));
        CHECK(n.u[j] == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("macro step: relaxation rate and conservation") {
    const MaterialPair mat = reference_materials(0.1, 0.1);
    const std::size_t J = 10;
    const MacroState s = make_macro_state(StaggeredGrid::uniform(J), std::vector<double>(J, 0.5),
                                          std::vector<double>(J, 2.0), std::vector<double>(J, 2.0));
    const double dt = 1e-4;
    const MacroState n = step_macro(s, mat, PressureWeighting::cross, StepPolicy{}, dt);
    REQUIRE(n.dt_last == dt);
    for (std::size_t j = 0; j < J; ++j) {
        // uniform state: u stays 0, so the rate is 0.25/0.1 * (2 - 4) = -5
        CHECK((n.alpha[j] - 0.5) / dt == doctest::Approx(-5.0).epsilon(1e-12));
        CHECK(n.mass_plus[j] == s.mass_plus[j]);
        CHECK(n.mass_minus[j] == s.mass_minus[j]);
        CHECK(n.mixture_density(j) == doctest::Approx(2.0).epsilon(1e-14));
        // mixture identity
        const double mix = n.alpha[j] * n.rho_plus[j] + (1.0 - n.alpha[j]) * n.rho_minus[j];
        CHECK(mix == doctest::Approx(n.mixture_density(j)).epsilon(1e-14));
    }
    CHECK(n.rho_plus[0] > 2.0);
    CHECK(n.rho_minus[0] < 2.0);
}

TEST_CASE("macro step: equal viscosities reduce to the pressure-only law") {
    const MaterialPair mat = reference_materials(0.1, 0.1);
    MacroState s = init_macro_riemann(40);
    const RunConfig cfg = [] {
        RunConfig c = preset_config("test1");
        c.cells = 40;
        c.t_end = 0.003;
        c.coarse_K = 4;
        return c;
    }();
    s = run_macro(s, cfg).state;  // nonuniform velocity and densities
    const MacroState n = step_macro(s, mat, PressureWeighting::cross, cfg.policy, 5e-5);
    for (std::size_t j = 0; j < 40; ++j) {
        const double a = s.alpha[j];
        const double expected = a + n.dt_last * a * (1.0 - a) *
                                        (mat.law_plus.pressure(s.rho_plus[j]) - mat.law_minus.pressure(s.rho_minus[j])) /
                                        0.1;
        CHECK(std::abs(n.alpha[j] - expected) <= 1e-14);
    }
}

TEST_CASE("macro step: printed alpha update with unequal viscosities") {
    const MaterialPair mat = reference_materials(0.1, 0.02);
    RunConfig cfg = preset_config("test2");
    cfg.cells = 40;
    cfg.t_end = 0.003;
    cfg.coarse_K = 4;
    const MacroState s = run_macro(init_macro_riemann(40), cfg).state;
    const MacroState n = step_macro(s, mat, PressureWeighting::cross, cfg.policy, 5e-5);
    for (std::size_t j = 0; j < 40; ++j) {
        const double strain = (n.u[j] - n.u[(j + 39) % 40]) / n.grid.cell_dx(j);
        const double expected =
            s.alpha[j] + n.dt_last * relaxation_rhs(s.alpha[j], s.rho_plus[j], s.rho_minus[j], strain, mat);
        CHECK(std::abs(n.alpha[j] - expected) <= 1e-14);
    }
}

TEST_CASE("macro run: alpha bounds and mixture mass") {
    for (const char* preset : {"test1", "test2"}) {
        RunConfig cfg = preset_config(preset);
        cfg.cells = 200;
        cfg.t_end = 0.05;
        cfg.coarse_K = 10;
        const MacroState init = init_macro_riemann(cfg.cells);
        const MacroRun run = run_macro(init, cfg);
        REQUIRE_FALSE(run.failed);
        CHECK(run.state.t == cfg.t_end);
        CHECK(run.state.clamp_events == 0);
        CHECK(std::abs(total_mass(run.state) - total_mass(init)) <= 1e-12 * total_mass(init));
        for (std::size_t j = 0; j < cfg.cells; ++j) {
            CHECK(run.state.alpha[j] >= 0.0);
            CHECK(run.state.alpha[j] <= 1.0);
            CHECK(run.state.grid.cell_dx(j) > 0.0);
        }
    }
}

TEST_CASE("macro with alpha = 1 follows a pure meso run") {
    RunConfig cfg = preset_config("test1");
    cfg.mat = reference_materials(0.1, 0.02);
    cfg.cells = 50;
    cfg.t_end = 0.01;
    cfg.coarse_K = 5;
    const MesoState meso0 = make_meso_state(StaggeredGrid::uniform(50), init_meso_riemann(50).rho,
                                            std::vector<double>(50, 1.0));
    const MacroState macro0 = make_macro_state(StaggeredGrid::uniform(50), std::vector<double>(50, 1.0),
                                               meso0.rho, std::vector<double>(50, 0.0));
    const MesoRun a = run_meso(meso0, cfg);
    const MacroRun b = run_macro(macro0, cfg);
    REQUIRE(a.dt_sequence == b.dt_sequence);
    for (std::size_t j = 0; j < 50; ++j) {
        CHECK(std::abs(a.state.u[j] - b.state.u[j]) <= 1e-10);
        CHECK(std::abs(a.state.rho[j] - b.state.mixture_density(j)) <= 1e-10);
        CHECK(b.state.alpha[j] == 1.0);
    }
}
