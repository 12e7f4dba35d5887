#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "biphase/diagnostics.hpp"
#include "oracles.hpp"

using namespace biphase;

namespace {

MesoState alternating(std::size_t J, double rho_plus, double rho_minus) {
    std::vector<double> rho(J), c(J);
    for (std::size_t j = 0; j < J; ++j) {
        c[j] = j % 2 == 0 ? 1.0 : 0.0;
        rho[j] = c[j] == 1.0 ? rho_plus : rho_minus;
    }
    return make_meso_state(StaggeredGrid::uniform(J), rho, c);
}

// Same cells, shifted by a fraction of a cell so cells straddle windows and the seam.
MesoState shifted(const MesoState& s, double offset) {
    std::vector<double> x = s.grid.node_x();
    for (double& v : x) v += offset;
    return make_meso_state(StaggeredGrid(x, s.grid.length()), s.rho, s.c, s.u);
}

}  // namespace

TEST_CASE("mass and energy functionals") {
    const MaterialPair mat = reference_materials(0.1, 0.1);
    const MesoState flat = make_meso_state(StaggeredGrid::uniform(10), std::vector<double>(10, 1.0),
                                           std::vector<double>{1, 0, 1, 0, 1, 0, 1, 0, 1, 0});
    CHECK(total_mass(flat) == doctest::Approx(1.0).epsilon(1e-15));
    const EnergySplit e = total_energy(flat, mat);
    CHECK(e.total() == 0.0);

    // continuum internal energy of the Riemann datum, half of each phase everywhere
    auto g_quad = [](double gamma, double rho) {
        return rho * oracle::simpson([gamma](double s) { return std::pow(s, gamma - 2.0); }, 1.0, rho, 1e-14);
    };
    auto g_mix = [&](double rho) { return 0.5 * g_quad(1.0, rho) + 0.5 * g_quad(2.0, rho); };
    const double continuum = oracle::simpson([&](double) { return g_mix(0.125); }, 0.0, 0.25, 1e-14) +
                             oracle::simpson([&](double) { return g_mix(2.0); }, 0.25, 0.75, 1e-14) +
                             oracle::simpson([&](double) { return g_mix(0.125); }, 0.75, 1.0, 1e-14);
    const MesoState riemann = init_meso_riemann(1000);
    const EnergySplit er = total_energy(riemann, mat);
    CHECK(er.kinetic == 0.0);
    CHECK(er.internal == doctest::Approx(continuum).epsilon(1e-10));
    CHECK(er.internal == doctest::Approx(0.754247292102483).epsilon(1e-10));

    const MacroState macro = init_macro_riemann(1000);
    CHECK(total_energy(macro, mat).internal == doctest::Approx(continuum).epsilon(1e-10));
}

TEST_CASE("volume-fraction estimator") {
    const MesoState pure = make_meso_state(StaggeredGrid::uniform(6), std::vector<double>(6, 1.0),
                                           std::vector<double>(6, 1.0));
    for (std::size_t j = 0; j < 6; ++j) CHECK(estimate_alpha_meso(pure, j) == doctest::Approx(1.0).epsilon(1e-15));

    const MesoState alt = alternating(6, 1.0, 1.0);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(estimate_alpha_meso(alt, j) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(estimate_alpha_meso_printed(alt, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    CHECK(estimate_alpha_meso_printed(pure, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    // wraps around the seam
    const MesoState one = make_meso_state(StaggeredGrid::uniform(4), std::vector<double>(4, 1.0), {1, 0, 0, 0});
    CHECK(estimate_alpha_meso(one, 3) == doctest::Approx(0.25).epsilon(1e-15));
    for (double a : estimate_alpha_meso(init_meso_riemann(100))) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
}

TEST_CASE("coarse graining") {
    SUBCASE("synthetic two-value field") {
        const MesoState s = alternating(40, 4.0, 0.8);
        const CoarseFields f = coarse_grain(s, 5);
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(f.alpha_hat[k] == doctest::Approx(0.5).epsilon(1e-14));
            CHECK(f.rho_plus_hat[k] == doctest::Approx(4.0).epsilon(1e-14));
            CHECK(f.rho_minus_hat[k] == doctest::Approx(0.8).epsilon(1e-14));
            CHECK(f.rho_hat[k] == doctest::Approx(2.4).epsilon(1e-14));
        }
    }

    SUBCASE("single phase") {
        const MesoState s = make_meso_state(StaggeredGrid::uniform(20), init_meso_riemann(20).rho,
                                            std::vector<double>(20, 1.0));
        const CoarseFields f = coarse_grain(s, 4);
        CHECK(f.alpha_hat == std::vector<double>(4, 1.0));
        CHECK(f.rho_plus_hat[0] == doctest::Approx(0.125));
        CHECK(f.rho_plus_hat[1] == doctest::Approx(2.0));
        CHECK(f.rho_minus_hat[1] == 0.0);
    }

    SUBCASE("window mass and K = 1 on a grid crossing the seam") {
        MesoState s = shifted(init_meso_riemann(60), -0.0123);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> vel(-1.0, 1.0);
        for (double& v : s.u) v = vel(rng);
        for (std::size_t K : {1u, 7u, 20u}) {
            const CoarseFields f = coarse_grain(s, K);
            double mass = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                mass += f.rho_hat[k] * f.window_length();
                const double mix = f.alpha_hat[k] * f.rho_plus_hat[k] + (1.0 - f.alpha_hat[k]) * f.rho_minus_hat[k];
                CHECK(mix == doctest::Approx(f.rho_hat[k]).epsilon(1e-10));
            }
            CHECK(std::abs(mass - total_mass(s)) <= 1e-12);
        }
        const CoarseFields g = coarse_grain(s, 1);
        double vol_plus = 0.0, momentum = 0.0;
        for (std::size_t j = 0; j < s.cells(); ++j) {
            vol_plus += s.c[j] * s.grid.cell_dx(j);
            momentum += 0.5 * (s.u[j] + s.u[(j + 59) % 60]) * s.grid.cell_dx(j);
        }
        CHECK(g.alpha_hat[0] == doctest::Approx(vol_plus).epsilon(1e-13));
        CHECK(g.u_hat[0] == doctest::Approx(momentum).epsilon(1e-12));
    }

    CHECK_THROWS_AS(coarse_grain(init_meso_riemann(10), 10), ResolutionError);
    CHECK_THROWS_AS(coarse_grain(init_meso_riemann(10), 0), ResolutionError);
}

TEST_CASE("field comparison norms") {
    const CoarseFields a = coarse_grain(alternating(40, 4.0, 0.8), 5);
    const ComparisonReport same = compare_fields(a, a);
    CHECK(same.rho.l1 == 0.0);
    CHECK(same.u.linf == 0.0);
    CHECK(same.alpha.rel_l2 == 0.0);

    CoarseFields b = a;
    for (double& r : b.rho_hat) r += 0.25;
    const ComparisonReport off = compare_fields(b, a);
    CHECK(off.rho.l1 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(off.rho.linf == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(off.rho.rel_l1 == doctest::Approx(0.25 / 2.4).epsilon(1e-14));

    CoarseFields c = coarse_grain(alternating(40, 4.0, 0.8), 4);
    CHECK_THROWS_AS(compare_fields(a, c), ComparisonError);

    // metric axioms on random vectors
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(9), y(9), z(9);
        for (std::size_t i = 0; i < 9; ++i) {
            x[i] = val(rng);
            y[i] = val(rng);
            z[i] = val(rng);
        }
        const NormSet xy = compare_series(x, y, 0.1), yx = compare_series(y, x, 0.1);
        const NormSet xz = compare_series(x, z, 0.1), zy = compare_series(z, y, 0.1);
        CHECK(xy.l1 == doctest::Approx(yx.l1));
        CHECK(xy.l2 == doctest::Approx(yx.l2));
        CHECK(xy.l1 <= xz.l1 + zy.l1 + 1e-15);
        CHECK(xy.l2 <= xz.l2 + zy.l2 + 1e-15);
        CHECK(xy.linf <= xz.linf + zy.linf + 1e-15);
        CHECK(xy.l1 > 0.0);
    }
}

TEST_CASE("empirical-measure moments") {
    const MesoState s = shifted(init_meso_riemann(100), 0.0031);
    CHECK(young_moment(s, [](double, double, double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-13));
    double vol_plus = 0.0;
    for (std::size_t j = 0; j < s.cells(); ++j) vol_plus += s.c[j] * s.grid.cell_dx(j);
    CHECK(young_moment(s, [](double, double, double eta) { return eta; }) == doctest::Approx(vol_plus).epsilon(1e-14));
    CHECK(young_moment(s, [](double, double xi, double) { return xi; }) == doctest::Approx(total_mass(s)).epsilon(1e-14));
}

TEST_CASE("two-point structure") {
    const auto synthetic = two_point_structure(alternating(40, 4.0, 0.8), 5);
    for (const auto& w : synthetic) {
        CHECK(w.var_plus <= 1e-28);
        CHECK(w.var_minus <= 1e-28);
        CHECK(w.gap == doctest::Approx(3.2));
        CHECK(w.concentration <= 1e-28);
    }

    const auto initial = two_point_structure(init_meso_riemann(1000), 50);
    // both phases share the density profile, so the gap vanishes everywhere; windows
    // away from the jumps carry no spread, the two straddling windows do
    std::size_t spread = 0;
    for (const auto& w : initial) {
        CHECK(w.gap_degenerate);
        const bool straddles = std::abs(w.center - 0.25) < 0.01 || std::abs(w.center - 0.75) < 0.01;
        CHECK(w.concentration == (straddles ? std::numeric_limits<double>::infinity() : 0.0));
        spread += straddles;
    }
    CHECK(spread == 2);

    const MesoState one = make_meso_state(StaggeredGrid::uniform(8), std::vector<double>(8, 1.0),
                                          std::vector<double>(8, 1.0));
    const auto lone = two_point_structure(one, 2);
    CHECK(lone[0].has_plus);
    CHECK_FALSE(lone[0].has_minus);
    CHECK(lone[0].gap_degenerate);
}
