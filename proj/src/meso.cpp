#include "biphase/meso.hpp"

#include <algorithm>
#include <cmath>

#include "biphase/diagnostics.hpp"

namespace biphase {

MesoState make_meso_state(StaggeredGrid grid, std::vector<double> rho, std::vector<double> c,
                          std::vector<double> u) {
    const std::size_t n = grid.cells();
    if (u.empty()) u.assign(n, 0.0);
    if (rho.size() != n || c.size() != n || u.size() != n) {
        throw std::invalid_argument("meso state: field sizes differ from the grid");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (c[j] != 0.0 && c[j] != 1.0) throw std::invalid_argument("meso state: color must be 0 or 1");
        if (!(rho[j] > 0.0)) throw std::invalid_argument("meso state: density must be > 0");
    }
    MesoState s;
    s.grid = std::move(grid);
    s.rho = std::move(rho);
    s.c = std::move(c);
    s.u = std::move(u);
    return s;
}

double riemann_density(double x) {
    return (x >= 0.25 && x < 0.75) ? 2.0 : 0.125;
}

MesoState init_meso_riemann(std::size_t cells, std::size_t stride) {
    if (stride == 0) throw ConfigError("phase stride must be >= 1");
    if (cells < 4 || cells % (2 * stride) != 0) {
        throw ConfigError("meso Riemann datum needs an even cell count >= 4 (multiple of 2*stride)");
    }
    StaggeredGrid grid = StaggeredGrid::uniform(cells, 1.0);
    std::vector<double> rho(cells);
    std::vector<double> c(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        rho[j] = riemann_density(grid.midpoint(j));
        c[j] = (j / stride) % 2 == 0 ? 1.0 : 0.0;
    }
    return make_meso_state(std::move(grid), std::move(rho), std::move(c));
}

MesoState step_meso(const MesoState& state, const MaterialPair& mat, const StepPolicy& policy, double dt_try) {
    const std::size_t n = state.cells();
    std::vector<double> p(n);
    std::vector<double> mu(n);
    for (std::size_t j = 0; j < n; ++j) {
        p[j] = mixture_pressure(state.c[j], state.rho[j], mat);
        mu[j] = mixture_viscosity(state.c[j], mat);
    }
    StepOutcome out = lagrangian_step(state.grid, state.u, state.rho, mu, p, policy, dt_try);

    MesoState next;
    next.grid = std::move(out.grid);
    next.u = std::move(out.u);
    next.rho = std::move(out.rho);
    next.c = state.c;
    next.t = state.t + out.dt_used;
    next.dissipated = state.dissipated + out.dissipation_increment;
    next.dt_last = out.dt_used;
    return next;
}

MesoState step_meso(const MesoState& state, const MaterialPair& mat, const StepPolicy& policy) {
    return step_meso(state, mat, policy, choose_dt(state.grid, state.u, policy));
}

MesoRun run_meso(MesoState initial, const RunConfig& cfg, const MesoObserver& on_step) {
    MesoRun run;
    run.state = std::move(initial);
    const double t_end = run.state.t + cfg.t_end;
    run.history.push_back(diagnose(run.state, cfg.mat, 0.0));

    double last_dt = 0.0;
    while (run.state.t < t_end) {
        const double remaining = t_end - run.state.t;
        if (remaining <= 1e-14 * std::max(1.0, t_end)) {
            run.state.t = t_end;
            break;
        }
        double dt = choose_dt(run.state.grid, run.state.u, cfg.policy);
        const bool last = dt >= remaining;
        if (last) dt = remaining;
        try {
            MesoState next = step_meso(run.state, cfg.mat, cfg.policy, dt);
            last_dt = next.dt_last;
            if (last && last_dt == dt) next.t = t_end;
            run.state = std::move(next);
        } catch (const StepFailure& e) {
            run.failed = true;
            run.failure = e.what();
            break;
        }
        ++run.steps;
        run.dt_sequence.push_back(last_dt);
        if (on_step) on_step(run.state);
        if (run.steps % static_cast<std::size_t>(cfg.cadence) == 0 && run.state.t < t_end) {
            run.history.push_back(diagnose(run.state, cfg.mat, last_dt));
        }
    }
    if (run.steps > 0) run.history.push_back(diagnose(run.state, cfg.mat, last_dt));
    return run;
}

MesoRun run_meso(const RunConfig& cfg) {
    return run_meso(init_meso_riemann(cfg.cells), cfg);
}

}  // namespace biphase
