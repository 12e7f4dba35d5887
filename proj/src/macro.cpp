#include "biphase/macro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biphase/diagnostics.hpp"

namespace biphase {

namespace {

constexpr double kAlphaGuard = 1e-12;

// Recover a phase density from its mass and volume fraction. A phase whose
// fraction collapses while it still carries mass keeps its previous density.
double phase_density(double mass, double fraction, double dx, double previous, std::int64_t& guard_events) {
    if (fraction < kAlphaGuard) {
        if (mass == 0.0) return 0.0;
        ++guard_events;
        return previous;
    }
    return mass / (fraction * dx);
}

}  // namespace

std::vector<double> MacroState::mixture_density() const {
    std::vector<double> rho(cells());
    for (std::size_t j = 0; j < cells(); ++j) rho[j] = mixture_density(j);
    return rho;
}

MacroState make_macro_state(StaggeredGrid grid, std::vector<double> alpha, std::vector<double> rho_plus,
                            std::vector<double> rho_minus, std::vector<double> u) {
    const std::size_t n = grid.cells();
    if (u.empty()) u.assign(n, 0.0);
    if (alpha.size() != n || rho_plus.size() != n || rho_minus.size() != n || u.size() != n) {
        throw std::invalid_argument("macro state: field sizes differ from the grid");
    }
    MacroState s;
    s.mass_plus.resize(n);
    s.mass_minus.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(alpha[j] >= 0.0 && alpha[j] <= 1.0)) throw std::invalid_argument("macro state: alpha outside [0,1]");
        if (!(rho_plus[j] >= 0.0) || !(rho_minus[j] >= 0.0)) {
            throw std::invalid_argument("macro state: phase densities must be >= 0");
        }
        if (alpha[j] == 0.0) rho_plus[j] = 0.0;
        if (alpha[j] == 1.0) rho_minus[j] = 0.0;
        const double dx = grid.cell_dx(j);
        s.mass_plus[j] = alpha[j] * rho_plus[j] * dx;
        s.mass_minus[j] = (1.0 - alpha[j]) * rho_minus[j] * dx;
        if (!(s.mass_plus[j] + s.mass_minus[j] > 0.0)) throw std::invalid_argument("macro state: empty cell");
    }
    s.grid = std::move(grid);
    s.alpha = std::move(alpha);
    s.rho_plus = std::move(rho_plus);
    s.rho_minus = std::move(rho_minus);
    s.u = std::move(u);
    return s;
}

MacroState init_macro_riemann(std::size_t cells, double alpha0) {
    if (cells < 4) throw ConfigError("macro Riemann datum needs at least 4 cells");
    StaggeredGrid grid = StaggeredGrid::uniform(cells, 1.0);
    std::vector<double> rho(cells);
    for (std::size_t j = 0; j < cells; ++j) rho[j] = (grid.midpoint(j) >= 0.25 && grid.midpoint(j) < 0.75) ? 2.0 : 0.125;
    return make_macro_state(std::move(grid), std::vector<double>(cells, alpha0), rho, rho);
}

double relaxation_bound(double alpha, const StepPolicy& policy) {
    return policy.relax_eta * std::min(alpha, 1.0 - alpha) + 1e-6;
}

double relaxation_dt(const MacroState& state, const MaterialPair& mat, const StepPolicy& policy) {
    const std::size_t n = state.cells();
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        const double strain = (state.u[j] - state.u[(j + n - 1) % n]) / state.grid.cell_dx(j);
        const double rate = std::abs(relaxation_rhs(state.alpha[j], state.rho_plus[j], state.rho_minus[j], strain, mat));
        if (rate > 0.0) dt = std::min(dt, relaxation_bound(state.alpha[j], policy) / rate);
    }
    return dt;
}

MacroState step_macro(const MacroState& state, const MaterialPair& mat, PressureWeighting weighting,
                      const StepPolicy& policy, double dt_try) {
    const std::size_t n = state.cells();
    std::vector<double> mu(n);
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) {
        mu[j] = mu_eff(state.alpha[j], mat);
        p[j] = p_eff(state.alpha[j], state.rho_plus[j], state.rho_minus[j], mat, weighting);
    }
    const std::vector<double> rho = state.mixture_density();

    // relaxation drive at time n; only the strain term changes with dt
    std::vector<double> drive_p(n);
    std::vector<double> factor(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = state.alpha[j];
        factor[j] = a * (1.0 - a) / (a * mat.mu_minus + (1.0 - a) * mat.mu_plus);
        drive_p[j] = (a > 0.0 ? mat.law_plus.pressure(state.rho_plus[j]) : 0.0) -
                     (a < 1.0 ? mat.law_minus.pressure(state.rho_minus[j]) : 0.0);
    }

    double dt = dt_try;
    int budget = policy.max_halvings;
    for (;;) {
        StepOutcome out = lagrangian_step(state.grid, state.u, rho, mu, p, policy, dt);
        budget -= out.halvings;

        std::vector<double> alpha(n);
        bool within_bound = true;
        for (std::size_t j = 0; j < n; ++j) {
            const double dx_new = out.grid.cell_dx(j);
            const double strain = (out.u[j] - out.u[(j + n - 1) % n]) / dx_new;
            const double increment =
                out.dt_used * factor[j] * (drive_p[j] - (mat.mu_plus - mat.mu_minus) * strain);
            if (std::abs(increment) > relaxation_bound(state.alpha[j], policy)) within_bound = false;
            alpha[j] = state.alpha[j] + increment;
        }
        if (!within_bound && budget > 0) {
            --budget;
            dt = 0.5 * out.dt_used;
            continue;
        }

        MacroState next;
        next.clamp_events = state.clamp_events;
        next.guard_events = state.guard_events;
        next.rho_plus.resize(n);
        next.rho_minus.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (alpha[j] < 0.0 || alpha[j] > 1.0) {
                alpha[j] = std::clamp(alpha[j], 0.0, 1.0);
                ++next.clamp_events;
            }
            const double dx_new = out.grid.cell_dx(j);
            next.rho_plus[j] = phase_density(state.mass_plus[j], alpha[j], dx_new, state.rho_plus[j], next.guard_events);
            next.rho_minus[j] =
                phase_density(state.mass_minus[j], 1.0 - alpha[j], dx_new, state.rho_minus[j], next.guard_events);
        }
        next.grid = std::move(out.grid);
        next.u = std::move(out.u);
        next.alpha = std::move(alpha);
        next.mass_plus = state.mass_plus;
        next.mass_minus = state.mass_minus;
        next.t = state.t + out.dt_used;
        next.dissipated = state.dissipated + out.dissipation_increment;
        next.dt_last = out.dt_used;
        return next;
    }
}

MacroState step_macro(const MacroState& state, const MaterialPair& mat, PressureWeighting weighting,
                      const StepPolicy& policy) {
    const double dt = std::min(choose_dt(state.grid, state.u, policy), relaxation_dt(state, mat, policy));
    return step_macro(state, mat, weighting, policy, dt);
}

MacroRun run_macro(MacroState initial, const RunConfig& cfg, const MacroObserver& on_step) {
    MacroRun run;
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
        double dt = std::min(choose_dt(run.state.grid, run.state.u, cfg.policy),
                             relaxation_dt(run.state, cfg.mat, cfg.policy));
        const bool last = dt >= remaining;
        if (last) dt = remaining;
        try {
            MacroState next = step_macro(run.state, cfg.mat, cfg.weighting, cfg.policy, dt);
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

MacroRun run_macro(const RunConfig& cfg) {
    return run_macro(init_macro_riemann(cfg.cells), cfg);
}

}  // namespace biphase
