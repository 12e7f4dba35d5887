#pragma once

#include <cstddef>
#include <functional>
#include <cstdint>
#include <string>
#include <vector>

#include "biphase/config.hpp"
#include "biphase/core.hpp"
#include "biphase/kernel.hpp"
#include "biphase/record.hpp"

namespace biphase {

// Homogenized single-velocity two-phase state. Phase masses are Lagrangian
// invariants of each cell; phase densities are recovered from them.
struct MacroState {
    StaggeredGrid grid;
    std::vector<double> u;           // per node
    std::vector<double> alpha;       // volume fraction of phase +
    std::vector<double> mass_plus;   // alpha rho_+ dx
    std::vector<double> mass_minus;  // (1 - alpha) rho_- dx
    std::vector<double> rho_plus;
    std::vector<double> rho_minus;
    double t = 0.0;
    double dissipated = 0.0;
    double dt_last = 0.0;
    std::int64_t clamp_events = 0;
    std::int64_t guard_events = 0;

    std::size_t cells() const { return grid.cells(); }
    double mixture_density(std::size_t j) const { return (mass_plus[j] + mass_minus[j]) / grid.cell_dx(j); }
    std::vector<double> mixture_density() const;
};

// Phase masses are derived from alpha, the phase densities and the widths.
MacroState make_macro_state(StaggeredGrid grid, std::vector<double> alpha, std::vector<double> rho_plus,
                            std::vector<double> rho_minus, std::vector<double> u = {});

// alpha = alpha0, rho_+ = rho_- = Riemann density by cell midpoint, u = 0.
MacroState init_macro_riemann(std::size_t cells, double alpha0 = 0.5);

// Forward-Euler volume-fraction increment bound per step.
double relaxation_bound(double alpha, const StepPolicy& policy);

// Largest dt keeping the relaxation increment within relaxation_bound,
// predicted from the current velocity field.
double relaxation_dt(const MacroState& state, const MaterialPair& mat, const StepPolicy& policy);

MacroState step_macro(const MacroState& state, const MaterialPair& mat, PressureWeighting weighting,
                      const StepPolicy& policy, double dt_try);
MacroState step_macro(const MacroState& state, const MaterialPair& mat, PressureWeighting weighting,
                      const StepPolicy& policy);

struct MacroRun {
    MacroState state;
    std::vector<DiagnosticsRecord> history;
    std::vector<double> dt_sequence;
    std::size_t steps = 0;
    bool failed = false;
    std::string failure;
};

// Called with every accepted state, in order.
using MacroObserver = std::function<void(const MacroState&)>;

MacroRun run_macro(MacroState initial, const RunConfig& cfg, const MacroObserver& on_step = {});
MacroRun run_macro(const RunConfig& cfg);

}  // namespace biphase
