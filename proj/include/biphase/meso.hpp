#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "biphase/config.hpp"
#include "biphase/core.hpp"
#include "biphase/kernel.hpp"
#include "biphase/record.hpp"

namespace biphase {

// Mesoscopic two-fluid state: every cell holds a pure phase (c = 1 for "+",
// c = 0 for "-").
struct MesoState {
    StaggeredGrid grid;
    std::vector<double> u;    // per node
    std::vector<double> rho;  // per cell
    std::vector<double> c;    // per cell, 0 or 1
    double t = 0.0;
    double dissipated = 0.0;
    double dt_last = 0.0;

    std::size_t cells() const { return grid.cells(); }
};

MesoState make_meso_state(StaggeredGrid grid, std::vector<double> rho, std::vector<double> c,
                          std::vector<double> u = {});

// Riemann density datum: 1/8 on [0,1/4) u [3/4,1), 2 on [1/4,3/4), by cell midpoint.
double riemann_density(double x);

// Uniform grid on [0,1), phases alternating every `stride` cells starting
// with "+", Riemann density, u = 0.
MesoState init_meso_riemann(std::size_t cells, std::size_t stride = 1);

MesoState step_meso(const MesoState& state, const MaterialPair& mat, const StepPolicy& policy, double dt_try);
MesoState step_meso(const MesoState& state, const MaterialPair& mat, const StepPolicy& policy);

struct MesoRun {
    MesoState state;
    std::vector<DiagnosticsRecord> history;
    std::vector<double> dt_sequence;
    std::size_t steps = 0;
    bool failed = false;
    std::string failure;
};

// Advances to cfg.t_end, landing exactly on it. A step failure stops the run
// and is reported through MesoRun::failed.
// Called with every accepted state, in order.
using MesoObserver = std::function<void(const MesoState&)>;

MesoRun run_meso(MesoState initial, const RunConfig& cfg, const MesoObserver& on_step = {});
MesoRun run_meso(const RunConfig& cfg);

}  // namespace biphase
