#pragma once

#include <cstdint>

namespace biphase {

// One row of the run history.
struct DiagnosticsRecord {
    double t = 0.0;
    double total_mass = 0.0;
    double kinetic_energy = 0.0;
    double internal_energy = 0.0;
    double dissipated = 0.0;
    double energy_total = 0.0;  // kinetic + internal + dissipated
    double rho_min = 0.0;
    double rho_max = 0.0;
    double dx_min = 0.0;
    double dt_used = 0.0;
    std::int64_t clamp_events = 0;
};

}  // namespace biphase
