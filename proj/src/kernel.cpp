#include "biphase/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace biphase {

StaggeredGrid::StaggeredGrid(std::vector<double> node_x, double length)
    : node_x_(std::move(node_x)), length_(length) {
    if (node_x_.size() < 3) throw GridError("grid needs at least 3 cells");
    if (!(length_ > 0.0)) throw GridError("grid length must be > 0");
    for (std::size_t j = 0; j < cells(); ++j) {
        if (!(cell_dx(j) > 0.0)) throw GridError("nonpositive cell width at cell " + std::to_string(j));
    }
}

StaggeredGrid StaggeredGrid::uniform(std::size_t cells, double length) {
    std::vector<double> x(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        x[j] = length * static_cast<double>(j + 1) / static_cast<double>(cells);
    }
    return StaggeredGrid(std::move(x), length);
}

double StaggeredGrid::node_dx(std::size_t j) const {
    return 0.5 * (cell_dx(j) + cell_dx((j + 1) % cells()));
}

std::vector<double> StaggeredGrid::cell_widths() const {
    std::vector<double> dx(cells());
    for (std::size_t j = 0; j < cells(); ++j) dx[j] = cell_dx(j);
    return dx;
}

double StaggeredGrid::min_dx() const {
    double m = cell_dx(0);
    for (std::size_t j = 1; j < cells(); ++j) m = std::min(m, cell_dx(j));
    return m;
}

void StepPolicy::validate() const {
    if (!(cfl_theta > 0.0 && cfl_theta < 1.0)) throw std::invalid_argument("cfl_theta must lie in (0,1)");
    if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be > 0");
    if (max_halvings < 1) throw std::invalid_argument("max_halvings must be >= 1");
    if (!(relax_eta > 0.0)) throw std::invalid_argument("relax_eta must be > 0");
}

std::vector<double> node_density(std::span<const double> cell_rho, const StaggeredGrid& grid) {
    const std::size_t n = grid.cells();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        const double dl = grid.cell_dx(j);
        const double dr = grid.cell_dx(k);
        if (!(dl > 0.0) || !(dr > 0.0)) throw GridError("nonpositive cell width");
        out[j] = (dl * cell_rho[j] + dr * cell_rho[k]) / (dl + dr);
    }
    return out;
}

std::vector<double> node_masses(std::span<const double> cell_rho, const StaggeredGrid& grid) {
    const std::size_t n = grid.cells();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        out[j] = 0.5 * (cell_rho[j] * grid.cell_dx(j) + cell_rho[k] * grid.cell_dx(k));
    }
    return out;
}

CyclicTridiagonalSystem assemble_momentum(const StaggeredGrid& grid, std::span<const double> u_old,
                                          std::span<const double> mu_cells,
                                          std::span<const double> p_cells,
                                          std::span<const double> node_mass, double dt) {
    const std::size_t n = grid.cells();
    if (!(dt > 0.0)) throw std::invalid_argument("assemble_momentum: dt must be > 0");
    if (u_old.size() != n || mu_cells.size() != n || p_cells.size() != n || node_mass.size() != n) {
        throw std::invalid_argument("assemble_momentum: field sizes differ from the grid");
    }

    // conductance of cell j: dt * mu_j / dx_j
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double dx = grid.cell_dx(j);
        if (!(dx > 0.0)) throw GridError("assemble_momentum: nonpositive cell width");
        if (!(mu_cells[j] >= 0.0)) throw std::invalid_argument("assemble_momentum: negative viscosity");
        g[j] = dt * mu_cells[j] / dx;
    }

    CyclicTridiagonalSystem sys;
    sys.sub.resize(n);
    sys.diag.resize(n);
    sys.sup.resize(n);
    sys.rhs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        if (!(node_mass[j] > 0.0)) throw std::invalid_argument("assemble_momentum: nonpositive node mass");
        sys.sub[j] = -g[j];
        sys.sup[j] = -g[k];
        sys.diag[j] = node_mass[j] + g[j] + g[k];
        sys.rhs[j] = node_mass[j] * u_old[j] - dt * (p_cells[k] - p_cells[j]);
    }
    return sys;
}

std::optional<StaggeredGrid> advance_positions(const StaggeredGrid& grid, std::span<const double> u_new,
                                               double dt) {
    const std::size_t n = grid.cells();
    std::vector<double> x = grid.node_x();
    for (std::size_t j = 0; j < n; ++j) x[j] += dt * u_new[j];
    if (!(x[0] - (x[n - 1] - grid.length()) > 0.0)) return std::nullopt;
    for (std::size_t j = 1; j < n; ++j) {
        if (!(x[j] - x[j - 1] > 0.0)) return std::nullopt;
    }
    return StaggeredGrid(std::move(x), grid.length());
}

std::optional<std::vector<double>> update_cell_density(std::span<const double> rho_old,
                                                       std::span<const double> dx_old,
                                                       std::span<const double> dx_new) {
    std::vector<double> out(rho_old.size());
    for (std::size_t j = 0; j < rho_old.size(); ++j) {
        if (!(dx_new[j] > 0.0)) return std::nullopt;
        out[j] = rho_old[j] * dx_old[j] / dx_new[j];
    }
    return out;
}

double choose_dt(const StaggeredGrid& grid, std::span<const double> u_old, const StepPolicy& policy) {
    const std::size_t n = grid.cells();
    double jump = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        jump = std::max(jump, std::abs(u_old[j] - u_old[(j + n - 1) % n]));
    }
    constexpr double eps = 1e-12;
    return std::min(policy.dt_max, policy.cfl_theta * grid.min_dx() / (jump + eps));
}

StepOutcome lagrangian_step(const StaggeredGrid& grid, std::span<const double> u_old,
                            std::span<const double> rho_cells, std::span<const double> mu_cells,
                            std::span<const double> p_cells, const StepPolicy& policy, double dt_try) {
    const std::size_t n = grid.cells();
    if (rho_cells.size() != n) throw std::invalid_argument("lagrangian_step: density size differs from grid");

    const std::vector<double> mass = node_masses(rho_cells, grid);
    const std::vector<double> dx_old = grid.cell_widths();

    double dt = dt_try;
    for (int attempt = 0; attempt <= policy.max_halvings; ++attempt, dt *= 0.5) {
        const CyclicTridiagonalSystem sys = assemble_momentum(grid, u_old, mu_cells, p_cells, mass, dt);
        std::vector<double> u_new = solve_cyclic_tridiagonal(sys);

        std::optional<StaggeredGrid> moved = advance_positions(grid, u_new, dt);
        if (!moved) continue;
        const std::vector<double> dx_new = moved->cell_widths();
        std::optional<std::vector<double>> rho_new = update_cell_density(rho_cells, dx_old, dx_new);
        if (!rho_new) continue;

        StepOutcome out;
        out.accepted = true;
        out.dt_used = dt;
        out.halvings = attempt;
        for (std::size_t j = 0; j < n; ++j) {
            const double strain = (u_new[j] - u_new[(j + n - 1) % n]) / dx_old[j];
            out.dissipation_increment += dt * mu_cells[j] * strain * strain * dx_old[j];
        }
        out.grid = std::move(*moved);
        out.u = std::move(u_new);
        out.rho = std::move(*rho_new);
        return out;
    }
    throw StepFailure("cell inversion persists after " + std::to_string(policy.max_halvings) +
                          " dt halvings",
                      dt);
}

StepOutcome lagrangian_step(const StaggeredGrid& grid, std::span<const double> u_old,
                            std::span<const double> rho_cells, std::span<const double> mu_cells,
                            std::span<const double> p_cells, const StepPolicy& policy) {
    return lagrangian_step(grid, u_old, rho_cells, mu_cells, p_cells, policy, choose_dt(grid, u_old, policy));
}

}  // namespace biphase
