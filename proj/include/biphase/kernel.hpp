#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "biphase/linsolve.hpp"

namespace biphase {

// Staggered periodic grid. node_x[j] holds the interface x_{j+1/2}; cell j
// spans [x_{j-1/2}, x_{j+1/2}] with x_{-1/2} = node_x[J-1] - length.
// Coordinates are unwrapped and strictly increasing.
class StaggeredGrid {
public:
    StaggeredGrid() = default;
    StaggeredGrid(std::vector<double> node_x, double length);

    static StaggeredGrid uniform(std::size_t cells, double length = 1.0);

    std::size_t cells() const { return node_x_.size(); }
    double length() const { return length_; }
    const std::vector<double>& node_x() const { return node_x_; }

    double left(std::size_t j) const { return j == 0 ? node_x_.back() - length_ : node_x_[j - 1]; }
    double right(std::size_t j) const { return node_x_[j]; }
    double cell_dx(std::size_t j) const { return right(j) - left(j); }
    double midpoint(std::size_t j) const { return 0.5 * (left(j) + right(j)); }
    // (dx_j + dx_{j+1}) / 2
    double node_dx(std::size_t j) const;

    std::vector<double> cell_widths() const;
    double min_dx() const;

private:
    std::vector<double> node_x_;
    double length_ = 1.0;
};

class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StepPolicy {
    double cfl_theta = 0.4;
    double dt_max = 1e-4;
    int max_halvings = 40;
    double relax_eta = 0.5;

    void validate() const;
};

struct StepOutcome {
    bool accepted = false;
    double dt_used = 0.0;
    int halvings = 0;
    StaggeredGrid grid;
    std::vector<double> u;
    std::vector<double> rho;
    double dissipation_increment = 0.0;
};

class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, double last_dt)
        : std::runtime_error(what), last_dt_(last_dt) {}
    double last_dt() const { return last_dt_; }

private:
    double last_dt_;
};

// Width-weighted node densities rho_{j+1/2}.
std::vector<double> node_density(std::span<const double> cell_rho, const StaggeredGrid& grid);

// rho_{j+1/2} * dx_{j+1/2} = (rho_j dx_j + rho_{j+1} dx_{j+1}) / 2
std::vector<double> node_masses(std::span<const double> cell_rho, const StaggeredGrid& grid);

// Implicit-viscosity momentum system for u^{n+1}:
//   m_j u_j + dt mu_j/dx_j (u_j - u_{j-1}) - dt mu_{j+1}/dx_{j+1} (u_{j+1} - u_j)
//     = m_j u_old_j - dt (p_{j+1} - p_j)
CyclicTridiagonalSystem assemble_momentum(const StaggeredGrid& grid, std::span<const double> u_old,
                                          std::span<const double> mu_cells,
                                          std::span<const double> p_cells,
                                          std::span<const double> node_mass, double dt);

// Returns nullopt if any cell would invert.
std::optional<StaggeredGrid> advance_positions(const StaggeredGrid& grid, std::span<const double> u_new,
                                               double dt);

// nullopt if any new width is nonpositive.
std::optional<std::vector<double>> update_cell_density(std::span<const double> rho_old,
                                                       std::span<const double> dx_old,
                                                       std::span<const double> dx_new);

double choose_dt(const StaggeredGrid& grid, std::span<const double> u_old, const StepPolicy& policy);

// One implicit pseudo-Lagrangian step starting from dt_try. On cell inversion
// the step is retried with dt halved, up to policy.max_halvings times; after
// that StepFailure is thrown.
StepOutcome lagrangian_step(const StaggeredGrid& grid, std::span<const double> u_old,
                            std::span<const double> rho_cells, std::span<const double> mu_cells,
                            std::span<const double> p_cells, const StepPolicy& policy, double dt_try);

// Overload that takes dt_try from choose_dt.
StepOutcome lagrangian_step(const StaggeredGrid& grid, std::span<const double> u_old,
                            std::span<const double> rho_cells, std::span<const double> mu_cells,
                            std::span<const double> p_cells, const StepPolicy& policy);

}  // namespace biphase
