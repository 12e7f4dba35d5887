#include "biphase/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace biphase {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns) {
    if (names.size() != columns.size() || columns.empty()) throw OutputError("column names and data disagree");
    const std::size_t rows = columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != rows) throw OutputError("columns have different lengths");
    }
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return columns[0][a] < columns[0][b]; });

    std::string out = "#";
    for (const auto& n : names) out += " " + n;
    out += "\n";
    for (std::size_t r : order) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c > 0) out += ' ';
            out += format_number(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

void write_columns(const std::filesystem::path& path, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& columns) {
    write_text(path, format_columns(names, columns));
}

namespace {

double wrap(double x, double length) {
    double w = x - std::floor(x / length) * length;
    return w >= length ? w - length : w;
}

}  // namespace

std::vector<double> wrapped_midpoints(const StaggeredGrid& grid) {
    std::vector<double> x(grid.cells());
    for (std::size_t j = 0; j < grid.cells(); ++j) x[j] = wrap(grid.midpoint(j), grid.length());
    return x;
}

std::vector<double> wrapped_nodes(const StaggeredGrid& grid) {
    std::vector<double> x(grid.cells());
    for (std::size_t j = 0; j < grid.cells(); ++j) x[j] = wrap(grid.right(j), grid.length());
    return x;
}

void write_meso_fields(const MesoState& s, const MaterialPair& mat, const std::filesystem::path& dir) {
    const std::vector<double> xc = wrapped_midpoints(s.grid);
    std::vector<double> p(s.cells());
    for (std::size_t j = 0; j < s.cells(); ++j) p[j] = mixture_pressure(s.c[j], s.rho[j], mat);
    write_columns(dir / "meso_density.dat", {"x", "rho", "c"}, {xc, s.rho, s.c});
    write_columns(dir / "meso_pressure.dat", {"x", "p"}, {xc, p});
    write_columns(dir / "meso_velocity.dat", {"x", "u"}, {wrapped_nodes(s.grid), s.u});
    write_columns(dir / "meso_volume_fraction.dat", {"x", "alpha_estimate", "c"}, {xc, estimate_alpha_meso(s), s.c});
}

void write_macro_fields(const MacroState& s, const MaterialPair& mat, PressureWeighting weighting,
                        const std::filesystem::path& dir) {
    const std::vector<double> xc = wrapped_midpoints(s.grid);
    std::vector<double> p(s.cells()), pp(s.cells()), pm(s.cells());
    for (std::size_t j = 0; j < s.cells(); ++j) {
        p[j] = p_eff(s.alpha[j], s.rho_plus[j], s.rho_minus[j], mat, weighting);
        pp[j] = mat.law_plus.pressure(s.rho_plus[j]);
        pm[j] = mat.law_minus.pressure(s.rho_minus[j]);
    }
    write_columns(dir / "macro_density.dat", {"x", "rho", "rho_plus", "rho_minus"},
                  {xc, s.mixture_density(), s.rho_plus, s.rho_minus});
    write_columns(dir / "macro_pressure.dat", {"x", "p_eff", "p_plus", "p_minus"}, {xc, p, pp, pm});
    write_columns(dir / "macro_velocity.dat", {"x", "u"}, {wrapped_nodes(s.grid), s.u});
    write_columns(dir / "macro_volume_fraction.dat", {"x", "alpha"}, {xc, s.alpha});
}

void write_coarse_fields(const CoarseFields& f, const std::filesystem::path& path) {
    write_columns(path, {"x", "alpha", "rho", "rho_plus", "rho_minus", "u"},
                  {f.centers, f.alpha_hat, f.rho_hat, f.rho_plus_hat, f.rho_minus_hat, f.u_hat});
}

void write_history(const std::vector<DiagnosticsRecord>& history, const std::filesystem::path& path) {
    std::vector<std::vector<double>> cols(10);
    for (const auto& r : history) {
        const double row[10] = {r.t,           r.total_mass, r.kinetic_energy, r.internal_energy, r.dissipated,
                                r.energy_total, r.rho_min,    r.rho_max,        r.dx_min,          r.dt_used};
        for (int i = 0; i < 10; ++i) cols[i].push_back(row[i]);
    }
    write_columns(path, {"t", "mass", "E_kin", "E_int", "E_diss", "E_tot", "rho_min", "rho_max", "dx_min", "dt"},
                  cols);
}

}  // namespace biphase
