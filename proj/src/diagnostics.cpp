#include "biphase/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "biphase/kernel.hpp"

namespace biphase {

namespace {

// Calls visit(j, k, x0, x1) for every nonempty intersection of cell j with
// window k, where [x0, x1] is in the cell's own unwrapped coordinates.
template <class Visit>
void for_each_overlap(const StaggeredGrid& grid, std::size_t K, Visit&& visit) {
    const double L = grid.length();
    const double h = L / static_cast<double>(K);
    for (std::size_t j = 0; j < grid.cells(); ++j) {
        const double a = grid.left(j);
        const double b = grid.right(j);
        const double shift = std::floor(a / L) * L;
        // at most two pieces since every cell is shorter than the domain
        const double pieces[2][2] = {{a - shift, std::min(b - shift, L)}, {0.0, b - shift - L}};
        for (int piece = 0; piece < 2; ++piece) {
            const double s = pieces[piece][0];
            const double e = pieces[piece][1];
            if (!(e > s)) continue;
            const double offset = shift + (piece == 1 ? L : 0.0);
            std::size_t k0 = static_cast<std::size_t>(std::max(0.0, std::floor(s / h)));
            k0 = std::min(k0, K - 1);
            for (std::size_t k = k0; k < K; ++k) {
                const double w0 = static_cast<double>(k) * h;
                const double w1 = k + 1 == K ? L : static_cast<double>(k + 1) * h;
                if (w0 >= e) break;
                const double x0 = std::max(s, w0);
                const double x1 = std::min(e, w1);
                if (x1 > x0) visit(j, k, x0 + offset, x1 + offset);
            }
        }
    }
}

// Mean of the linear velocity profile of cell j over [x0, x1].
double cell_velocity_mean(const StaggeredGrid& grid, std::span<const double> u, std::size_t j, double x0,
                          double x1) {
    const std::size_t n = grid.cells();
    const double a = grid.left(j);
    const double dx = grid.cell_dx(j);
    const double ul = u[(j + n - 1) % n];
    const double ur = u[j];
    const double u0 = ul + (ur - ul) * (x0 - a) / dx;
    const double u1 = ul + (ur - ul) * (x1 - a) / dx;
    return 0.5 * (u0 + u1);
}

// Shared by meso (fraction = c, rho_plus = rho_minus = rho) and macro.
CoarseFields coarse_grain_impl(const StaggeredGrid& grid, std::span<const double> u,
                               std::span<const double> fraction, std::span<const double> rho_plus,
                               std::span<const double> rho_minus, std::size_t K) {
    if (K < 1) throw ResolutionError("coarse_grain: K must be >= 1");
    if (K >= grid.cells()) throw ResolutionError("coarse_grain: K must be smaller than the cell count");

    CoarseFields f;
    f.K = K;
    f.length = grid.length();
    const double h = f.window_length();
    f.centers.resize(K);
    for (std::size_t k = 0; k < K; ++k) f.centers[k] = (static_cast<double>(k) + 0.5) * h;

    std::vector<double> vol_plus(K, 0.0), vol_minus(K, 0.0), m_plus(K, 0.0), m_minus(K, 0.0), mom(K, 0.0),
        covered(K, 0.0);
    for_each_overlap(grid, K, [&](std::size_t j, std::size_t k, double x0, double x1) {
        const double len = x1 - x0;
        const double a = fraction[j];
        covered[k] += len;
        vol_plus[k] += a * len;
        vol_minus[k] += (1.0 - a) * len;
        m_plus[k] += a * rho_plus[j] * len;
        m_minus[k] += (1.0 - a) * rho_minus[j] * len;
        mom[k] += cell_velocity_mean(grid, u, j, x0, x1) * len;
    });

    f.alpha_hat.resize(K);
    f.rho_hat.resize(K);
    f.rho_plus_hat.resize(K);
    f.rho_minus_hat.resize(K);
    f.u_hat.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        f.alpha_hat[k] = std::clamp(vol_plus[k] / covered[k], 0.0, 1.0);
        f.rho_hat[k] = (m_plus[k] + m_minus[k]) / covered[k];
        f.rho_plus_hat[k] = vol_plus[k] > 0.0 ? m_plus[k] / vol_plus[k] : 0.0;
        f.rho_minus_hat[k] = vol_minus[k] > 0.0 ? m_minus[k] / vol_minus[k] : 0.0;
        f.u_hat[k] = mom[k] / covered[k];
    }
    return f;
}

}  // namespace

double total_mass(const MesoState& s) {
    double m = 0.0;
    for (std::size_t j = 0; j < s.cells(); ++j) m += s.rho[j] * s.grid.cell_dx(j);
    return m;
}

double total_mass(const MacroState& s) {
    double m = 0.0;
    for (std::size_t j = 0; j < s.cells(); ++j) m += s.mass_plus[j] + s.mass_minus[j];
    return m;
}

EnergySplit total_energy(const MesoState& s, const MaterialPair& mat) {
    EnergySplit e;
    const std::vector<double> mass = node_masses(s.rho, s.grid);
    for (std::size_t j = 0; j < s.cells(); ++j) {
        e.kinetic += 0.5 * mass[j] * s.u[j] * s.u[j];
        e.internal += mixture_potential(s.c[j], s.rho[j], mat) * s.grid.cell_dx(j);
    }
    e.dissipated = s.dissipated;
    return e;
}

EnergySplit total_energy(const MacroState& s, const MaterialPair& mat) {
    EnergySplit e;
    const std::vector<double> mass = node_masses(s.mixture_density(), s.grid);
    for (std::size_t j = 0; j < s.cells(); ++j) {
        e.kinetic += 0.5 * mass[j] * s.u[j] * s.u[j];
        const double a = s.alpha[j];
        double g = 0.0;
        if (s.rho_plus[j] > 0.0) g += a * mat.law_plus.potential(s.rho_plus[j]);
        if (s.rho_minus[j] > 0.0) g += (1.0 - a) * mat.law_minus.potential(s.rho_minus[j]);
        e.internal += g * s.grid.cell_dx(j);
    }
    e.dissipated = s.dissipated;
    return e;
}

namespace {

template <class State>
DiagnosticsRecord fill_record(const State& s, const std::vector<double>& rho, const EnergySplit& e, double dt_used) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.total_mass = total_mass(s);
    r.kinetic_energy = e.kinetic;
    r.internal_energy = e.internal;
    r.dissipated = e.dissipated;
    r.energy_total = e.total();
    const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
    r.rho_min = *lo;
    r.rho_max = *hi;
    r.dx_min = s.grid.min_dx();
    r.dt_used = dt_used;
    return r;
}

}  // namespace

DiagnosticsRecord diagnose(const MesoState& s, const MaterialPair& mat, double dt_used) {
    return fill_record(s, s.rho, total_energy(s, mat), dt_used);
}

DiagnosticsRecord diagnose(const MacroState& s, const MaterialPair& mat, double dt_used) {
    DiagnosticsRecord r = fill_record(s, s.mixture_density(), total_energy(s, mat), dt_used);
    r.clamp_events = s.clamp_events;
    return r;
}

double estimate_alpha_meso(const MesoState& s, std::size_t j) {
    const std::size_t n = s.cells();
    const std::size_t jm = (j + n - 1) % n;
    const std::size_t jp = (j + 1) % n;
    const double dm = s.grid.cell_dx(jm);
    const double d0 = s.grid.cell_dx(j);
    const double dp = s.grid.cell_dx(jp);
    const double covered = s.c[j] * d0 + 0.5 * (s.c[jm] * dm + s.c[jp] * dp);
    return covered / (d0 + 0.5 * (dm + dp));
}

double estimate_alpha_meso_printed(const MesoState& s, std::size_t j) {
    const std::size_t n = s.cells();
    const std::size_t jm = (j + n - 1) % n;
    const std::size_t jp = (j + 1) % n;
    const double dm = s.grid.cell_dx(jm);
    const double d0 = s.grid.cell_dx(j);
    const double dp = s.grid.cell_dx(jp);
    const double covered = s.c[j] * d0 + 0.5 * (s.c[jm] * dm + s.c[jp] * dp);
    return covered / (dm + d0 + dp);
}

std::vector<double> estimate_alpha_meso(const MesoState& s) {
    std::vector<double> out(s.cells());
    for (std::size_t j = 0; j < s.cells(); ++j) out[j] = estimate_alpha_meso(s, j);
    return out;
}

CoarseFields coarse_grain(const MesoState& s, std::size_t K) {
    return coarse_grain_impl(s.grid, s.u, s.c, s.rho, s.rho, K);
}

CoarseFields coarse_grain(const MacroState& s, std::size_t K) {
    return coarse_grain_impl(s.grid, s.u, s.alpha, s.rho_plus, s.rho_minus, K);
}

NormSet compare_series(const std::vector<double>& a, const std::vector<double>& b, double window_length) {
    if (a.size() != b.size()) throw ComparisonError("compare: series lengths differ");
    NormSet n;
    double b1 = 0.0, b2 = 0.0, binf = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = std::abs(a[k] - b[k]);
        n.l1 += d * window_length;
        n.l2 += d * d * window_length;
        n.linf = std::max(n.linf, d);
        b1 += std::abs(b[k]) * window_length;
        b2 += b[k] * b[k] * window_length;
        binf = std::max(binf, std::abs(b[k]));
    }
    n.l2 = std::sqrt(n.l2);
    b2 = std::sqrt(b2);
    auto rel = [](double d, double ref) {
        if (ref > 0.0) return d / ref;
        return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    n.rel_l1 = rel(n.l1, b1);
    n.rel_l2 = rel(n.l2, b2);
    n.rel_linf = rel(n.linf, binf);
    return n;
}

ComparisonReport compare_fields(const CoarseFields& a, const CoarseFields& b) {
    if (a.K != b.K || a.length != b.length) throw ComparisonError("compare_fields: window layouts differ");
    const double h = a.window_length();
    ComparisonReport r;
    r.rho = compare_series(a.rho_hat, b.rho_hat, h);
    r.u = compare_series(a.u_hat, b.u_hat, h);
    r.alpha = compare_series(a.alpha_hat, b.alpha_hat, h);
    r.rho_plus = compare_series(a.rho_plus_hat, b.rho_plus_hat, h);
    r.rho_minus = compare_series(a.rho_minus_hat, b.rho_minus_hat, h);
    return r;
}

double young_moment(const MesoState& s, const MomentFunction& b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < s.cells(); ++j) {
        sum += b(s.grid.midpoint(j), s.rho[j], s.c[j]) * s.grid.cell_dx(j);
    }
    return sum;
}

std::vector<WindowStructure> two_point_structure(const MesoState& s, std::size_t K) {
    if (K < 1 || K >= s.cells()) throw ResolutionError("two_point_structure: need 1 <= K < cell count");

    struct Acc {
        double len = 0.0;
        double sum = 0.0;
    };
    std::vector<Acc> plus(K), minus(K);
    for_each_overlap(s.grid, K, [&](std::size_t j, std::size_t k, double x0, double x1) {
        Acc& acc = s.c[j] == 1.0 ? plus[k] : minus[k];
        acc.len += x1 - x0;
        acc.sum += s.rho[j] * (x1 - x0);
    });
    std::vector<double> var_plus(K, 0.0), var_minus(K, 0.0);
    for_each_overlap(s.grid, K, [&](std::size_t j, std::size_t k, double x0, double x1) {
        const bool is_plus = s.c[j] == 1.0;
        const Acc& acc = is_plus ? plus[k] : minus[k];
        const double d = s.rho[j] - acc.sum / acc.len;
        (is_plus ? var_plus : var_minus)[k] += d * d * (x1 - x0);
    });

    const double h = s.grid.length() / static_cast<double>(K);
    std::vector<WindowStructure> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        WindowStructure& w = out[k];
        w.center = (static_cast<double>(k) + 0.5) * h;
        w.has_plus = plus[k].len > 0.0;
        w.has_minus = minus[k].len > 0.0;
        if (w.has_plus) {
            w.mean_plus = plus[k].sum / plus[k].len;
            w.var_plus = var_plus[k] / plus[k].len;
        }
        if (w.has_minus) {
            w.mean_minus = minus[k].sum / minus[k].len;
            w.var_minus = var_minus[k] / minus[k].len;
        }
        const double spread = std::max(w.var_plus, w.var_minus);
        if (w.has_plus && w.has_minus) {
            w.gap = std::abs(w.mean_plus - w.mean_minus);
            w.gap_degenerate = w.gap < 1e-12;
        } else {
            w.gap_degenerate = true;
        }
        if (w.gap_degenerate) {
            w.concentration = spread == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            w.concentration = spread / (w.gap * w.gap);
        }
    }
    return out;
}

EnvelopeReport compare_envelopes(const std::vector<WindowStructure>& structure, const CoarseFields& macro,
                                 double min_gap) {
    if (structure.size() != macro.K) throw ComparisonError("compare_envelopes: window counts differ");
    EnvelopeReport r;
    double d_plus = 0.0, n_plus = 0.0, d_minus = 0.0, n_minus = 0.0;
    for (std::size_t k = 0; k < structure.size(); ++k) {
        const WindowStructure& w = structure[k];
        if (!w.has_plus || !w.has_minus || w.gap <= min_gap) continue;
        ++r.windows;
        r.max_concentration = std::max(r.max_concentration, w.concentration);
        d_plus += std::abs(w.mean_plus - macro.rho_plus_hat[k]);
        n_plus += std::abs(macro.rho_plus_hat[k]);
        d_minus += std::abs(w.mean_minus - macro.rho_minus_hat[k]);
        n_minus += std::abs(macro.rho_minus_hat[k]);
    }
    r.rel_l1_plus = n_plus > 0.0 ? d_plus / n_plus : 0.0;
    r.rel_l1_minus = n_minus > 0.0 ? d_minus / n_minus : 0.0;
    return r;
}

}  // namespace biphase
