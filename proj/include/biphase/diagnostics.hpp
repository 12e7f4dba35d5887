#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "biphase/core.hpp"
#include "biphase/macro.hpp"
#include "biphase/meso.hpp"
#include "biphase/record.hpp"

namespace biphase {

double total_mass(const MesoState& s);
double total_mass(const MacroState& s);

struct EnergySplit {
    double kinetic = 0.0;
    double internal = 0.0;
    double dissipated = 0.0;
    double total() const { return kinetic + internal + dissipated; }
};

// kinetic = 1/2 sum node_mass u^2, internal = sum G dx.
// Meso cells use the mixture potential G(rho, c); macro cells use the
// phase-wise alpha G_+(rho_+) + (1 - alpha) G_-(rho_-).
EnergySplit total_energy(const MesoState& s, const MaterialPair& mat);
EnergySplit total_energy(const MacroState& s, const MaterialPair& mat);

DiagnosticsRecord diagnose(const MesoState& s, const MaterialPair& mat, double dt_used);
DiagnosticsRecord diagnose(const MacroState& s, const MaterialPair& mat, double dt_used);

// Volume-fraction estimate of phase + around cell j from the colors of
// cells j-1, j, j+1 (neighbors counted with half weight).
double estimate_alpha_meso(const MesoState& s, std::size_t j);
std::vector<double> estimate_alpha_meso(const MesoState& s);
// Variant whose denominator is the full three-cell width x_{j+3/2} - x_{j-3/2};
// it reads 2/3 on a pure "+" region.
double estimate_alpha_meso_printed(const MesoState& s, std::size_t j);

// Averages over K uniform windows of the periodic domain. Phase-conditional
// densities are volume (length) weighted and are 0 where a phase is absent.
struct CoarseFields {
    std::size_t K = 0;
    double length = 1.0;
    std::vector<double> centers;
    std::vector<double> alpha_hat;
    std::vector<double> rho_hat;
    std::vector<double> rho_plus_hat;
    std::vector<double> rho_minus_hat;
    std::vector<double> u_hat;

    double window_length() const { return length / static_cast<double>(K); }
};

class ResolutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

CoarseFields coarse_grain(const MesoState& s, std::size_t K);
// Same windows, macro fields: alpha, mixture rho, phase densities weighted by
// phase volume, u piecewise linear between nodes.
CoarseFields coarse_grain(const MacroState& s, std::size_t K);

struct NormSet {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double rel_l1 = 0.0;
    double rel_l2 = 0.0;
    double rel_linf = 0.0;
};

struct ComparisonReport {
    NormSet rho;
    NormSet u;
    NormSet alpha;
    NormSet rho_plus;
    NormSet rho_minus;
};

class ComparisonError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Window-length-weighted norms of a - b; relative norms divide by the norm of b.
NormSet compare_series(const std::vector<double>& a, const std::vector<double>& b, double window_length);
ComparisonReport compare_fields(const CoarseFields& a, const CoarseFields& b);

using MomentFunction = std::function<double(double x, double rho, double c)>;

// sum_j b(midpoint_j, rho_j, c_j) dx_j
double young_moment(const MesoState& s, const MomentFunction& b);

struct WindowStructure {
    double center = 0.0;
    bool has_plus = false;
    bool has_minus = false;
    double mean_plus = 0.0;
    double var_plus = 0.0;
    double mean_minus = 0.0;
    double var_minus = 0.0;
    double gap = 0.0;
    // max(var_plus, var_minus) / gap^2; infinity when the gap is degenerate
    // with nonzero spread, 0 when both spreads vanish.
    double concentration = 0.0;
    bool gap_degenerate = false;
};

std::vector<WindowStructure> two_point_structure(const MesoState& s, std::size_t K);

// Meso phase-conditional means against macro phase densities on the same
// windows, restricted to windows holding both phases with gap > min_gap.
struct EnvelopeReport {
    std::size_t windows = 0;
    double max_concentration = 0.0;
    double rel_l1_plus = 0.0;
    double rel_l1_minus = 0.0;
};

EnvelopeReport compare_envelopes(const std::vector<WindowStructure>& structure, const CoarseFields& macro,
                                 double min_gap = 0.1);

}  // namespace biphase
