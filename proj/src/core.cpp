#include "biphase/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biphase {

namespace {

void check_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
}

}  // namespace

PressureLaw PressureLaw::power(double coefficient, double exponent) {
    if (!(coefficient > 0.0)) throw std::invalid_argument("pressure coefficient must be > 0");
    if (!(exponent >= 1.0)) throw std::invalid_argument("pressure exponent must be >= 1");
    PressureLaw law;
    law.coefficient_ = coefficient;
    law.exponent_ = exponent;
    return law;
}

PressureLaw PressureLaw::tabulated(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("pressure table needs at least two nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].first < 0.0 || nodes[i].second < 0.0) {
            throw std::invalid_argument("pressure table entries must be nonnegative");
        }
        if (i > 0 && (nodes[i].first <= nodes[i - 1].first || nodes[i].second < nodes[i - 1].second)) {
            throw std::invalid_argument("pressure table must be strictly increasing in density and monotone");
        }
    }
    PressureLaw law;
    law.table_ = std::move(nodes);
    return law;
}

double PressureLaw::pressure(double rho) const {
    if (!(rho >= 0.0)) throw std::domain_error("density must be >= 0");
    if (!is_power()) return table_pressure(rho);
    if (rho == 0.0) return 0.0;
    if (exponent_ == 1.0) return coefficient_ * rho;
    if (exponent_ == 2.0) return coefficient_ * rho * rho;
    return coefficient_ * std::pow(rho, exponent_);
}

double PressureLaw::potential(double rho) const {
    if (rho == 0.0) return 0.0;
    if (!(rho > 0.0)) throw std::domain_error("density must be > 0 for the potential");
    if (!is_power()) return table_potential(rho);
    if (exponent_ == 1.0) return coefficient_ * rho * std::log(rho);
    return coefficient_ * rho * (std::pow(rho, exponent_ - 1.0) - 1.0) / (exponent_ - 1.0);
}

// Linear interpolation inside the table, end-slope extrapolation outside,
// clamped at zero below the first node.
double PressureLaw::table_pressure(double rho) const {
    auto it = std::upper_bound(table_.begin(), table_.end(), rho,
                               [](double r, const auto& node) { return r < node.first; });
    std::size_t hi = static_cast<std::size_t>(it - table_.begin());
    hi = std::clamp<std::size_t>(hi, 1, table_.size() - 1);
    const auto& [r0, p0] = table_[hi - 1];
    const auto& [r1, p1] = table_[hi];
    double p = p0 + (p1 - p0) * (rho - r0) / (r1 - r0);
    return std::max(p, 0.0);
}

// Exact integral of p(s)/s^2 over the piecewise-linear segments:
// on a segment p = a + b s, the primitive is -a/s + b ln s.
double PressureLaw::table_potential(double rho) const {
    double lo = std::min(rho, 1.0);
    double hi = std::max(rho, 1.0);

    std::vector<double> cuts{lo};
    for (const auto& node : table_) {
        if (node.first > lo && node.first < hi) cuts.push_back(node.first);
    }
    // kink where the left extrapolation is clamped to zero
    const auto& [r0, p0] = table_[0];
    const auto& [r1, p1] = table_[1];
    if (p1 > p0) {
        double zero = r0 - p0 * (r1 - r0) / (p1 - p0);
        if (zero > lo && zero < hi) cuts.push_back(zero);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(hi);

    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double s0 = cuts[k];
        double s1 = cuts[k + 1];
        if (s1 <= s0) continue;
        double q0 = table_pressure(s0);
        double q1 = table_pressure(s1);
        double slope = (q1 - q0) / (s1 - s0);
        double intercept = q0 - slope * s0;
        integral += -intercept * (1.0 / s1 - 1.0 / s0) + slope * std::log(s1 / s0);
    }
    return rho >= 1.0 ? rho * integral : -rho * integral;
}

void MaterialPair::validate() const {
    if (!(mu_plus > 0.0) || !(mu_minus > 0.0)) {
        throw std::invalid_argument("viscosities must be > 0");
    }
}

MaterialPair reference_materials(double mu_plus, double mu_minus) {
    MaterialPair mat{PressureLaw::power(1.0, 1.0), PressureLaw::power(1.0, 2.0), mu_plus, mu_minus};
    mat.validate();
    return mat;
}

std::string_view to_string(PressureWeighting w) {
    return w == PressureWeighting::cross ? "cross" : "paper";
}

PressureWeighting parse_weighting(std::string_view text) {
    if (text == "cross") return PressureWeighting::cross;
    if (text == "paper" || text == "paper-written" || text == "paper_written") {
        return PressureWeighting::paper_written;
    }
    throw std::invalid_argument("unknown weighting '" + std::string(text) + "' (expected cross|paper)");
}

double pressure(const PressureLaw& law, double rho) { return law.pressure(rho); }

double potential_G(const PressureLaw& law, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("density must be > 0 for the potential");
    return law.potential(rho);
}

double mixture_pressure(double c, double rho, const MaterialPair& mat) {
    check_fraction(c, "color");
    if (c == 1.0) return mat.law_plus.pressure(rho);
    if (c == 0.0) return mat.law_minus.pressure(rho);
    return c * mat.law_plus.pressure(rho) + (1.0 - c) * mat.law_minus.pressure(rho);
}

double mixture_viscosity(double c, const MaterialPair& mat) {
    check_fraction(c, "color");
    if (c == 1.0) return mat.mu_plus;
    if (c == 0.0) return mat.mu_minus;
    return c * mat.mu_plus + (1.0 - c) * mat.mu_minus;
}

double mixture_potential(double c, double rho, const MaterialPair& mat) {
    check_fraction(c, "color");
    if (c == 1.0) return mat.law_plus.potential(rho);
    if (c == 0.0) return mat.law_minus.potential(rho);
    return c * mat.law_plus.potential(rho) + (1.0 - c) * mat.law_minus.potential(rho);
}

double mu_eff(double alpha, const MaterialPair& mat) {
    check_fraction(alpha, "volume fraction");
    if (alpha == 1.0) return mat.mu_plus;
    if (alpha == 0.0) return mat.mu_minus;
    return mat.mu_plus * mat.mu_minus / (alpha * mat.mu_minus + (1.0 - alpha) * mat.mu_plus);
}

double p_eff(double alpha, double rho_plus, double rho_minus, const MaterialPair& mat,
             PressureWeighting weighting) {
    check_fraction(alpha, "volume fraction");
    if (!(rho_plus >= 0.0) || !(rho_minus >= 0.0)) throw std::domain_error("phase densities must be >= 0");
    // Pure-phase limits: the absent phase's density is irrelevant.
    if (weighting == PressureWeighting::cross) {
        if (alpha == 1.0) return mat.law_plus.pressure(rho_plus);
        if (alpha == 0.0) return mat.law_minus.pressure(rho_minus);
    }
    double pp = alpha > 0.0 ? mat.law_plus.pressure(rho_plus) : 0.0;
    double pm = alpha < 1.0 ? mat.law_minus.pressure(rho_minus) : 0.0;
    double den = alpha * mat.mu_minus + (1.0 - alpha) * mat.mu_plus;
    if (weighting == PressureWeighting::cross) {
        return (alpha * pp * mat.mu_minus + (1.0 - alpha) * pm * mat.mu_plus) / den;
    }
    return (alpha * pp * mat.mu_plus + (1.0 - alpha) * pm * mat.mu_minus) / den;
}

RelaxationWeights relaxation_weights(double alpha, const MaterialPair& mat) {
    check_fraction(alpha, "volume fraction");
    double den = (1.0 - alpha) * mat.mu_plus + alpha * mat.mu_minus;
    return {1.0 / den, (mat.mu_minus - mat.mu_plus) / den};
}

double relaxation_rhs(double alpha, double rho_plus, double rho_minus, double du_dx,
                      const MaterialPair& mat) {
    check_fraction(alpha, "volume fraction");
    if (alpha == 0.0 || alpha == 1.0) return 0.0;
    double den = alpha * mat.mu_minus + (1.0 - alpha) * mat.mu_plus;
    double drive = mat.law_plus.pressure(rho_plus) - mat.law_minus.pressure(rho_minus) -
                   (mat.mu_plus - mat.mu_minus) * du_dx;
    return alpha * (1.0 - alpha) / den * drive;
}

}  // namespace biphase
