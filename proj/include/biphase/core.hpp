#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace biphase {

// Barotropic pressure law p(rho). Either K * rho^gamma or a monotone
// piecewise-linear table.
class PressureLaw {
public:
    static PressureLaw power(double coefficient, double exponent);
    // Nodes must be sorted by density with nondecreasing, nonnegative pressures.
    static PressureLaw tabulated(std::vector<std::pair<double, double>> nodes);

    bool is_power() const { return table_.empty(); }
    double coefficient() const { return coefficient_; }
    double exponent() const { return exponent_; }

    double pressure(double rho) const;
    // G(rho) = rho * int_1^rho p(s)/s^2 ds
    double potential(double rho) const;

private:
    PressureLaw() = default;

    double table_pressure(double rho) const;
    double table_potential(double rho) const;

    double coefficient_ = 1.0;
    double exponent_ = 1.0;
    std::vector<std::pair<double, double>> table_;
};

struct MaterialPair {
    PressureLaw law_plus;
    PressureLaw law_minus;
    double mu_plus;
    double mu_minus;

    // Throws std::invalid_argument unless both viscosities are positive.
    void validate() const;
};

// The two test laws p_+(x) = x, p_-(x) = x^2 with the given viscosities.
MaterialPair reference_materials(double mu_plus, double mu_minus);

// How p_+ and p_- are weighted by the viscosities in the effective pressure.
//   cross:         (a p_+ mu_- + (1-a) p_- mu_+) / (a mu_- + (1-a) mu_+)
//   paper_written: (a p_+ mu_+ + (1-a) p_- mu_-) / (a mu_- + (1-a) mu_+)
enum class PressureWeighting { cross, paper_written };

std::string_view to_string(PressureWeighting w);
PressureWeighting parse_weighting(std::string_view text);

double pressure(const PressureLaw& law, double rho);
double potential_G(const PressureLaw& law, double rho);

double mixture_pressure(double c, double rho, const MaterialPair& mat);
double mixture_viscosity(double c, const MaterialPair& mat);
// c * G_+(rho) + (1 - c) * G_-(rho)
double mixture_potential(double c, double rho, const MaterialPair& mat);

double mu_eff(double alpha, const MaterialPair& mat);
double p_eff(double alpha, double rho_plus, double rho_minus, const MaterialPair& mat,
             PressureWeighting weighting = PressureWeighting::cross);

struct RelaxationWeights {
    double a;  // 1 / viscosity
    double b;  // dimensionless
};

// Unique solution of 1 - a mu_+ = b alpha and 1 - a mu_- = -b (1 - alpha).
RelaxationWeights relaxation_weights(double alpha, const MaterialPair& mat);

// D_t alpha = alpha (1 - alpha) / (alpha mu_- + (1 - alpha) mu_+)
//             * (p_+(rho_+) - p_-(rho_-) - (mu_+ - mu_-) du_dx)
double relaxation_rhs(double alpha, double rho_plus, double rho_minus, double du_dx,
                      const MaterialPair& mat);

}  // namespace biphase
