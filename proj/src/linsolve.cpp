#include "biphase/linsolve.hpp"

#include <cmath>
#include <string>

namespace biphase {

namespace {

// Thomas algorithm for a plain tridiagonal matrix; sub[0] and sup[n-1] unused.
void thomas(const std::vector<double>& sub, const std::vector<double>& diag,
            const std::vector<double>& sup, std::vector<double>& rhs_io,
            std::vector<double>& scratch) {
    const std::size_t n = diag.size();
    scratch.assign(n, 0.0);
    double pivot = diag[0];
    if (std::abs(pivot) < kZeroPivot) throw SingularSystemError(0, "zero pivot at row 0");
    scratch[0] = sup[0] / pivot;
    rhs_io[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - sub[i] * scratch[i - 1];
        if (std::abs(pivot) < kZeroPivot) {
            throw SingularSystemError(i, "zero pivot at row " + std::to_string(i));
        }
        scratch[i] = sup[i] / pivot;
        rhs_io[i] = (rhs_io[i] - sub[i] * rhs_io[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs_io[i] -= scratch[i] * rhs_io[i + 1];
    }
}

}  // namespace

bool CyclicTridiagonalSystem::strictly_diagonally_dominant() const {
    for (std::size_t j = 0; j < size(); ++j) {
        if (!(std::abs(diag[j]) > std::abs(sub[j]) + std::abs(sup[j]))) return false;
    }
    return true;
}

std::vector<double> CyclicTridiagonalSystem::apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        y[j] = sub[j] * x[(j + n - 1) % n] + diag[j] * x[j] + sup[j] * x[(j + 1) % n];
    }
    return y;
}

std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    if (n < 3) throw std::invalid_argument("cyclic tridiagonal system needs n >= 3");
    if (sys.sub.size() != n || sys.sup.size() != n || sys.rhs.size() != n) {
        throw std::invalid_argument("cyclic tridiagonal system: array lengths differ");
    }

    // A = B + w v^T with w = (gamma, 0, ..., 0, sub[0])^T and
    // v = (1, 0, ..., 0, sup[n-1] / gamma)^T.
    const double alpha = sys.sup[n - 1];  // row n-1, column 0
    const double beta = sys.sub[0];       // row 0, column n-1
    double gamma = -sys.diag[0];
    if (gamma == 0.0) gamma = -1.0;

    std::vector<double> diag = sys.diag;
    diag[0] -= gamma;
    diag[n - 1] -= alpha * beta / gamma;

    std::vector<double> scratch;
    std::vector<double> x = sys.rhs;
    thomas(sys.sub, diag, sys.sup, x, scratch);

    std::vector<double> z(n, 0.0);
    z[0] = gamma;
    z[n - 1] = alpha;
    thomas(sys.sub, diag, sys.sup, z, scratch);

    // Cancellation in the correction denominator means A itself is (numerically) singular.
    const double corr = beta * z[n - 1] / gamma;
    const double denom = 1.0 + z[0] + corr;
    if (std::abs(denom) <= 1e-12 * (1.0 + std::abs(z[0]) + std::abs(corr))) throw SingularSystemError(0, "singular rank-one correction");
    const double factor = (x[0] + beta * x[n - 1] / gamma) / denom;
    for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
    return x;
}

}  // namespace biphase
