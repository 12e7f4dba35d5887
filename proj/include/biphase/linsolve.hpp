#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace biphase {

// Periodic tridiagonal system. Row j reads
//   sub[j] * x[j-1] + diag[j] * x[j] + sup[j] * x[j+1] = rhs[j]
// with indices taken modulo n.
struct CyclicTridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;
    std::vector<double> rhs;

    std::size_t size() const { return diag.size(); }
    bool strictly_diagonally_dominant() const;
    // A * x with the cyclic wrap.
    std::vector<double> apply(const std::vector<double>& x) const;
};

class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(std::size_t index, const std::string& what)
        : std::runtime_error(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

// Pivots smaller than this in magnitude are treated as singular.
inline constexpr double kZeroPivot = 1e-300;

// O(n) solve through a rank-one corner correction (Sherman-Morrison) on top
// of two Thomas sweeps. Throws std::invalid_argument for n < 3 or mismatched
// lengths and SingularSystemError on a vanishing pivot.
std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& sys);

}  // namespace biphase
