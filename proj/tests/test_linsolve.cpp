#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "biphase/linsolve.hpp"
#include "oracles.hpp"

using namespace biphase;

namespace {

CyclicTridiagonalSystem random_dominant(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::uniform_real_distribution<double> margin(0.05, 2.0);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    CyclicTridiagonalSystem sys;
    for (std::size_t j = 0; j < n; ++j) {
        const double s = off(rng), u = off(rng);
        const double d = std::abs(s) + std::abs(u) + margin(rng);
        sys.sub.push_back(s);
        sys.sup.push_back(u);
        sys.diag.push_back(rng() % 2 ? d : -d);
        sys.rhs.push_back(val(rng));
    }
    return sys;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("cyclic solve: trivial systems") {
    CyclicTridiagonalSystem id{{0, 0, 0}, {1, 1, 1}, {0, 0, 0}, {3, 5, 7}};
    CHECK(solve_cyclic_tridiagonal(id) == std::vector<double>{3, 5, 7});

    CyclicTridiagonalSystem ones{{-1, -1, -1}, {3, 3, 3}, {-1, -1, -1}, {1, 1, 1}};
    for (double x : solve_cyclic_tridiagonal(ones)) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cyclic solve: errors") {
    CyclicTridiagonalSystem tiny{{0, 0}, {1, 1}, {0, 0}, {1, 1}};
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(tiny), std::invalid_argument);
    CyclicTridiagonalSystem ragged{{0, 0, 0}, {1, 1, 1}, {0, 0}, {1, 1, 1}};
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(ragged), std::invalid_argument);
    // every row sums to zero: singular
    CyclicTridiagonalSystem singular{{-1, -1, -1, -1}, {2, 2, 2, 2}, {-1, -1, -1, -1}, {1, 0, 0, 0}};
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(singular), SingularSystemError);
}

TEST_CASE("cyclic solve matches dense elimination on random dominant systems") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 62;
        const auto sys = random_dominant(rng, n);
        REQUIRE(sys.strictly_diagonally_dominant());
        const auto x = solve_cyclic_tridiagonal(sys);
        const auto ref = oracle::dense_solve(oracle::dense_cyclic(sys.sub, sys.diag, sys.sup), sys.rhs);
        CAPTURE(n);
        CHECK(max_abs_diff(x, ref) <= 1e-10);

        // residual bound
        const auto ax = sys.apply(x);
        double anorm = 0.0, xnorm = 0.0, bnorm = 0.0, res = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            anorm = std::max(anorm, std::abs(sys.sub[j]) + std::abs(sys.diag[j]) + std::abs(sys.sup[j]));
            xnorm = std::max(xnorm, std::abs(x[j]));
            bnorm = std::max(bnorm, std::abs(sys.rhs[j]));
            res = std::max(res, std::abs(ax[j] - sys.rhs[j]));
        }
        CHECK(res <= 1e-12 * (anorm * xnorm + bnorm));
    }
}

TEST_CASE("cyclic solve: A*1 recovers ones, rotation invariance") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng() % 40;
        auto sys = random_dominant(rng, n);
        sys.rhs = sys.apply(std::vector<double>(n, 1.0));
        for (double x : solve_cyclic_tridiagonal(sys)) CHECK(std::abs(x - 1.0) <= 1e-12);

        sys = random_dominant(rng, n);
        const auto x = solve_cyclic_tridiagonal(sys);
        const std::size_t shift = 1 + rng() % (n - 1);
        auto rotated = sys;
        for (auto* v : {&rotated.sub, &rotated.diag, &rotated.sup, &rotated.rhs}) {
            std::rotate(v->begin(), v->begin() + static_cast<long>(shift), v->end());
        }
        auto xr = solve_cyclic_tridiagonal(rotated);
        std::rotate(xr.rbegin(), xr.rbegin() + static_cast<long>(shift), xr.rend());
        CHECK(max_abs_diff(x, xr) <= 1e-12);
    }
}
