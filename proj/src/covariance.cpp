#include "fbm/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbm {

FbmCovariance factorize(const SamplingGrid& grid, HurstExponent hurst,
                        linalg::Execution exec) {
    linalg::Matrix gamma = build_gamma(grid, hurst, exec);
    linalg::Matrix lower = linalg::cholesky_lower(gamma, exec);
    return FbmCovariance(grid, hurst, std::move(gamma), std::move(lower));
}

std::vector<double> solve(const FbmCovariance& cov, std::span<const double> b) {
    const std::size_t n = cov.size();
    if (b.size() != n)
        throw std::invalid_argument("solve: right-hand side length does not match covariance");
    std::vector<double> half(n), x(n);
    linalg::solve_lower(cov.chol_lower(), b, half);
    linalg::solve_lower_transposed(cov.chol_lower(), half, x);
    return x;
}

QuadraticForms quad_forms(const FbmCovariance& cov, const ObservationPath& path) {
    if (!(path.grid() == cov.grid()))
        throw std::invalid_argument("quad_forms: path grid does not match covariance grid");
    const std::size_t n = cov.size();

    const std::vector<double> times = cov.grid().times();
    std::vector<double> u(n), v(n);
    linalg::solve_lower(cov.chol_lower(), times, u);
    linalg::solve_lower(cov.chol_lower(), path.values(), v);

    return QuadraticForms{linalg::dot(u, u), linalg::dot(u, v), linalg::dot(v, v)};
}

double time_quadratic_form(const FbmCovariance& cov) {
    const std::size_t n = cov.size();
    const std::vector<double> times = cov.grid().times();
    std::vector<double> u(n);
    linalg::solve_lower(cov.chol_lower(), times, u);
    return linalg::dot(u, u);
}

double gerschgorin_bound(const SamplingGrid& grid, HurstExponent hurst) {
    const std::size_t n = grid.count();
    const double two_h = 2.0 * hurst.value();
    const double step_pow = std::pow(grid.step(), two_h);

    std::vector<double> pow_idx(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i)
        pow_idx[i] = std::pow(static_cast<double>(i), two_h);

    double bound = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : bound) if (n > 256)
#endif
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t lo = std::min(i, j), hi = std::max(i, j);
            const double entry =
                0.5 * ((pow_idx[hi + 1] - pow_idx[hi - lo]) + pow_idx[lo + 1]);
            row_sum += std::abs(entry * step_pow);
        }
        bound = std::max(bound, row_sum);
    }
    return bound;
}

double log_det(const FbmCovariance& cov) {
    const linalg::Matrix& l = cov.chol_lower();
    double acc = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) acc += std::log(l(i, i));
    return 2.0 * acc;
}

}  // namespace fbm
