#include "fbm/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbm {

double fbm_cov(double s, double t, HurstExponent hurst) {
    if (s < 0.0 || t < 0.0)
        throw std::domain_error("fbm_cov: observation times must be nonnegative");
    const double two_h = 2.0 * hurst.value();
    return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

double fgn_autocovariance(std::int64_t lag, HurstExponent hurst) {
    if (lag < 0) throw std::domain_error("fgn_autocovariance: lag must be nonnegative");
    const double two_h = 2.0 * hurst.value();
    const double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                  std::pow(std::abs(k - 1.0), two_h));
}

linalg::Matrix build_gamma(const SamplingGrid& grid, HurstExponent hurst,
                           linalg::Execution exec) {
    const std::size_t n = grid.count();
    const double two_h = 2.0 * hurst.value();
    const double step_pow = std::pow(grid.step(), two_h);

    // i^{2H} for i = 1..n, shared by every entry of the row/column.
    std::vector<double> pow_idx(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i)
        pow_idx[i] = std::pow(static_cast<double>(i), two_h);

    linalg::Matrix gamma(n, n);
    const bool par = exec == linalg::Execution::parallel && n > 64;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        for (std::size_t j = i; j < n; ++j) {
            // grouped to keep the subtraction between same-scale terms
            const double unit =
                0.5 * ((pow_idx[j + 1] - pow_idx[j - i]) + pow_idx[i + 1]);
            gamma(i, j) = unit * step_pow;
        }
    }
    (void)par;

    // mirror: identical arithmetic guarantees exact symmetry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) gamma(i, j) = gamma(j, i);
    return gamma;
}

}  // namespace fbm
