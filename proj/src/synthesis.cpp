#include "fbm/synthesis.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fbm/linalg.hpp"
#include "fbm/model.hpp"

namespace fbm {

namespace {

std::vector<double> drift_path(const ModelParams& params, const SamplingGrid& grid) {
    std::vector<double> values(grid.count());
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = params.mu * grid.time(k + 1);
    return values;
}

}  // namespace

ObservationPath sample_cholesky(const FbmCovariance& cov, const ModelParams& params,
                                SimulationSeed seed) {
    if (!(cov.hurst() == params.hurst))
        throw std::invalid_argument("sample_cholesky: factorization Hurst differs from params");
    const SamplingGrid& grid = cov.grid();
    std::vector<double> values = drift_path(params, grid);
    if (params.sigma_sq > 0.0) {
        const std::size_t n = grid.count();
        std::vector<double> z = normal_stream(seed, n);
        const double sigma = params.sigma();
        const linalg::Matrix& l = cov.chol_lower();
        for (std::size_t i = 0; i < n; ++i)
            values[i] += sigma * linalg::dot({l.row(i), i + 1}, {z.data(), i + 1});
    }
    return ObservationPath(grid, std::move(values));
}

ObservationPath sample_cholesky(const ModelParams& params, const SamplingGrid& grid,
                                SimulationSeed seed) {
    if (params.sigma_sq == 0.0)  // pure drift, no factorization needed
        return ObservationPath(grid, drift_path(params, grid));
    return sample_cholesky(factorize(grid, params.hurst), params, seed);
}

DaviesHartePlan::DaviesHartePlan(const SamplingGrid& grid, HurstExponent hurst)
    : grid_(grid), hurst_(hurst) {
    const std::size_t n = grid.count();
    const std::size_t m = linalg::next_pow2(2 * (n - 1) < 2 ? 2 : 2 * (n - 1));

    // first row of the circulant: autocovariances out to m/2, mirrored back
    std::vector<std::complex<double>> row(m);
    for (std::size_t j = 0; j <= m / 2; ++j)
        row[j] = fgn_autocovariance(static_cast<std::int64_t>(j), hurst);
    for (std::size_t j = m / 2 + 1; j < m; ++j) row[j] = row[m - j];

    linalg::fft_radix2(row, false);

    coeff_scale_.resize(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double eig = row[k].real();
        if (eig < 0.0) throw NegativeSpectrumError(k, eig);
        // interior frequencies carry two normal deviates, hence the extra 1/2
        const bool endpoint = k == 0 || k == m / 2;
        coeff_scale_[k] = std::sqrt(eig * inv_m * (endpoint ? 1.0 : 0.5));
    }
}

ObservationPath DaviesHartePlan::sample(const ModelParams& params, SimulationSeed seed) const {
    if (!(params.hurst == hurst_))
        throw std::invalid_argument("DaviesHartePlan: params Hurst differs from plan");
    std::vector<double> values = drift_path(params, grid_);
    if (params.sigma_sq == 0.0) return ObservationPath(grid_, std::move(values));

    const std::size_t n = grid_.count();
    const std::size_t m = coeff_scale_.size();
    NormalStream stream(seed);

    std::vector<std::complex<double>> coeff(m);
    coeff[0] = coeff_scale_[0] * stream.next();
    for (std::size_t k = 1; k < m / 2; ++k) {
        const double re = stream.next();
        const double im = stream.next();
        coeff[k] = coeff_scale_[k] * std::complex<double>(re, im);
        coeff[m - k] = std::conj(coeff[k]);
    }
    coeff[m / 2] = coeff_scale_[m / 2] * stream.next();

    linalg::fft_radix2(coeff, false);

    // unit fGn -> increments of B^H on step h by self-similarity -> cumulative sum
    const double scale = params.sigma() * std::pow(grid_.step(), hurst_.value());
    double level = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        level += scale * coeff[k].real();
        values[k] += level;
    }
    return ObservationPath(grid_, std::move(values));
}

ObservationPath sample_davies_harte(const ModelParams& params, const SamplingGrid& grid,
                                    SimulationSeed seed) {
    return DaviesHartePlan(grid, params.hurst).sample(params, seed);
}

}  // namespace fbm
