#pragma once

#include <vector>

#include "fbm/covariance.hpp"
#include "fbm/rng.hpp"
#include "fbm/types.hpp"

namespace fbm {

/// Exact sampler: Y = mu*t + sigma * L Z with L the Cholesky factor of the
/// fBm covariance and Z i.i.d. standard normal from the seeded stream.
ObservationPath sample_cholesky(const ModelParams& params, const SamplingGrid& grid,
                                SimulationSeed seed);

/// Same, reusing an existing factorization (cov.hurst must equal params.hurst).
ObservationPath sample_cholesky(const FbmCovariance& cov, const ModelParams& params,
                                SimulationSeed seed);

/// Precomputed circulant spectrum for Davies-Harte synthesis on a fixed
/// (grid, H). Construction throws NegativeSpectrumError if any eigenvalue of
/// the embedding is negative; values are never clamped.
///
/// The stationary increment sequence is embedded in a circulant of power-of-
/// two size M >= 2(N-1); the top-left N x N block of the circulant then
/// reproduces the increment autocovariance exactly, so the sampled paths have
/// the exact finite-dimensional law.
class DaviesHartePlan {
public:
    DaviesHartePlan(const SamplingGrid& grid, HurstExponent hurst);

    ObservationPath sample(const ModelParams& params, SimulationSeed seed) const;

    const SamplingGrid& grid() const noexcept { return grid_; }
    HurstExponent hurst() const noexcept { return hurst_; }
    std::size_t embedding_size() const noexcept { return coeff_scale_.size(); }

private:
    SamplingGrid grid_;
    HurstExponent hurst_;
    std::vector<double> coeff_scale_;  // sqrt of eigenvalue / normalization, per frequency
};

/// One-shot Davies-Harte sample (builds the plan internally).
ObservationPath sample_davies_harte(const ModelParams& params, const SamplingGrid& grid,
                                    SimulationSeed seed);

}  // namespace fbm
