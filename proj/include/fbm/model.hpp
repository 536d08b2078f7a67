#pragma once

#include <cstdint>

#include "fbm/linalg.hpp"
#include "fbm/types.hpp"

namespace fbm {

/// Covariance of fractional Brownian motion at times s, t >= 0:
/// (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.
double fbm_cov(double s, double t, HurstExponent hurst);

/// Autocovariance of unit-grid fractional Gaussian noise at lag k:
/// (|k+1|^{2H} - 2 k^{2H} + |k-1|^{2H}) / 2. gamma(0) == 1.
double fgn_autocovariance(std::int64_t lag, HurstExponent hurst);

/// N x N covariance matrix of (B^H_h, ..., B^H_Nh). Symmetric positive
/// definite; entry (i,j) equals fbm_cov(i*h, j*h, hurst) and factors as
/// h^{2H} times the unit-step matrix.
linalg::Matrix build_gamma(const SamplingGrid& grid, HurstExponent hurst,
                           linalg::Execution exec = linalg::Execution::parallel);

}  // namespace fbm
