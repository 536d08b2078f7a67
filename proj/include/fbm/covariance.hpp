#pragma once

#include <span>
#include <vector>

#include "fbm/linalg.hpp"
#include "fbm/model.hpp"
#include "fbm/types.hpp"

namespace fbm {

/// The three quadratic forms the closed-form estimators are built from.
struct QuadraticForms {
    double t_gi_t;  ///< t' G^{-1} t
    double t_gi_y;  ///< t' G^{-1} y
    double y_gi_y;  ///< y' G^{-1} y
};

/// Covariance matrix of the observed fBm vector together with its Cholesky
/// factor. Immutable after construction; safe to share across threads.
class FbmCovariance {
public:
    FbmCovariance(SamplingGrid grid, HurstExponent hurst, linalg::Matrix gamma,
                  linalg::Matrix chol_lower)
        : grid_(grid), hurst_(hurst), gamma_(std::move(gamma)),
          chol_lower_(std::move(chol_lower)) {}

    const SamplingGrid& grid() const noexcept { return grid_; }
    HurstExponent hurst() const noexcept { return hurst_; }
    const linalg::Matrix& gamma() const noexcept { return gamma_; }
    const linalg::Matrix& chol_lower() const noexcept { return chol_lower_; }
    std::size_t size() const noexcept { return grid_.count(); }

private:
    SamplingGrid grid_;
    HurstExponent hurst_;
    linalg::Matrix gamma_;
    linalg::Matrix chol_lower_;
};

/// Build and factorize the covariance of (B^H_h, ..., B^H_Nh).
FbmCovariance factorize(const SamplingGrid& grid, HurstExponent hurst,
                        linalg::Execution exec = linalg::Execution::parallel);

/// Solve Gamma x = b through the Cholesky factor.
std::vector<double> solve(const FbmCovariance& cov, std::span<const double> b);

/// The quadratic forms t'G^{-1}t, t'G^{-1}y, y'G^{-1}y, computed as inner
/// products of triangular solves; the inverse is never formed.
QuadraticForms quad_forms(const FbmCovariance& cov, const ObservationPath& path);

/// t' G^{-1} t on its own; the reciprocal is the exact variance of the drift
/// estimator per unit sigma_sq.
double time_quadratic_form(const FbmCovariance& cov);

/// Upper bound on the largest eigenvalue of Gamma: the maximum absolute row
/// sum (Gerschgorin). Streams the entries; never materializes the matrix.
double gerschgorin_bound(const SamplingGrid& grid, HurstExponent hurst);

/// log det Gamma = 2 * sum(log diag L).
double log_det(const FbmCovariance& cov);

}  // namespace fbm
