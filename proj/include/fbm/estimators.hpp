#pragma once

#include <cstddef>

#include "fbm/covariance.hpp"
#include "fbm/types.hpp"

namespace fbm {

/// Closed-form maximum-likelihood estimates of drift and scale, plus the
/// bias-corrected scale and the standard error of the drift estimate.
struct EstimateReport {
    double mu_hat;              ///< t'G^{-1}y / t'G^{-1}t
    double sigma_sq_hat;        ///< ML estimate (biased by (N-1)/N)
    double sigma_sq_unbiased;   ///< sigma_sq_hat * N/(N-1)
    double se_mu_exact;         ///< sqrt(sigma_sq / t'G^{-1}t); plug-in unless truth supplied
    std::size_t n;
    HurstExponent hurst;
};

/// Estimates standardized against known true parameters.
struct StandardizedStats {
    double z_mu;         ///< sqrt(t'G^{-1}t) (mu_hat - mu) / sigma; standard normal for every N
    double z_sigma;      ///< sqrt(N/2) (sigma_sq_hat - sigma_sq) / sigma_sq; asymptotically N(0,1)
    double chi_sq_stat;  ///< N sigma_sq_hat / sigma_sq; chi-square with N-1 dof
};

/// ML estimation with a known Hurst exponent. The se_mu_exact field uses the
/// plug-in sigma_sq_hat. Factorizes the covariance internally.
EstimateReport estimate(const ObservationPath& path, HurstExponent hurst,
                        linalg::Execution exec = linalg::Execution::parallel);

/// Same, reusing a factorization (the usual entry point inside Monte Carlo
/// loops, where one factorization serves every replication).
EstimateReport estimate(const FbmCovariance& cov, const ObservationPath& path);

/// Variant for simulation studies where the true scale is known: se_mu_exact
/// is computed from true_sigma_sq instead of the plug-in estimate.
EstimateReport estimate(const FbmCovariance& cov, const ObservationPath& path,
                        double true_sigma_sq);

/// Gaussian log-likelihood of the path under the given parameters.
/// Requires params.sigma_sq > 0.
double log_likelihood(const ObservationPath& path, const ModelParams& params,
                      linalg::Execution exec = linalg::Execution::parallel);
double log_likelihood(const FbmCovariance& cov, const ObservationPath& path,
                      const ModelParams& params);

/// Standardize a report against the true parameters. t_gi_t is the quadratic
/// form t'G^{-1}t from the same covariance the report was estimated under.
StandardizedStats standardized_stats(const EstimateReport& report, const ModelParams& truth,
                                     double t_gi_t);

/// Render a report as a JSON object with snake_case field names.
std::string to_json_string(const EstimateReport& report);

}  // namespace fbm
