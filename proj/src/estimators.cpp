#include "fbm/estimators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "fbm/linalg.hpp"

namespace fbm {

namespace {

// relative slack below which a negative scale numerator is treated as rounding
constexpr double kScaleNumeratorSlack = 1e-12;

EstimateReport estimate_impl(const FbmCovariance& cov, const ObservationPath& path,
                             const double* true_sigma_sq) {
    const QuadraticForms q = quad_forms(cov, path);
    const std::size_t n = cov.size();

    const double mu_hat = q.t_gi_y / q.t_gi_t;

    // Cauchy-Schwarz makes this nonnegative in exact arithmetic
    double numerator = q.y_gi_y * q.t_gi_t - q.t_gi_y * q.t_gi_y;
    if (numerator < 0.0) {
        const double scale = std::abs(q.y_gi_y * q.t_gi_t);
        if (numerator >= -kScaleNumeratorSlack * scale) {
            numerator = 0.0;
        } else {
            throw std::runtime_error(
                "estimate: quadratic-form numerator is negative beyond rounding slack (" +
                std::to_string(numerator) + ")");
        }
    }
    const double sigma_sq_hat = numerator / (static_cast<double>(n) * q.t_gi_t);
    const double sigma_sq_unbiased =
        sigma_sq_hat * static_cast<double>(n) / static_cast<double>(n - 1);
    const double se_basis = true_sigma_sq ? *true_sigma_sq : sigma_sq_hat;

    return EstimateReport{mu_hat,
                          sigma_sq_hat,
                          sigma_sq_unbiased,
                          std::sqrt(se_basis / q.t_gi_t),
                          n,
                          cov.hurst()};
}

}  // namespace

EstimateReport estimate(const FbmCovariance& cov, const ObservationPath& path) {
    return estimate_impl(cov, path, nullptr);
}

EstimateReport estimate(const FbmCovariance& cov, const ObservationPath& path,
                        double true_sigma_sq) {
    if (!(true_sigma_sq >= 0.0))
        throw std::domain_error("estimate: true_sigma_sq must be >= 0");
    return estimate_impl(cov, path, &true_sigma_sq);
}

EstimateReport estimate(const ObservationPath& path, HurstExponent hurst,
                        linalg::Execution exec) {
    return estimate(factorize(path.grid(), hurst, exec), path);
}

double log_likelihood(const FbmCovariance& cov, const ObservationPath& path,
                      const ModelParams& params) {
    if (!(params.sigma_sq > 0.0))
        throw std::domain_error("log_likelihood: sigma_sq must be positive");
    if (!(cov.hurst() == params.hurst))
        throw std::invalid_argument("log_likelihood: factorization Hurst differs from params");
    if (!(path.grid() == cov.grid()))
        throw std::invalid_argument("log_likelihood: path grid does not match covariance");

    const std::size_t n = cov.size();
    std::vector<double> residual(n), half(n);
    for (std::size_t k = 0; k < n; ++k)
        residual[k] = path.values()[k] - params.mu * cov.grid().time(k + 1);
    linalg::solve_lower(cov.chol_lower(), residual, half);
    const double quad = linalg::dot(half, half);

    return -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi * params.sigma_sq) -
           0.5 * log_det(cov) - quad / (2.0 * params.sigma_sq);
}

double log_likelihood(const ObservationPath& path, const ModelParams& params,
                      linalg::Execution exec) {
    return log_likelihood(factorize(path.grid(), params.hurst, exec), path, params);
}

std::string to_json_string(const EstimateReport& report) {
    nlohmann::json j{{"mu_hat", report.mu_hat},
                     {"sigma_sq_hat", report.sigma_sq_hat},
                     {"sigma_sq_unbiased", report.sigma_sq_unbiased},
                     {"se_mu_exact", report.se_mu_exact},
                     {"n", report.n},
                     {"hurst", report.hurst.value()}};
    return j.dump(2) + "\n";
}

StandardizedStats standardized_stats(const EstimateReport& report, const ModelParams& truth,
                                     double t_gi_t) {
    if (!(truth.sigma_sq > 0.0))
        throw std::domain_error("standardized_stats: true sigma_sq must be positive");
    if (!(t_gi_t > 0.0))
        throw std::domain_error("standardized_stats: t_gi_t must be positive");

    const double n = static_cast<double>(report.n);
    return StandardizedStats{
        std::sqrt(t_gi_t) * (report.mu_hat - truth.mu) / truth.sigma(),
        std::sqrt(n / 2.0) * (report.sigma_sq_hat - truth.sigma_sq) / truth.sigma_sq,
        n * report.sigma_sq_hat / truth.sigma_sq};
}

}  // namespace fbm
