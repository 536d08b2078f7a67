#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fbm::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Regularized lower incomplete gamma P(a, x); series for x < a+1, Lentz
/// continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// Chi-square CDF with `dof` degrees of freedom.
double chi_square_cdf(double x, double dof);

/// Asymptotic CDF of the scaled Kolmogorov-Smirnov statistic sqrt(n)*D.
double kolmogorov_cdf(double x);

struct KsResult {
    double statistic;  ///< D = sup |F_n - F|
    double p_value;    ///< asymptotic, 1 - K(sqrt(n) D)
};

/// One-sample KS test of `samples` against an arbitrary continuous CDF.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

/// KS p-value against the standard normal. Requires at least 100 samples
/// (the p-value uses the asymptotic distribution only).
double ks_normality(std::span<const double> samples);

/// KS p-value against chi-square with `dof` degrees of freedom.
double ks_chi_square(std::span<const double> samples, std::size_t dof);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  ///< unbiased, n-1 denominator
double sample_sd(std::span<const double> xs);
double kurtosis(std::span<const double> xs);  ///< m4 / m2^2 (3 for a normal)

/// Least-squares slope of log(y) against log(x); used for growth-exponent fits.
double log_log_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace fbm::stats
