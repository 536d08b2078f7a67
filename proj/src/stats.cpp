#include "fbm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fbm::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-15;

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// modified Lentz for the continued-fraction form of Q(a,x)
double gamma_q_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("regularized_gamma_p: a must be positive");
    if (x < 0.0) throw std::domain_error("regularized_gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double chi_square_cdf(double x, double dof) {
    if (!(dof > 0.0)) throw std::domain_error("chi_square_cdf: dof must be positive");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1.18) {
        // theta-function form, fast for small arguments
        const double t = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * x * x));
        const double series = t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0);
        return std::sqrt(2.0 * std::numbers::pi) / x * series;
    }
    const double u = std::exp(-2.0 * x * x);
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 20; ++j) {
        const double term = std::pow(u, static_cast<double>(j) * j);
        sum += sign * term;
        if (term < 1e-17) break;
        sign = -sign;
    }
    return 1.0 - 2.0 * sum;
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_test: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double lo = f - static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n - f;
        d = std::max({d, lo, hi});
    }
    return KsResult{d, 1.0 - kolmogorov_cdf(std::sqrt(n) * d)};
}

namespace {

constexpr std::size_t kMinKsSamples = 100;

}

double ks_normality(std::span<const double> samples) {
    if (samples.size() < kMinKsSamples)
        throw std::invalid_argument("ks_normality: need at least 100 samples");
    return ks_test(samples, [](double x) { return normal_cdf(x); }).p_value;
}

double ks_chi_square(std::span<const double> samples, std::size_t dof) {
    if (samples.size() < kMinKsSamples)
        throw std::invalid_argument("ks_chi_square: need at least 100 samples");
    if (dof < 1) throw std::invalid_argument("ks_chi_square: dof must be >= 1");
    const double k = static_cast<double>(dof);
    return ks_test(samples, [k](double x) { return chi_square_cdf(x, k); }).p_value;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance: need at least 2 samples");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double sample_sd(std::span<const double> xs) { return std::sqrt(variance(xs)); }

double kurtosis(std::span<const double> xs) {
    const double m = mean(xs);
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = (x - m) * (x - m);
        m2 += d;
        m4 += d * d;
    }
    m2 /= static_cast<double>(xs.size());
    m4 /= static_cast<double>(xs.size());
    return m4 / (m2 * m2);
}

double log_log_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("log_log_slope: need matching samples, at least 2");
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace fbm::stats
