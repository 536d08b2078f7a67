#include "fbm/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "fbm/estimators.hpp"
#include "fbm/experiment.hpp"
#include "fbm/model.hpp"
#include "fbm/rng.hpp"
#include "fbm/stats.hpp"
#include "fbm/synthesis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbm {

namespace {

// ---------------------------------------------------------------------------
// Extended-precision reference path: explicit inversion by Gauss-Jordan with
// partial pivoting in long double. Deliberately shares nothing with the
// Cholesky kernels it cross-checks.
namespace reference {

using LdMatrix = std::vector<std::vector<long double>>;

LdMatrix gamma_ld(double step, std::size_t n, double hurst) {
    const long double two_h = 2.0L * static_cast<long double>(hurst);
    LdMatrix g(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const long double ti = static_cast<long double>(i + 1) * step;
            const long double tj = static_cast<long double>(j + 1) * step;
            g[i][j] = 0.5L * (powl(ti, two_h) + powl(tj, two_h) - powl(fabsl(ti - tj), two_h));
        }
    return g;
}

LdMatrix invert(LdMatrix a) {
    const std::size_t n = a.size();
    LdMatrix inv(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0L;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (fabsl(a[r][col]) > fabsl(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const long double p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const long double f = a[r][col];
            if (f == 0.0L) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

long double quad(const LdMatrix& m, const std::vector<long double>& x,
                 const std::vector<long double>& y) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) s += x[i] * m[i][j] * y[j];
    return s;
}

double power_iteration_lambda_max(const linalg::Matrix& m, int iterations = 200) {
    const std::size_t n = m.rows();
    std::vector<double> v(n, 1.0), w(n);
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
            w[i] = s;
        }
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        lambda = norm;
    }
    return lambda;
}

}  // namespace reference

// ---------------------------------------------------------------------------

struct Suite {
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();  // empty detail means pass
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string check_estimator_hand_oracle() {
    const SamplingGrid grid(1.0, 2);
    const ObservationPath path(grid, {1.0, 3.0});
    const EstimateReport r = estimate(path, HurstExponent(0.5));
    if (std::abs(r.mu_hat - 1.5) > 1e-12) return "mu_hat=" + fmt(r.mu_hat) + " expected 1.5";
    if (std::abs(r.sigma_sq_hat - 0.25) > 1e-12)
        return "sigma_sq_hat=" + fmt(r.sigma_sq_hat) + " expected 0.25";
    return "";
}

std::string check_quad_forms_hand_oracle() {
    const SamplingGrid grid(1.0, 2);
    const FbmCovariance cov = factorize(grid, HurstExponent(0.5));
    const QuadraticForms q = quad_forms(cov, ObservationPath(grid, {1.0, 3.0}));
    if (std::abs(q.t_gi_t - 2.0) > 1e-12 || std::abs(q.t_gi_y - 3.0) > 1e-12 ||
        std::abs(q.y_gi_y - 5.0) > 1e-12)
        return "got (" + fmt(q.t_gi_t) + "," + fmt(q.t_gi_y) + "," + fmt(q.y_gi_y) +
               ") expected (2,3,5)";
    return "";
}

std::string check_brute_force_equivalence(std::uint64_t seed) {
    NormalStream noise({seed, 1});
    std::mt19937_64 pick(seed);
    const double hs[] = {0.25, 0.5, 0.75};
    for (int instance = 0; instance < 100; ++instance) {
        const std::size_t n = 2 + pick() % 7;  // 2..8
        const double h = 0.5 + 1.5 * static_cast<double>(pick() % 1024) / 1024.0;
        const double hurst = hs[pick() % 3];

        std::vector<double> y(n);
        noise.fill(y);

        const SamplingGrid grid(h, n);
        const FbmCovariance cov = factorize(grid, HurstExponent(hurst));
        const QuadraticForms q = quad_forms(cov, ObservationPath(grid, y));

        const auto ginv = reference::invert(reference::gamma_ld(h, n, hurst));
        std::vector<long double> t_ld(n), y_ld(y.begin(), y.end());
        for (std::size_t k = 0; k < n; ++k)
            t_ld[k] = static_cast<long double>(k + 1) * h;
        const double tt = static_cast<double>(reference::quad(ginv, t_ld, t_ld));
        const double ty = static_cast<double>(reference::quad(ginv, t_ld, y_ld));
        const double yy = static_cast<double>(reference::quad(ginv, y_ld, y_ld));

        auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
        };
        if (rel(q.t_gi_t, tt) > 1e-9 || rel(q.t_gi_y, ty) > 1e-9 || rel(q.y_gi_y, yy) > 1e-9)
            return "instance " + std::to_string(instance) + " (n=" + std::to_string(n) +
                   ", H=" + fmt(hurst) + "): quadratic forms deviate from reference inverse";
    }
    return "";
}

std::string check_gamma_properties() {
    for (double hurst : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const SamplingGrid grid(1.0, 96);
        const linalg::Matrix g = build_gamma(grid, HurstExponent(hurst));
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                if (g(i, j) != g(j, i))
                    return "H=" + fmt(hurst) + ": asymmetric entry at (" + std::to_string(i) +
                           "," + std::to_string(j) + ")";
        try {
            (void)linalg::cholesky_lower(g);
        } catch (const FactorizationError& e) {
            return "H=" + fmt(hurst) + ": not positive definite, pivot " +
                   std::to_string(e.pivot_index());
        }
    }
    return "";
}

std::string check_gerschgorin_dominates() {
    for (double hurst : {0.25, 0.75}) {
        for (std::size_t n : {16u, 128u}) {
            const SamplingGrid grid(1.0, n);
            const double bound = gerschgorin_bound(grid, HurstExponent(hurst));
            const double lmax = reference::power_iteration_lambda_max(
                build_gamma(grid, HurstExponent(hurst)));
            if (bound < lmax * (1.0 - 1e-8))
                return "H=" + fmt(hurst) + " N=" + std::to_string(n) + ": bound " + fmt(bound) +
                       " below lambda_max estimate " + fmt(lmax);
        }
    }
    return "";
}

std::string check_sampler_determinism(std::uint64_t seed) {
    const SamplingGrid grid(0.5, 64);
    const ModelParams params(0.3, 1.7, HurstExponent(0.7));
    const auto a = sample_cholesky(params, grid, {seed, 5});
    const auto b = sample_cholesky(params, grid, {seed, 5});
    if (a.values() != b.values()) return "cholesky sampler not reproducible";
    const auto c = sample_davies_harte(params, grid, {seed, 5});
    const auto d = sample_davies_harte(params, grid, {seed, 5});
    if (c.values() != d.values()) return "davies_harte sampler not reproducible";

    const ModelParams drift_only(2.0, 0.0, HurstExponent(0.7));
    const auto e = sample_cholesky(drift_only, grid, {seed, 6});
    const auto f = sample_davies_harte(drift_only, grid, {seed, 6});
    if (e.values() != f.values()) return "degenerate paths differ between samplers";
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e.values()[k] != 2.0 * grid.time(k + 1)) return "degenerate path is not mu*t";
    return "";
}

std::string check_normal_stream_moments(std::uint64_t seed) {
    constexpr std::size_t kDraws = 1'000'000;
    const std::vector<double> z = normal_stream({seed, 9}, kDraws);
    const double m = stats::mean(z);
    const double v = stats::variance(z);
    const double k = stats::kurtosis(z);
    const double n = static_cast<double>(kDraws);
    if (std::abs(m) > 4.0 / std::sqrt(n)) return "mean " + fmt(m) + " outside 4 SE";
    if (std::abs(v - 1.0) > 4.0 * std::sqrt(2.0 / n)) return "variance " + fmt(v) + " outside 4 SE";
    if (std::abs(k - 3.0) > 4.0 * std::sqrt(24.0 / n)) return "kurtosis " + fmt(k) + " outside 4 SE";
    return "";
}

std::string check_ks_self_test(std::uint64_t seed) {
    const std::vector<double> z = normal_stream({seed, 11}, 5000);
    const double p = stats::ks_normality(z);
    if (p <= 0.01) return "seeded normal draws rejected, p=" + fmt(p);
    const std::vector<double> zeros(5000, 0.0);
    if (stats::ks_normality(zeros) >= 1e-6) return "degenerate sample not rejected";
    return "";
}

std::string check_estimator_invariance(std::uint64_t seed) {
    const SamplingGrid grid(1.0, 40);
    const HurstExponent hurst(0.65);
    const FbmCovariance cov = factorize(grid, hurst);
    const ModelParams params(0.4, 1.2, hurst);
    const ObservationPath path = sample_cholesky(cov, params, {seed, 13});
    const EstimateReport base = estimate(cov, path);

    const double shift = 0.75, scale = -2.5;
    std::vector<double> shifted(path.values()), scaled(path.values());
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        shifted[k] += shift * grid.time(k + 1);
        scaled[k] *= scale;
    }
    const EstimateReport s1 = estimate(cov, ObservationPath(grid, shifted));
    const EstimateReport s2 = estimate(cov, ObservationPath(grid, scaled));

    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max(std::abs(b), 1e-30);
    };
    if (rel(s1.mu_hat, base.mu_hat + shift) > 1e-10) return "drift shift not additive";
    if (rel(s1.sigma_sq_hat, base.sigma_sq_hat) > 1e-10) return "scale changed under drift shift";
    if (rel(s2.mu_hat, scale * base.mu_hat) > 1e-10) return "drift not linear in data";
    if (rel(s2.sigma_sq_hat, scale * scale * base.sigma_sq_hat) > 1e-10)
        return "scale not quadratic in data";
    return "";
}

// --- full-level Monte Carlo batteries ---------------------------------------

std::string check_moment_laws(std::uint64_t seed) {
    const SamplingGrid grid(1.0, 500);
    const std::size_t reps = 2000;
    for (double hurst : {0.25, 0.75}) {
        const ModelParams truth(0.788, 0.8116, HurstExponent(hurst));
        const FbmCovariance cov = factorize(grid, HurstExponent(hurst));
        const ReplicationSet set =
            run_replications(cov, truth, reps, seed, 17000, Sampler::cholesky);

        const double n = static_cast<double>(grid.count());
        const double se_mu = stats::sample_sd(set.mu_hats) / std::sqrt(static_cast<double>(reps));
        if (std::abs(stats::mean(set.mu_hats) - truth.mu) > 4.0 * se_mu)
            return "H=" + fmt(hurst) + ": mean(mu_hat) outside 4 SE of mu";
        const double se_s2 =
            stats::sample_sd(set.sigma_sq_hats) / std::sqrt(static_cast<double>(reps));
        const double target = (n - 1.0) / n * truth.sigma_sq;
        if (std::abs(stats::mean(set.sigma_sq_hats) - target) > 4.0 * se_s2)
            return "H=" + fmt(hurst) + ": mean(sigma_sq_hat) outside 4 SE of (N-1)/N sigma_sq";
    }
    return "";
}

std::string check_variance_law(std::uint64_t seed) {
    const SamplingGrid grid(1.0, 200);
    const std::size_t reps = 5000;
    const double n = static_cast<double>(grid.count());
    for (double hurst : {0.25, 0.75}) {
        const ModelParams truth(0.0, 1.0, HurstExponent(hurst));
        const FbmCovariance cov = factorize(grid, HurstExponent(hurst));
        const ReplicationSet set =
            run_replications(cov, truth, reps, seed, 29000, Sampler::cholesky);
        const double theoretical = 2.0 * (n - 1.0) / (n * n);
        const double ratio = stats::variance(set.sigma_sq_hats) / theoretical;
        if (ratio < 0.85 || ratio > 1.15)
            return "H=" + fmt(hurst) + ": Var(sigma_sq_hat)/theory = " + fmt(ratio);
    }
    return "";
}

std::string check_distribution_laws(std::uint64_t seed) {
    {
        const SamplingGrid grid(1.0, 100);
        const ModelParams truth(0.5, 2.0, HurstExponent(0.75));
        const FbmCovariance cov = factorize(grid, HurstExponent(0.75));
        const ReplicationSet set =
            run_replications(cov, truth, 2000, seed, 31000, Sampler::cholesky);
        const double p = stats::ks_normality(set.z_mu);
        if (p <= 0.01) return "z_mu KS rejected at N=100, p=" + fmt(p);
    }
    {
        const SamplingGrid grid(1.0, 50);
        const ModelParams truth(0.788, 0.8116, HurstExponent(0.25));
        const FbmCovariance cov = factorize(grid, HurstExponent(0.25));
        const ReplicationSet set =
            run_replications(cov, truth, 5000, seed, 37000, Sampler::cholesky);
        const double p = stats::ks_chi_square(set.chi_sq, grid.count() - 1);
        if (p <= 0.01) return "chi_sq KS rejected at N=50, p=" + fmt(p);
    }
    return "";
}

// The normal approximation for z_sigma carries the finite-N skew of the
// underlying chi-square law, so a plain KS gate against N(0,1) rejects a
// correct implementation once R is large. The meaningful check is that the
// measured distance to N(0,1) matches the exact law's distance at the same N.
std::string check_sigma_clt_approach(std::uint64_t seed) {
    const std::size_t reps = 5000;
    for (std::size_t n : {200u, 500u}) {
        const double dn = static_cast<double>(n);
        double exact_distance = 0.0;
        for (double x = -6.0; x <= 6.0; x += 1e-3) {
            const double f = stats::chi_square_cdf(dn + std::sqrt(2.0 * dn) * x, dn - 1.0);
            exact_distance = std::max(exact_distance, std::abs(f - stats::normal_cdf(x)));
        }

        const SamplingGrid grid(1.0, n);
        const ModelParams truth(0.0, 1.0, HurstExponent(0.55));
        const FbmCovariance cov = factorize(grid, HurstExponent(0.55));
        const ReplicationSet set =
            run_replications(cov, truth, reps, seed, 41000 + n, Sampler::cholesky);
        const auto ks =
            stats::ks_test(set.z_sigma, [](double x) { return stats::normal_cdf(x); });

        const double band = 2.0 / std::sqrt(static_cast<double>(reps));
        if (std::abs(ks.statistic - exact_distance) > band)
            return "N=" + std::to_string(n) + ": distance to N(0,1) is " + fmt(ks.statistic) +
                   ", exact law predicts " + fmt(exact_distance) + " (band " + fmt(band) + ")";
    }
    return "";
}

std::string check_sampler_covariance(std::uint64_t seed) {
    const std::size_t n = 64;
    const std::size_t reps = 10000;
    const SamplingGrid grid(1.0, n);
    for (double hurst : {0.25, 0.75}) {
        const ModelParams truth(0.0, 1.0, HurstExponent(hurst));
        const linalg::Matrix gamma = build_gamma(grid, HurstExponent(hurst));
        const FbmCovariance cov = factorize(grid, HurstExponent(hurst));
        const DaviesHartePlan plan(grid, HurstExponent(hurst));

        for (int which = 0; which < 2; ++which) {
            linalg::Matrix acc(n, n);
            for (std::size_t r = 0; r < reps; ++r) {
                const SimulationSeed s{seed, 43000 + static_cast<std::uint64_t>(which) * reps + r};
                const ObservationPath path =
                    which == 0 ? sample_cholesky(cov, truth, s) : plan.sample(truth, s);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i; j < n; ++j)
                        acc(i, j) += path.values()[i] * path.values()[j];
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    const double emp = acc(i, j) / static_cast<double>(reps);
                    const double se = std::sqrt((gamma(i, i) * gamma(j, j) +
                                                 gamma(i, j) * gamma(i, j)) /
                                                static_cast<double>(reps));
                    if (std::abs(emp - gamma(i, j)) > 5.0 * se)
                        return std::string(which == 0 ? "cholesky" : "davies_harte") +
                               " H=" + fmt(hurst) + ": covariance entry (" + std::to_string(i) +
                               "," + std::to_string(j) + ") outside 5 MC SE";
                }
        }
    }
    return "";
}

std::string check_thread_determinism(std::uint64_t seed) {
    ExperimentConfig config;
    config.mu = 0.788;
    config.sigma_sq = 0.8116;
    config.hurst_list = {HurstExponent(0.25), HurstExponent(0.75)};
    config.grid = SamplingGrid(1.0, 128);
    config.replications = 400;
    config.root_seed = seed;
    config.sampler = Sampler::davies_harte;

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string single = emit_table(run_experiment(config), TableFormat::json);
    omp_set_num_threads(saved);
    const std::string parallel = emit_table(run_experiment(config), TableFormat::json);
    if (single != parallel) return "summaries differ between 1 and " + std::to_string(saved) +
                                   " threads";
#else
    const std::string a = emit_table(run_experiment(config), TableFormat::json);
    const std::string b = emit_table(run_experiment(config), TableFormat::json);
    if (a != b) return "summaries differ between identical reruns";
#endif
    return "";
}

}  // namespace

ValidationLevel validation_level_from_string(const std::string& name) {
    if (name == "quick") return ValidationLevel::quick;
    if (name == "full") return ValidationLevel::full;
    throw std::invalid_argument("unknown validation level '" + name +
                                "' (expected quick or full)");
}

std::vector<CheckResult> run_validation(ValidationLevel level, std::uint64_t root_seed) {
    Suite suite;
    const std::uint64_t s = root_seed;

    suite.run("estimator_hand_oracle", check_estimator_hand_oracle);
    suite.run("quad_forms_hand_oracle", check_quad_forms_hand_oracle);
    suite.run("gamma_properties", check_gamma_properties);
    suite.run("brute_force_equivalence", [s] { return check_brute_force_equivalence(s); });
    suite.run("gerschgorin_dominates", check_gerschgorin_dominates);
    suite.run("sampler_determinism", [s] { return check_sampler_determinism(s); });
    suite.run("normal_stream_moments", [s] { return check_normal_stream_moments(s); });
    suite.run("ks_self_test", [s] { return check_ks_self_test(s); });
    suite.run("estimator_invariance", [s] { return check_estimator_invariance(s); });

    if (level == ValidationLevel::full) {
        suite.run("moment_laws", [s] { return check_moment_laws(s); });
        suite.run("variance_law", [s] { return check_variance_law(s); });
        suite.run("distribution_laws", [s] { return check_distribution_laws(s); });
        suite.run("sigma_clt_approach", [s] { return check_sigma_clt_approach(s); });
        suite.run("sampler_covariance", [s] { return check_sampler_covariance(s); });
        suite.run("thread_determinism", [s] { return check_thread_determinism(s); });
    }
    return suite.results;
}

}  // namespace fbm
