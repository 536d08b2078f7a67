// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails. Every tolerance is pinned in code next to the check it gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fbm/estimators.hpp"
#include "fbm/experiment.hpp"
#include "fbm/model.hpp"
#include "fbm/rng.hpp"
#include "fbm/stats.hpp"
#include "fbm/synthesis.hpp"

#include "oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fbm;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------

std::string criterion_hand_oracle() {
    const SamplingGrid grid(1.0, 2);
    const EstimateReport r = estimate(ObservationPath(grid, {1.0, 3.0}), HurstExponent(0.5));
    if (std::abs(r.mu_hat - 1.5) > 1e-12) return "mu_hat = " + fmt(r.mu_hat) + ", expected 1.5";
    if (std::abs(r.sigma_sq_hat - 0.25) > 1e-12)
        return "sigma_sq_hat = " + fmt(r.sigma_sq_hat) + ", expected 0.25";
    return "";
}

std::string criterion_brute_force() {
    NormalStream noise({8101, 0});
    std::mt19937_64 pick(8101);
    const double hs[] = {0.25, 0.5, 0.75};
    for (int instance = 0; instance < 100; ++instance) {
        const std::size_t n = 2 + pick() % 7;
        const double h = 0.3 + static_cast<double>(pick() % 1000) / 600.0;
        const double hurst = hs[pick() % 3];
        std::vector<double> y(n);
        noise.fill(y);

        const SamplingGrid grid(h, n);
        const FbmCovariance cov = factorize(grid, HurstExponent(hurst));
        const QuadraticForms q = quad_forms(cov, ObservationPath(grid, y));
        const EstimateReport e = estimate(cov, ObservationPath(grid, y));
        const oracle::ReferenceEstimates ref = oracle::estimates(h, hurst, y);

        if (oracle::rel_err(q.t_gi_t, ref.t_gi_t) > 1e-9 ||
            oracle::rel_err(q.t_gi_y, ref.t_gi_y) > 1e-9 ||
            oracle::rel_err(q.y_gi_y, ref.y_gi_y) > 1e-9 ||
            oracle::rel_err(e.mu_hat, ref.mu_hat) > 1e-9 ||
            oracle::rel_err(e.sigma_sq_hat, ref.sigma_sq_hat) > 1e-9)
            return "instance " + std::to_string(instance) + " (n=" + std::to_string(n) +
                   ", H=" + fmt(hurst) + ") deviates from the explicit-inverse reference";
    }
    return "";
}

// shared by criteria 3 and 4
struct MomentRuns {
    std::vector<double> hurst;
    std::vector<ReplicationSet> sets;
    double mu = 0.7880;
    double sigma_sq = 0.8116;
    std::size_t n = 500;
    std::size_t reps = 2000;
};

const MomentRuns& moment_runs() {
    static const MomentRuns runs = [] {
        MomentRuns r;
        const SamplingGrid grid(1.0, r.n);
        std::uint64_t offset = 0;
        for (double hurst : {0.25, 0.45, 0.55, 0.75}) {
            const HurstExponent h(hurst);
            const FbmCovariance cov = factorize(grid, h);
            r.hurst.push_back(hurst);
            r.sets.push_back(run_replications(cov, ModelParams(r.mu, r.sigma_sq, h), r.reps,
                                              8103, offset, Sampler::cholesky));
            offset += r.reps;
        }
        return r;
    }();
    return runs;
}

std::string criterion_mu_unbiased() {
    const MomentRuns& runs = moment_runs();
    const double root_r = std::sqrt(static_cast<double>(runs.reps));
    for (std::size_t i = 0; i < runs.sets.size(); ++i) {
        const double mean = stats::mean(runs.sets[i].mu_hats);
        const double band = 4.0 * stats::sample_sd(runs.sets[i].mu_hats) / root_r;
        if (std::abs(mean - runs.mu) > band)
            return "H=" + fmt(runs.hurst[i]) + ": |mean(mu_hat) - mu| = " +
                   fmt(std::abs(mean - runs.mu)) + " > " + fmt(band);
    }
    return "";
}

std::string criterion_sigma_bias_law() {
    const MomentRuns& runs = moment_runs();
    const double n = static_cast<double>(runs.n);
    const double target = (n - 1.0) / n * runs.sigma_sq;
    const double root_r = std::sqrt(static_cast<double>(runs.reps));
    for (std::size_t i = 0; i < runs.sets.size(); ++i) {
        const double mean = stats::mean(runs.sets[i].sigma_sq_hats);
        const double band = 4.0 * stats::sample_sd(runs.sets[i].sigma_sq_hats) / root_r;
        if (std::abs(mean - target) > band)
            return "H=" + fmt(runs.hurst[i]) + ": |mean(sigma_sq_hat) - (N-1)/N sigma_sq| = " +
                   fmt(std::abs(mean - target)) + " > " + fmt(band);
    }
    return "";
}

std::string criterion_sigma_variance_law() {
    const std::size_t n = 200, reps = 5000;
    const SamplingGrid grid(1.0, n);
    const double sigma_sq = 1.7;
    for (double hurst : {0.25, 0.75}) {
        const HurstExponent h(hurst);
        const FbmCovariance cov = factorize(grid, h);
        const ReplicationSet set = run_replications(cov, ModelParams(0.0, sigma_sq, h), reps,
                                                    8105, 0, Sampler::cholesky);
        const double dn = static_cast<double>(n);
        const double theory = 2.0 * (dn - 1.0) / (dn * dn) * sigma_sq * sigma_sq;
        const double ratio = stats::variance(set.sigma_sq_hats) / theory;
        if (ratio < 0.85 || ratio > 1.15)
            return "H=" + fmt(hurst) + ": Var(sigma_sq_hat)/theory = " + fmt(ratio) +
                   " outside [0.85, 1.15]";
    }
    return "";
}

std::string criterion_mu_pivot_normality() {
    const SamplingGrid grid(1.0, 100);
    const HurstExponent h(0.75);
    const FbmCovariance cov = factorize(grid, h);
    const ReplicationSet set =
        run_replications(cov, ModelParams(0.5, 2.0, h), 2000, 8106, 0, Sampler::cholesky);
    const double p = stats::ks_normality(set.z_mu);
    return p > 0.01 ? "" : "KS p = " + fmt(p) + " rejects N(0,1) at alpha = 0.01";
}

std::string criterion_chi_square_law() {
    const SamplingGrid grid(1.0, 50);
    const HurstExponent h(0.25);
    const FbmCovariance cov = factorize(grid, h);
    const ReplicationSet set =
        run_replications(cov, ModelParams(0.7880, 0.8116, h), 5000, 8107, 0, Sampler::cholesky);
    const double p = stats::ks_chi_square(set.chi_sq, grid.count() - 1);
    return p > 0.01 ? "" : "KS p = " + fmt(p) + " rejects chi-square(N-1) at alpha = 0.01";
}

std::string criterion_sigma_clt() {
    const std::size_t n = 500, reps = 5000;
    const SamplingGrid grid(1.0, n);
    const HurstExponent h(0.55);
    const FbmCovariance cov = factorize(grid, h);
    const ReplicationSet set =
        run_replications(cov, ModelParams(0.0, 1.0, h), reps, 8108, 0, Sampler::cholesky);
    const double p = stats::ks_normality(set.z_sigma);
    if (p > 0.01) return "";

    // Context for the failure: the exact law of z_sigma at this N is a
    // standardized chi-square whose own KS distance to N(0,1) is resolvable
    // by a test this powerful, so rejection here reflects the finite-N skew
    // of the exact law, not a sampling or estimation error (the exact-law
    // fit is criterion 7).
    const double dn = static_cast<double>(n);
    double exact_distance = 0.0;
    for (double x = -6.0; x <= 6.0; x += 1e-3) {
        const double f = stats::chi_square_cdf(dn + std::sqrt(2.0 * dn) * x, dn - 1.0);
        exact_distance = std::max(exact_distance, std::abs(f - stats::normal_cdf(x)));
    }
    const auto ks = stats::ks_test(set.z_sigma, [](double x) { return stats::normal_cdf(x); });
    const double critical = 1.628 / std::sqrt(static_cast<double>(reps));
    return "KS p = " + fmt(p) + " rejects N(0,1) at alpha = 0.01 (D_n = " + fmt(ks.statistic) +
           "; the exact chi-square law of z_sigma at N=500 lies at distance " +
           fmt(exact_distance) + " from N(0,1), vs critical value " + fmt(critical) +
           " at R=5000, so the stated test rejects a correct implementation for most seeds)";
}

std::string criterion_sampler_exactness() {
    const std::size_t n = 64, reps = 10000;
    const SamplingGrid grid(1.0, n);
    for (double hurst : {0.25, 0.75}) {
        const HurstExponent h(hurst);
        const ModelParams params(0.0, 1.0, h);
        const linalg::Matrix gamma = build_gamma(grid, h);
        const FbmCovariance cov = factorize(grid, h);
        const DaviesHartePlan plan(grid, h);

        linalg::Matrix emp_chol(n, n), emp_dh(n, n);
        std::vector<std::vector<double>> chol_paths(reps), dh_paths(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(reps); ++r) {
            chol_paths[r] =
                sample_cholesky(cov, params, {8109, static_cast<std::uint64_t>(r)}).values();
            dh_paths[r] =
                plan.sample(params, {8110, static_cast<std::uint64_t>(r)}).values();
        }
        for (std::size_t r = 0; r < reps; ++r)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    emp_chol(i, j) += chol_paths[r][i] * chol_paths[r][j];
                    emp_dh(i, j) += dh_paths[r][i] * dh_paths[r][j];
                }

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double se = std::sqrt(
                    (gamma(i, i) * gamma(j, j) + gamma(i, j) * gamma(i, j)) /
                    static_cast<double>(reps));
                const double ec = emp_chol(i, j) / static_cast<double>(reps);
                const double ed = emp_dh(i, j) / static_cast<double>(reps);
                if (std::abs(ec - gamma(i, j)) > 5.0 * se)
                    return "cholesky H=" + fmt(hurst) + " entry (" + std::to_string(i) + "," +
                           std::to_string(j) + ") off by " +
                           fmt(std::abs(ec - gamma(i, j)) / se) + " SE";
                if (std::abs(ed - gamma(i, j)) > 5.0 * se)
                    return "davies_harte H=" + fmt(hurst) + " entry (" + std::to_string(i) +
                           "," + std::to_string(j) + ") off by " +
                           fmt(std::abs(ed - gamma(i, j)) / se) + " SE";
                if (std::abs(ec - ed) > 5.0 * se * std::sqrt(2.0))
                    return "samplers disagree at H=" + fmt(hurst) + " entry (" +
                           std::to_string(i) + "," + std::to_string(j) + ")";
            }
    }
    return "";
}

std::string criterion_gerschgorin_exponent() {
    std::vector<double> sizes;
    for (std::size_t n = 16; n <= 1024; n *= 2) sizes.push_back(static_cast<double>(n));
    for (double hurst : {0.25, 0.75}) {
        const HurstExponent h(hurst);
        std::vector<double> bounds;
        for (double n : sizes) {
            const SamplingGrid grid(1.0, static_cast<std::size_t>(n));
            const double bound = gerschgorin_bound(grid, h);
            const double lmax =
                oracle::power_iteration_lambda_max(build_gamma(grid, h));
            if (bound < lmax * (1.0 - 1e-8))
                return "H=" + fmt(hurst) + " N=" + fmt(n) + ": bound " + fmt(bound) +
                       " below power-iteration lambda_max " + fmt(lmax);
            bounds.push_back(bound);
        }
        const double slope = stats::log_log_slope(sizes, bounds);
        if (std::abs(slope - (2.0 * hurst + 1.0)) > 0.1)
            return "H=" + fmt(hurst) + ": fitted exponent " + fmt(slope) + " not within 0.1 of " +
                   fmt(2.0 * hurst + 1.0);
    }
    return "";
}

std::string criterion_mu_variance_decay() {
    const std::size_t reps = 600;
    for (double hurst : {0.25, 0.75}) {
        const HurstExponent h(hurst);
        std::vector<double> sizes, variances;
        std::uint64_t offset = 0;
        for (std::size_t n = 32; n <= 1024; n *= 2) {
            const FbmCovariance cov = factorize(SamplingGrid(1.0, n), h);
            const ReplicationSet set = run_replications(cov, ModelParams(0.0, 1.0, h), reps,
                                                        8111, offset, Sampler::cholesky);
            offset += reps;
            sizes.push_back(static_cast<double>(n));
            variances.push_back(stats::variance(set.mu_hats));
        }
        const double slope = stats::log_log_slope(sizes, variances);
        if (slope > 2.0 * hurst - 2.0 + 0.15)
            return "H=" + fmt(hurst) + ": fitted exponent " + fmt(slope) + " exceeds " +
                   fmt(2.0 * hurst - 2.0 + 0.15);
    }
    return "";
}

std::string criterion_table_reproduction() {
    struct ParamSet {
        double mu, sigma_sq;
    };
    const ParamSet sets[] = {{0.7880, 0.8116}, {1.5880, 1.8116}, {3.5880, 5.8116}};
    for (const ParamSet& ps : sets) {
        ExperimentConfig config;
        config.mu = ps.mu;
        config.sigma_sq = ps.sigma_sq;
        config.hurst_list = {HurstExponent(0.25), HurstExponent(0.45), HurstExponent(0.55),
                             HurstExponent(0.75)};
        config.grid = SamplingGrid(1.0, 1000);
        config.replications = 1000;
        config.root_seed = 8112;
        config.sampler = Sampler::cholesky;

        const ExperimentSummary summary = run_experiment(config);
        const std::string text = emit_table(summary, TableFormat::text);
        if (text.find("H=0.25") == std::string::npos || text.find("H=0.75") == std::string::npos)
            return "text table lacks the H column groups";

        const double n = static_cast<double>(config.grid.count());
        const double root_r = std::sqrt(static_cast<double>(config.replications));
        for (const HurstCellSummary& cell : summary.cells) {
            const double mu_band = 3.0 * cell.sd_mu_hat / root_r;
            if (std::abs(cell.mean_mu_hat - ps.mu) > mu_band)
                return "mu=" + fmt(ps.mu) + " H=" + fmt(cell.hurst) + ": mean(mu_hat) " +
                       fmt(cell.mean_mu_hat) + " not within 3 SE (" + fmt(mu_band) + ") of mu";
            const double s2_target = (n - 1.0) / n * ps.sigma_sq;
            const double s2_band = 3.0 * cell.sd_sigma_sq_hat / root_r;
            if (std::abs(cell.mean_sigma_sq_hat - s2_target) > s2_band)
                return "sigma_sq=" + fmt(ps.sigma_sq) + " H=" + fmt(cell.hurst) +
                       ": mean(sigma_sq_hat) " + fmt(cell.mean_sigma_sq_hat) +
                       " not within 3 SE of (N-1)/N sigma_sq";
        }
    }
    return "";
}

std::string criterion_thread_determinism() {
    for (Sampler sampler : {Sampler::cholesky, Sampler::davies_harte}) {
        ExperimentConfig config;
        config.mu = 1.5880;
        config.sigma_sq = 1.8116;
        config.hurst_list = {HurstExponent(0.25), HurstExponent(0.75)};
        config.grid = SamplingGrid(1.0, 512);
        config.replications = 400;
        config.root_seed = 8113;
        config.sampler = sampler;

#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const std::string single = emit_table(run_experiment(config), TableFormat::json);
        omp_set_num_threads(saved > 1 ? saved : 2);
        const std::string parallel = emit_table(run_experiment(config), TableFormat::json);
        omp_set_num_threads(saved);
#else
        const std::string single = emit_table(run_experiment(config), TableFormat::json);
        const std::string parallel = emit_table(run_experiment(config), TableFormat::json);
#endif
        if (single != parallel)
            return to_string(sampler) + ": summaries differ across thread counts";
    }
    return "";
}

struct Criterion {
    int number;
    std::string title;
    std::function<std::string()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "hand-oracle estimator check (N=2, H=1/2)", criterion_hand_oracle},
        {2, "brute-force equivalence on random small instances", criterion_brute_force},
        {3, "unbiasedness of mu_hat (4 SE band)", criterion_mu_unbiased},
        {4, "bias law of sigma_sq_hat (4 SE band)", criterion_sigma_bias_law},
        {5, "variance law of sigma_sq_hat (within 15%)", criterion_sigma_variance_law},
        {6, "exact pivotal normality of mu_hat (KS)", criterion_mu_pivot_normality},
        {7, "chi-square(N-1) law of N sigma_sq_hat / sigma_sq (KS)", criterion_chi_square_law},
        {8, "CLT for sigma_sq_hat (KS at N=500)", criterion_sigma_clt},
        {9, "sampler exactness and cross-agreement (5 MC SE)", criterion_sampler_exactness},
        {10, "Gerschgorin growth exponent 2H+1 (within 0.1)", criterion_gerschgorin_exponent},
        {11, "variance decay exponent of mu_hat (<= 2H-2+0.15)", criterion_mu_variance_decay},
        {12, "qualitative table reproduction (3 SE bands)", criterion_table_reproduction},
        {13, "thread-count determinism of summaries", criterion_thread_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (detail.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.1fs)\n", c.number, c.title.c_str(), seconds);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.1fs)\n        %s\n", c.number,
                        c.title.c_str(), seconds, detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
