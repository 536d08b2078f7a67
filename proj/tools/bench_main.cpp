// Compares the serial reference kernels against the OpenMP variants and
// reports throughput plus an exactness column: the parallel kernels are
// required to reproduce the serial results bit for bit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "fbm/covariance.hpp"
#include "fbm/experiment.hpp"
#include "fbm/model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_once(const std::function<void()>& body) {
    const auto start = Clock::now();
    body();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double best_of(int runs, const std::function<void()>& body) {
    double best = 1e300;
    for (int i = 0; i < runs; ++i) best = std::min(best, time_once(body));
    return best;
}

void report(const std::string& label, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.4f s %10.4f s %7.2fx   %s\n", label.c_str(), serial_s, parallel_s,
                serial_s / parallel_s, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int max_n = 2048;
    if (argc > 1) max_n = std::max(128, std::atoi(argv[1]));

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    using fbm::linalg::Execution;
    const fbm::HurstExponent hurst(0.75);

    for (int n = 512; n <= max_n; n *= 2) {
        const fbm::SamplingGrid grid(1.0, static_cast<std::size_t>(n));
        fbm::linalg::Matrix gamma_serial, gamma_parallel;
        const double ts =
            best_of(3, [&] { gamma_serial = fbm::build_gamma(grid, hurst, Execution::serial); });
        const double tp =
            best_of(3, [&] { gamma_parallel = fbm::build_gamma(grid, hurst, Execution::parallel); });
        report("build_gamma N=" + std::to_string(n), ts, tp, gamma_serial == gamma_parallel);

        fbm::linalg::Matrix chol_serial, chol_parallel;
        const double cs = best_of(
            2, [&] { chol_serial = fbm::linalg::cholesky_lower(gamma_serial, Execution::serial); });
        const double cp = best_of(2, [&] {
            chol_parallel = fbm::linalg::cholesky_lower(gamma_serial, Execution::parallel);
        });
        report("cholesky N=" + std::to_string(n), cs, cp, chol_serial == chol_parallel);
    }

    // replicated experiment: one thread vs all threads, same summary expected
    fbm::ExperimentConfig config;
    config.mu = 0.788;
    config.sigma_sq = 0.8116;
    config.hurst_list = {fbm::HurstExponent(0.25), fbm::HurstExponent(0.75)};
    config.grid = fbm::SamplingGrid(1.0, 256);
    config.replications = 2000;
    config.root_seed = 1;

    std::string summary_serial, summary_parallel;
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    const double es = time_once([&] {
        summary_serial = fbm::emit_table(fbm::run_experiment(config), fbm::TableFormat::json);
    });
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
    const double ep = time_once([&] {
        summary_parallel = fbm::emit_table(fbm::run_experiment(config), fbm::TableFormat::json);
    });
    report("experiment N=256 R=2000", es, ep, summary_serial == summary_parallel);
    return 0;
}
