// Command-line front end: exact synthesis, estimation, Monte Carlo
// experiments and built-in validation for the drift-fBm model.
//
// Exit codes: 0 success, 1 validation failure, 2 invalid parameters or
// config, 3 output I/O failure, 4 input parse failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fbm/csv.hpp"
#include "fbm/estimators.hpp"
#include "fbm/experiment.hpp"
#include "fbm/synthesis.hpp"
#include "fbm/validation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitBadParams = 2;
constexpr int kExitIoError = 3;
constexpr int kExitParseError = 4;

struct SimulateOptions {
    double mu = 0.0;
    double sigma_sq = 1.0;
    double hurst = 0.5;
    double step_h = 1.0;
    std::size_t count_n = 1000;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::string sampler = "cholesky";
    std::string out_path;
};

int run_simulate(const SimulateOptions& opt) {
    fbm::ObservationPath path = [&] {
        const fbm::ModelParams params(opt.mu, opt.sigma_sq, fbm::HurstExponent(opt.hurst));
        const fbm::SamplingGrid grid(opt.step_h, opt.count_n);
        const fbm::SimulationSeed seed{opt.seed, opt.replication};
        return fbm::sampler_from_string(opt.sampler) == fbm::Sampler::cholesky
                   ? fbm::sample_cholesky(params, grid, seed)
                   : fbm::sample_davies_harte(params, grid, seed);
    }();

    if (opt.out_path.empty() || opt.out_path == "-") {
        fbm::write_path_csv(std::cout, path);
        return std::cout ? kExitOk : kExitIoError;
    }
    try {
        fbm::write_path_csv(std::filesystem::path(opt.out_path), path);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitOk;
}

struct EstimateOptions {
    std::string in_path;
    double hurst = 0.5;
    double step_h = 1.0;
};

int run_estimate(const EstimateOptions& opt) {
    fbm::ObservationPath path = [&] {
        if (opt.in_path == "-") return fbm::read_path_csv(std::cin, opt.step_h);
        return fbm::read_path_csv(std::filesystem::path(opt.in_path), opt.step_h);
    }();
    const fbm::EstimateReport report = fbm::estimate(path, fbm::HurstExponent(opt.hurst));
    std::cout << fbm::to_json_string(report);
    return kExitOk;
}

int run_experiment_cmd(const std::string& config_path, const std::string& format,
                       const std::string& out_path) {
    const fbm::TableFormat table_format = fbm::table_format_from_string(format);
    const fbm::ExperimentConfig config =
        fbm::load_config(std::filesystem::path(config_path));
    const std::string document = fbm::emit_table(fbm::run_experiment(config), table_format);
    if (out_path.empty() || out_path == "-") {
        std::cout << document;
        return std::cout ? kExitOk : kExitIoError;
    }
    std::ofstream out(out_path);
    out << document;
    out.flush();
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIoError;
    }
    return kExitOk;
}

int run_validate(const std::string& level) {
    const auto results = fbm::run_validation(fbm::validation_level_from_string(level));
    bool all_passed = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        all_passed = all_passed && r.passed;
    }
    std::cout << (all_passed ? "all checks passed\n" : "some checks FAILED\n");
    return all_passed ? kExitOk : kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulation and maximum-likelihood estimation for the "
                 "drift fractional Brownian motion Y_t = mu*t + sigma*B^H_t"};
    app.require_subcommand(1);
    // long names only; the default -h short flag would clash with --h
    app.set_help_flag("--help", "print this help message and exit");
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    int threads = 0;
    app.add_option("--threads", threads,
                   "cap the number of worker threads (0 = library default); "
                   "results do not depend on this value");

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "sample one path and write it as CSV");
    simulate->fallthrough();
    simulate->set_help_flag("--help", "print this help message and exit");
    simulate->add_option("--mu", sim.mu, "drift per unit time")->capture_default_str();
    simulate->add_option("--sigma-sq", sim.sigma_sq, "scale squared (>= 0)")
        ->capture_default_str();
    simulate->add_option("--hurst", sim.hurst, "Hurst exponent in (0,1)")->capture_default_str();
    simulate->add_option("--h", sim.step_h, "grid step (> 0)")->capture_default_str();
    simulate->add_option("--n", sim.count_n, "number of observations (>= 2)")
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "root seed")->capture_default_str();
    simulate->add_option("--replication", sim.replication, "substream index under the root seed")
        ->capture_default_str();
    simulate->add_option("--sampler", sim.sampler, "cholesky | davies_harte")
        ->capture_default_str();
    simulate->add_option("--out", sim.out_path, "output file ('-' or empty = stdout)");

    EstimateOptions est;
    CLI::App* estimate = app.add_subcommand(
        "estimate", "read a path CSV and print the ML estimates as JSON");
    estimate->fallthrough();
    estimate->set_help_flag("--help", "print this help message and exit");
    estimate->add_option("--in", est.in_path, "input CSV ('-' = stdin)")->required();
    estimate->add_option("--hurst", est.hurst, "Hurst exponent in (0,1)")->capture_default_str();
    estimate->add_option("--h", est.step_h, "grid step the values were observed on")
        ->capture_default_str();

    std::string config_path, format = "text", experiment_out;
    CLI::App* experiment = app.add_subcommand(
        "experiment", "run a replicated simulate-then-estimate study from a JSON config");
    experiment->fallthrough();
    experiment->add_option("--config", config_path, "config file (see README for keys)")
        ->required();
    experiment->add_option("--format", format, "text | csv | json")->capture_default_str();
    experiment->add_option("--out", experiment_out, "output file ('-' or empty = stdout)");

    std::string level = "quick";
    CLI::App* validate = app.add_subcommand(
        "validate", "run the built-in oracle, moment-law and distribution checks");
    validate->fallthrough();
    validate->add_option("--level", level, "quick | full")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return kExitBadParams;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (estimate->parsed()) return run_estimate(est);
        if (experiment->parsed())
            return run_experiment_cmd(config_path, format, experiment_out);
        if (validate->parsed()) return run_validate(level);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const fbm::FactorizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const fbm::NegativeSpectrumError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    return kExitBadParams;
}
