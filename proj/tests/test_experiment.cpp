#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fbm/experiment.hpp"
#include "fbm/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fbm;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.mu = 0.7880;
    c.sigma_sq = 0.8116;
    c.hurst_list = {HurstExponent(0.25), HurstExponent(0.75)};
    c.grid = SamplingGrid(1.0, 64);
    c.replications = 500;
    c.root_seed = 12345;
    c.sampler = Sampler::cholesky;
    return c;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config validation") {
    ExperimentConfig c = small_config();
    c.replications = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.hurst_list.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(sampler_from_string("fft"), std::invalid_argument);
    CHECK(sampler_from_string("davies_harte") == Sampler::davies_harte);
    CHECK(to_string(Sampler::cholesky) == "cholesky");
}

TEST_CASE("degenerate scale is exact") {
    ExperimentConfig c = small_config();
    c.sigma_sq = 0.0;
    c.replications = 50;
    const ExperimentSummary s = run_experiment(c);
    for (const auto& cell : s.cells) {
        CHECK(cell.mean_mu_hat == doctest::Approx(c.mu).epsilon(1e-12));
        CHECK(cell.sd_mu_hat == doctest::Approx(0.0));
        CHECK(cell.mean_sigma_sq_hat == doctest::Approx(0.0));
        CHECK(cell.theoretical_var_sigma_sq == 0.0);
        CHECK(cell.ks_p_z_mu == 1.0);
        CHECK(cell.ks_p_chi_sq == 1.0);
    }
}

TEST_CASE("summary moments obey the exact laws") {
    const ExperimentConfig c = small_config();
    const ExperimentSummary s = run_experiment(c);
    const double n = static_cast<double>(c.grid.count());
    const double root_r = std::sqrt(static_cast<double>(c.replications));
    for (const auto& cell : s.cells) {
        CHECK(std::abs(cell.mean_mu_hat - c.mu) <= 4.0 * cell.sd_mu_hat / root_r);
        CHECK(std::abs(cell.mean_sigma_sq_hat - (n - 1.0) / n * c.sigma_sq) <=
              4.0 * cell.sd_sigma_sq_hat / root_r);
        CHECK(cell.theoretical_var_sigma_sq ==
              2.0 * (n - 1.0) / (n * n) * c.sigma_sq * c.sigma_sq);
        CHECK(cell.ks_p_z_mu >= 0.0);
        CHECK(cell.ks_p_z_mu <= 1.0);
    }
}

TEST_CASE("reruns and thread counts do not change the summary") {
    const ExperimentConfig c = small_config();
    const std::string first = emit_table(run_experiment(c), TableFormat::json);
    const std::string second = emit_table(run_experiment(c), TableFormat::json);
    CHECK(first == second);

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string single = emit_table(run_experiment(c), TableFormat::json);
    omp_set_num_threads(saved);
    CHECK(single == first);
#endif
}

TEST_CASE("replication sets differ across seed offsets") {
    const SamplingGrid grid(1.0, 32);
    const HurstExponent hurst(0.6);
    const FbmCovariance cov = factorize(grid, hurst);
    const ModelParams truth(0.0, 1.0, hurst);
    const ReplicationSet a = run_replications(cov, truth, 50, 7, 0, Sampler::cholesky);
    const ReplicationSet b = run_replications(cov, truth, 50, 7, 50, Sampler::cholesky);
    CHECK(a.mu_hats != b.mu_hats);
    CHECK(a.t_gi_t == b.t_gi_t);
}

TEST_CASE("text table mirrors the column-pair layout") {
    const ExperimentSummary s = run_experiment(small_config());
    const std::string text = emit_table(s, TableFormat::text);
    CHECK(text.find("The means and standard deviations of estimators") != std::string::npos);
    CHECK(text.find("H=0.25") != std::string::npos);
    CHECK(text.find("H=0.75") != std::string::npos);
    CHECK(text.find("Mean") != std::string::npos);
    CHECK(text.find("Std.dev.") != std::string::npos);
    CHECK(text.find("root_seed=12345") != std::string::npos);
    CHECK(text.find("N=64") != std::string::npos);
}

TEST_CASE("csv carries all summary fields") {
    const ExperimentSummary s = run_experiment(small_config());
    const std::string csv = emit_table(s, TableFormat::csv);
    CHECK(csv.find("hurst,mean_mu_hat,sd_mu_hat,mean_sigma_sq_hat,sd_sigma_sq_hat,"
                   "ks_p_z_mu,ks_p_chi_sq,empirical_var_sigma_sq,theoretical_var_sigma_sq") !=
          std::string::npos);
    std::size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 2 + s.cells.size());  // provenance comment + header + cells
}

TEST_CASE("json summary round trips") {
    const ExperimentSummary s = run_experiment(small_config());
    const std::string text = emit_table(s, TableFormat::json);
    const ExperimentSummary back = parse_summary_json(text);
    CHECK(back == s);
    CHECK(emit_table(back, TableFormat::json) == text);
}

TEST_CASE("empty summary refuses to emit") {
    ExperimentSummary s;
    s.config = small_config();
    CHECK_THROWS_AS(emit_table(s, TableFormat::text), std::invalid_argument);
}

TEST_CASE("config files parse with flat keys") {
    const std::string text = R"({
        "mu": 0.788, "sigma_sq": 0.8116,
        "hurst_list": [0.25, 0.45, 0.55, 0.75],
        "step_h": 1.0, "count_n": 100,
        "replications": 10, "root_seed": 99, "sampler": "davies_harte"
    })";
    const ExperimentConfig c = parse_config_json(text);
    CHECK(c.hurst_list.size() == 4);
    CHECK(c.grid.count() == 100);
    CHECK(c.sampler == Sampler::davies_harte);

    const auto file = std::filesystem::temp_directory_path() / "fbm_test_config.json";
    std::ofstream(file) << text;
    const ExperimentConfig loaded = load_config(file);
    CHECK(loaded == c);
    std::filesystem::remove(file);

    CHECK_THROWS_AS(parse_config_json("{ not json"), nlohmann::json::exception);
    CHECK_THROWS_AS(parse_config_json(R"({"mu": 0})"), nlohmann::json::exception);
    CHECK_THROWS_AS(load_config("/nonexistent/fbm.json"), std::runtime_error);

    // replications below 2 violates the config contract
    const std::string bad = R"({
        "mu": 0, "sigma_sq": 1, "hurst_list": [0.5], "step_h": 1.0,
        "count_n": 10, "replications": 1, "root_seed": 0, "sampler": "cholesky"
    })";
    CHECK_THROWS_AS(parse_config_json(bad), std::invalid_argument);
}

}  // TEST_SUITE
