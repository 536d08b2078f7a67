#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fbm/covariance.hpp"
#include "fbm/estimators.hpp"
#include "fbm/types.hpp"

namespace fbm {

enum class Sampler { cholesky, davies_harte };

std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string& name);

/// One simulate-then-estimate study: a (mu, sigma_sq) pair swept over a list
/// of Hurst exponents on a fixed grid.
struct ExperimentConfig {
    double mu = 0.0;
    double sigma_sq = 1.0;
    std::vector<HurstExponent> hurst_list;
    SamplingGrid grid{1.0, 1000};
    std::size_t replications = 1000;
    std::uint64_t root_seed = 0;
    Sampler sampler = Sampler::cholesky;

    void validate() const;
};

/// Raw per-replication estimates for one (config, H) cell. Values are stored
/// by replication index, so aggregation order never depends on scheduling.
struct ReplicationSet {
    std::vector<double> mu_hats;
    std::vector<double> sigma_sq_hats;
    std::vector<double> z_mu;
    std::vector<double> z_sigma;
    std::vector<double> chi_sq;
    double t_gi_t = 0.0;
};

/// Run `replications` independent simulate-then-estimate rounds against a
/// shared factorization. Replication r uses the substream with index
/// seed_offset + r. Parallelized over replications; the result is identical
/// for any thread count.
ReplicationSet run_replications(const FbmCovariance& cov, const ModelParams& truth,
                                std::size_t replications, std::uint64_t root_seed,
                                std::uint64_t seed_offset, Sampler sampler);

/// Aggregated results for one Hurst cell.
struct HurstCellSummary {
    double hurst = 0.0;
    double mean_mu_hat = 0.0;
    double sd_mu_hat = 0.0;
    double mean_sigma_sq_hat = 0.0;
    double sd_sigma_sq_hat = 0.0;
    double ks_p_z_mu = 0.0;
    double ks_p_chi_sq = 0.0;
    double empirical_var_sigma_sq = 0.0;
    double theoretical_var_sigma_sq = 0.0;  ///< 2(N-1)/N^2 * sigma_sq^2

    friend bool operator==(const HurstCellSummary&, const HurstCellSummary&) = default;
};

struct ExperimentSummary {
    ExperimentConfig config;  ///< echoed verbatim for provenance
    std::vector<HurstCellSummary> cells;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
bool operator==(const ExperimentSummary& a, const ExperimentSummary& b);

ExperimentSummary run_experiment(const ExperimentConfig& config);

enum class TableFormat { text, csv, json };

TableFormat table_format_from_string(const std::string& name);

/// Render a summary. The text layout mirrors the familiar two-row
/// (Mean / Std.dev.) table with one (mu, sigma_sq) column pair per H;
/// csv and json carry every summary field.
std::string emit_table(const ExperimentSummary& summary, TableFormat format);

/// Parse a summary previously emitted as json.
ExperimentSummary parse_summary_json(const std::string& text);

/// Load an ExperimentConfig from a flat-key JSON file; see README for keys.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config_json(const std::string& text);

}  // namespace fbm
