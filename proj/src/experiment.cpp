#include "fbm/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fbm/stats.hpp"
#include "fbm/synthesis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbm {

using nlohmann::json;

std::string to_string(Sampler s) {
    return s == Sampler::cholesky ? "cholesky" : "davies_harte";
}

Sampler sampler_from_string(const std::string& name) {
    if (name == "cholesky") return Sampler::cholesky;
    if (name == "davies_harte") return Sampler::davies_harte;
    throw std::invalid_argument("unknown sampler '" + name +
                                "' (expected cholesky or davies_harte)");
}

void ExperimentConfig::validate() const {
    if (replications < 2) throw std::invalid_argument("config: replications must be >= 2");
    if (hurst_list.empty()) throw std::invalid_argument("config: hurst_list must be non-empty");
    if (!(sigma_sq >= 0.0) || !std::isfinite(sigma_sq))
        throw std::invalid_argument("config: sigma_sq must be finite and >= 0");
    if (!std::isfinite(mu)) throw std::invalid_argument("config: mu must be finite");
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.mu == b.mu && a.sigma_sq == b.sigma_sq && a.hurst_list == b.hurst_list &&
           a.grid == b.grid && a.replications == b.replications && a.root_seed == b.root_seed &&
           a.sampler == b.sampler;
}

bool operator==(const ExperimentSummary& a, const ExperimentSummary& b) {
    return a.config == b.config && a.cells == b.cells;
}

ReplicationSet run_replications(const FbmCovariance& cov, const ModelParams& truth,
                                std::size_t replications, std::uint64_t root_seed,
                                std::uint64_t seed_offset, Sampler sampler) {
    const bool have_scale = truth.sigma_sq > 0.0;

    ReplicationSet out;
    out.t_gi_t = time_quadratic_form(cov);
    out.mu_hats.resize(replications);
    out.sigma_sq_hats.resize(replications);
    if (have_scale) {
        out.z_mu.resize(replications);
        out.z_sigma.resize(replications);
        out.chi_sq.resize(replications);
    }

    std::unique_ptr<DaviesHartePlan> plan;
    if (sampler == Sampler::davies_harte)
        plan = std::make_unique<DaviesHartePlan>(cov.grid(), cov.hurst());

    std::vector<std::string> errors(replications);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(replications); ++r) {
        try {
            const SimulationSeed seed{root_seed, seed_offset + static_cast<std::uint64_t>(r)};
            const ObservationPath path = plan ? plan->sample(truth, seed)
                                              : sample_cholesky(cov, truth, seed);
            const EstimateReport report =
                have_scale ? estimate(cov, path, truth.sigma_sq) : estimate(cov, path);
            out.mu_hats[r] = report.mu_hat;
            out.sigma_sq_hats[r] = report.sigma_sq_hat;
            if (have_scale) {
                const StandardizedStats z = standardized_stats(report, truth, out.t_gi_t);
                out.z_mu[r] = z.z_mu;
                out.z_sigma[r] = z.z_sigma;
                out.chi_sq[r] = z.chi_sq_stat;
            }
        } catch (const std::exception& e) {
            errors[r] = e.what();
        }
    }
    for (std::size_t r = 0; r < replications; ++r)
        if (!errors[r].empty())
            throw std::runtime_error("replication " + std::to_string(r) +
                                     " failed: " + errors[r]);
    return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
    config.validate();

    ExperimentSummary summary;
    summary.config = config;
    summary.cells.reserve(config.hurst_list.size());

    const double n = static_cast<double>(config.grid.count());
    for (std::size_t cell = 0; cell < config.hurst_list.size(); ++cell) {
        const HurstExponent hurst = config.hurst_list[cell];
        const ModelParams truth(config.mu, config.sigma_sq, hurst);
        const FbmCovariance cov = factorize(config.grid, hurst);

        // distinct substream block per cell so cells stay independent
        const std::uint64_t offset = static_cast<std::uint64_t>(cell) * config.replications;
        const ReplicationSet reps = run_replications(cov, truth, config.replications,
                                                     config.root_seed, offset, config.sampler);

        HurstCellSummary cs;
        cs.hurst = hurst.value();
        cs.mean_mu_hat = stats::mean(reps.mu_hats);
        cs.sd_mu_hat = stats::sample_sd(reps.mu_hats);
        cs.mean_sigma_sq_hat = stats::mean(reps.sigma_sq_hats);
        cs.sd_sigma_sq_hat = stats::sample_sd(reps.sigma_sq_hats);
        cs.empirical_var_sigma_sq = stats::variance(reps.sigma_sq_hats);
        cs.theoretical_var_sigma_sq =
            2.0 * (n - 1.0) / (n * n) * config.sigma_sq * config.sigma_sq;
        if (config.sigma_sq > 0.0 && config.replications >= 100) {
            cs.ks_p_z_mu = stats::ks_normality(reps.z_mu);
            cs.ks_p_chi_sq = stats::ks_chi_square(reps.chi_sq, config.grid.count() - 1);
        } else {
            // untestable cell (degenerate scale, or too few replications for
            // the asymptotic KS): vacuous non-rejection
            cs.ks_p_z_mu = 1.0;
            cs.ks_p_chi_sq = 1.0;
        }
        summary.cells.push_back(cs);
    }
    return summary;
}

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string provenance_line(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "sampler=" << to_string(c.sampler) << " h=" << format_double("%g", c.grid.step())
       << " N=" << c.grid.count() << " replications=" << c.replications
       << " root_seed=" << c.root_seed;
    return os.str();
}

std::string emit_text(const ExperimentSummary& s) {
    constexpr int kColWidth = 12;
    std::ostringstream os;
    os << "The means and standard deviations of estimators (mu="
       << format_double("%.6g", s.config.mu)
       << ", sigma_sq=" << format_double("%.6g", s.config.sigma_sq) << ")\n"
       << provenance_line(s.config) << "\n\n";

    auto pad = [&](const std::string& text, int width) {
        std::string out = text;
        if (static_cast<int>(out.size()) < width)
            out.append(static_cast<std::size_t>(width) - out.size(), ' ');
        return out;
    };

    os << pad("", kColWidth);
    for (const auto& c : s.cells)
        os << pad("H=" + format_double("%g", c.hurst), 2 * kColWidth);
    os << "\n" << pad("", kColWidth);
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        os << pad("mu", kColWidth) << pad("sigma_sq", kColWidth);
    os << "\n" << pad("Mean", kColWidth);
    for (const auto& c : s.cells)
        os << pad(format_double("%.4f", c.mean_mu_hat), kColWidth)
           << pad(format_double("%.4f", c.mean_sigma_sq_hat), kColWidth);
    os << "\n" << pad("Std.dev.", kColWidth);
    for (const auto& c : s.cells)
        os << pad(format_double("%.4f", c.sd_mu_hat), kColWidth)
           << pad(format_double("%.4f", c.sd_sigma_sq_hat), kColWidth);
    os << "\n";
    return os.str();
}

std::string emit_csv(const ExperimentSummary& s) {
    std::ostringstream os;
    os << "# " << provenance_line(s.config) << " mu=" << format_double("%.17g", s.config.mu)
       << " sigma_sq=" << format_double("%.17g", s.config.sigma_sq) << "\n";
    os << "hurst,mean_mu_hat,sd_mu_hat,mean_sigma_sq_hat,sd_sigma_sq_hat,"
          "ks_p_z_mu,ks_p_chi_sq,empirical_var_sigma_sq,theoretical_var_sigma_sq\n";
    for (const auto& c : s.cells) {
        os << format_double("%.17g", c.hurst) << ',' << format_double("%.17g", c.mean_mu_hat)
           << ',' << format_double("%.17g", c.sd_mu_hat) << ','
           << format_double("%.17g", c.mean_sigma_sq_hat) << ','
           << format_double("%.17g", c.sd_sigma_sq_hat) << ','
           << format_double("%.17g", c.ks_p_z_mu) << ',' << format_double("%.17g", c.ks_p_chi_sq)
           << ',' << format_double("%.17g", c.empirical_var_sigma_sq) << ','
           << format_double("%.17g", c.theoretical_var_sigma_sq) << "\n";
    }
    return os.str();
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["mu"] = c.mu;
    j["sigma_sq"] = c.sigma_sq;
    json hs = json::array();
    for (const HurstExponent& h : c.hurst_list) hs.push_back(h.value());
    j["hurst_list"] = hs;
    j["step_h"] = c.grid.step();
    j["count_n"] = c.grid.count();
    j["replications"] = c.replications;
    j["root_seed"] = c.root_seed;
    j["sampler"] = to_string(c.sampler);
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.mu = j.at("mu").get<double>();
    c.sigma_sq = j.at("sigma_sq").get<double>();
    for (const auto& h : j.at("hurst_list")) c.hurst_list.emplace_back(h.get<double>());
    c.grid = SamplingGrid(j.at("step_h").get<double>(), j.at("count_n").get<std::size_t>());
    c.replications = j.at("replications").get<std::size_t>();
    c.root_seed = j.at("root_seed").get<std::uint64_t>();
    c.sampler = sampler_from_string(j.at("sampler").get<std::string>());
    c.validate();
    return c;
}

json cell_to_json(const HurstCellSummary& c) {
    return json{{"hurst", c.hurst},
                {"mean_mu_hat", c.mean_mu_hat},
                {"sd_mu_hat", c.sd_mu_hat},
                {"mean_sigma_sq_hat", c.mean_sigma_sq_hat},
                {"sd_sigma_sq_hat", c.sd_sigma_sq_hat},
                {"ks_p_z_mu", c.ks_p_z_mu},
                {"ks_p_chi_sq", c.ks_p_chi_sq},
                {"empirical_var_sigma_sq", c.empirical_var_sigma_sq},
                {"theoretical_var_sigma_sq", c.theoretical_var_sigma_sq}};
}

HurstCellSummary cell_from_json(const json& j) {
    HurstCellSummary c;
    c.hurst = j.at("hurst").get<double>();
    c.mean_mu_hat = j.at("mean_mu_hat").get<double>();
    c.sd_mu_hat = j.at("sd_mu_hat").get<double>();
    c.mean_sigma_sq_hat = j.at("mean_sigma_sq_hat").get<double>();
    c.sd_sigma_sq_hat = j.at("sd_sigma_sq_hat").get<double>();
    c.ks_p_z_mu = j.at("ks_p_z_mu").get<double>();
    c.ks_p_chi_sq = j.at("ks_p_chi_sq").get<double>();
    c.empirical_var_sigma_sq = j.at("empirical_var_sigma_sq").get<double>();
    c.theoretical_var_sigma_sq = j.at("theoretical_var_sigma_sq").get<double>();
    return c;
}

}  // namespace

TableFormat table_format_from_string(const std::string& name) {
    if (name == "text") return TableFormat::text;
    if (name == "csv") return TableFormat::csv;
    if (name == "json") return TableFormat::json;
    throw std::invalid_argument("unknown table format '" + name +
                                "' (expected text, csv or json)");
}

std::string emit_table(const ExperimentSummary& summary, TableFormat format) {
    if (summary.cells.empty()) throw std::invalid_argument("emit_table: nothing to emit");
    switch (format) {
        case TableFormat::text:
            return emit_text(summary);
        case TableFormat::csv:
            return emit_csv(summary);
        case TableFormat::json: {
            json j;
            j["config"] = config_to_json(summary.config);
            j["cells"] = json::array();
            for (const auto& c : summary.cells) j["cells"].push_back(cell_to_json(c));
            return j.dump(2) + "\n";
        }
    }
    throw std::logic_error("emit_table: unreachable");
}

ExperimentSummary parse_summary_json(const std::string& text) {
    const json j = json::parse(text);
    ExperimentSummary s;
    s.config = config_from_json(j.at("config"));
    for (const auto& c : j.at("cells")) s.cells.push_back(cell_from_json(c));
    return s;
}

ExperimentConfig parse_config_json(const std::string& text) {
    return config_from_json(json::parse(text));
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_json(buffer.str());
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file " + path.string() + ": " + e.what());
    }
}

}  // namespace fbm
