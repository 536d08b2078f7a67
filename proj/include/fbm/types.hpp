#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbm {

/// Thrown when a symmetric factorization hits a non-positive pivot.
class FactorizationError : public std::runtime_error {
public:
    explicit FactorizationError(std::size_t pivot_index)
        : std::runtime_error("Cholesky factorization failed: non-positive pivot at index " +
                             std::to_string(pivot_index)),
          pivot_index_(pivot_index) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// Thrown when a circulant embedding produces a negative spectral value.
/// The sampler refuses to clamp: a negative eigenvalue means the embedding
/// is not a valid covariance and the caller must fall back to another method.
class NegativeSpectrumError : public std::runtime_error {
public:
    NegativeSpectrumError(std::size_t index, double value)
        : std::runtime_error("circulant embedding has negative eigenvalue " +
                             std::to_string(value) + " at index " + std::to_string(index)),
          index_(index), value_(value) {}

    std::size_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

/// Memory parameter of fractional Brownian motion, restricted to the open
/// interval (0,1). H = 0.5 (ordinary Brownian motion) is allowed and handy
/// as a closed-form test point.
class HurstExponent {
public:
    explicit HurstExponent(double value) : value_(value) {
        if (!(value > 0.0) || !(value < 1.0))
            throw std::domain_error("Hurst exponent must lie in the open interval (0,1), got " +
                                    std::to_string(value));
    }

    double value() const noexcept { return value_; }

    friend bool operator==(HurstExponent a, HurstExponent b) noexcept {
        return a.value_ == b.value_;
    }

private:
    double value_;
};

/// Uniform observation grid t_k = k*h for k = 1..N. Requires N >= 2: with a
/// single observation the scale estimator loses its only degree of freedom.
class SamplingGrid {
public:
    SamplingGrid(double step_h, std::size_t count_n) : step_(step_h), count_(count_n) {
        if (!(step_h > 0.0) || !std::isfinite(step_h))
            throw std::invalid_argument("grid step must be positive and finite");
        if (count_n < 2)
            throw std::invalid_argument("grid needs at least 2 observations");
    }

    double step() const noexcept { return step_; }
    std::size_t count() const noexcept { return count_; }

    /// Observation time of the k-th sample, k in 1..count().
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * step_; }

    std::vector<double> times() const {
        std::vector<double> out(count_);
        for (std::size_t k = 0; k < count_; ++k) out[k] = time(k + 1);
        return out;
    }

    friend bool operator==(const SamplingGrid& a, const SamplingGrid& b) noexcept {
        return a.step_ == b.step_ && a.count_ == b.count_;
    }

private:
    double step_;
    std::size_t count_;
};

/// Parameters of the drift model Y_t = mu*t + sigma*B^H_t.
struct ModelParams {
    ModelParams(double mu_, double sigma_sq_, HurstExponent hurst_)
        : mu(mu_), sigma_sq(sigma_sq_), hurst(hurst_) {
        if (!(sigma_sq >= 0.0) || !std::isfinite(sigma_sq))
            throw std::invalid_argument("sigma_sq must be finite and >= 0");
        if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
    }

    double mu;
    double sigma_sq;
    HurstExponent hurst;

    double sigma() const noexcept { return std::sqrt(sigma_sq); }
};

/// One observed trajectory on a uniform grid.
class ObservationPath {
public:
    ObservationPath(SamplingGrid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.count())
            throw std::invalid_argument("path length " + std::to_string(values_.size()) +
                                        " does not match grid count " +
                                        std::to_string(grid_.count()));
        for (double v : values_)
            if (!std::isfinite(v)) throw std::invalid_argument("path contains non-finite value");
    }

    const SamplingGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    SamplingGrid grid_;
    std::vector<double> values_;
};

/// Identifies one reproducible random stream. Distinct replication indices
/// under the same root seed yield independent substreams, so replications
/// can run in parallel without sharing generator state.
struct SimulationSeed {
    std::uint64_t root_seed = 0;
    std::uint64_t replication_index = 0;
};

}  // namespace fbm
