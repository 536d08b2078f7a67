#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fbm/types.hpp"

namespace fbm {

/// SplitMix64 step; used to turn (root_seed, replication_index) into
/// well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Reproducible stream of i.i.d. standard normal deviates.
///
/// The engine is mt19937_64 (output fully pinned by the standard) and the
/// normal transform is an explicit Box-Muller, so the produced sequence is a
/// pure function of the seed: it does not depend on the standard library's
/// unspecified std::normal_distribution algorithm, on thread count, or on
/// the order replications are scheduled.
class NormalStream {
public:
    explicit NormalStream(SimulationSeed seed);

    double next();
    void fill(std::span<double> out);

private:
    double next_unit_uniform();  // (0,1]

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Convenience: `count` deviates from the stream identified by `seed`.
std::vector<double> normal_stream(SimulationSeed seed, std::size_t count);

}  // namespace fbm
