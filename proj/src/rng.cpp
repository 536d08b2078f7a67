#include "fbm/rng.hpp"

#include <cmath>
#include <numbers>

namespace fbm {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t derive_engine_seed(SimulationSeed seed) {
    std::uint64_t state = seed.root_seed;
    std::uint64_t mixed = splitmix64(state);
    state ^= seed.replication_index * 0xda942042e4dd58b5ULL;
    mixed ^= splitmix64(state);
    return mixed;
}

}  // namespace

NormalStream::NormalStream(SimulationSeed seed) : engine_(derive_engine_seed(seed)) {}

double NormalStream::next_unit_uniform() {
    // 53-bit mantissa, shifted into (0,1] so the log below is always finite
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit_uniform();
    const double u2 = next_unit_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

void NormalStream::fill(std::span<double> out) {
    for (double& v : out) v = next();
}

std::vector<double> normal_stream(SimulationSeed seed, std::size_t count) {
    std::vector<double> out(count);
    NormalStream stream(seed);
    stream.fill(out);
    return out;
}

}  // namespace fbm
