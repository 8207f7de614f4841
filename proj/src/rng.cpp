#include "uqdd/rng.hpp"

#include <cmath>
#include <numbers>

namespace uqdd {

static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
    // two mixing rounds decorrelate (seed, stream) pairs
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0xD1B54A32D192ED03ull + 0x9E3779B97F4A7C15ull);
    state_ = splitmix64(s);
}

std::uint64_t CounterRng::next_u64() { return splitmix64(state_); }

double CounterRng::next_uniform() {
    // 53-bit mantissa, shifted into (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(t);
    has_cached_ = true;
    return r * std::cos(t);
}

Eigen::VectorXd standard_normal_vector(std::uint64_t seed, std::uint64_t stream, int d) {
    CounterRng rng(seed, stream);
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i)
        z[i] = rng.next_normal();
    return z;
}

} // namespace uqdd
