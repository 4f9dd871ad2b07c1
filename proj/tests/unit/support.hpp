#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpp/radon.hpp"

namespace testing {

// Fixed seeds everywhere: a failing property must fail the same way twice.
inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::vector<double> random_positive(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

inline std::vector<double> random_probability(std::size_t n, std::mt19937_64& rng) {
    auto v = random_positive(n, rng);
    double s = 0.0;
    for (double x : v) s += x;
    for (auto& x : v) x /= s;
    return v;
}

inline dpp::MassFunction random_mass(const dpp::DiscreteSpace& space, std::mt19937_64& rng) {
    return dpp::MassFunction(space, random_probability(space.size(), rng));
}

// Random composition of `total` units into `parts` nonnegative integers.
inline std::vector<long> random_composition(long total, std::size_t parts, std::mt19937_64& rng) {
    std::vector<long> v(parts, 0);
    std::uniform_int_distribution<std::size_t> pick(0, parts - 1);
    for (long u = 0; u < total; ++u) ++v[pick(rng)];
    return v;
}

} // namespace testing
