#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qslie/sm/rng.hpp"

namespace qslie::sm {

// A sampled Brownian driver on a uniform grid. Quadratic-variation
// increments are exact: d[W^i, W^i] = dt. Coarsening by summing increments
// keeps dyadic levels on a common path.
struct DriverPath {
    int d = 1;
    double T = 1.0;
    std::uint64_t n_steps = 1;
    std::vector<double> increments;  // [step * d + component]

    double dt() const { return T / static_cast<double>(n_steps); }
    double dw(std::uint64_t step, int component) const {
        return increments[step * static_cast<std::uint64_t>(d) +
                          static_cast<std::uint64_t>(component)];
    }

    // sum of all increments of one component
    double endpoint(int component) const {
        double s = 0;
        for (std::uint64_t k = 0; k < n_steps; ++k) s += dw(k, component);
        return s;
    }

    DriverPath coarsened(std::uint64_t factor) const {
        if (factor == 0 || n_steps % factor != 0)
            throw std::invalid_argument("coarsening factor must divide n_steps");
        DriverPath out{d, T, n_steps / factor, {}};
        out.increments.assign(out.n_steps * static_cast<std::uint64_t>(d), 0.0);
        for (std::uint64_t k = 0; k < n_steps; ++k)
            for (int i = 0; i < d; ++i)
                out.increments[(k / factor) * static_cast<std::uint64_t>(d) +
                               static_cast<std::uint64_t>(i)] += dw(k, i);
        return out;
    }
};

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Deterministic in (seed, path_index) regardless of thread layout.
inline DriverPath simulate_brownian(int d, double T, std::uint64_t n_steps, std::uint64_t seed,
                                    std::uint64_t path_index) {
    if (d < 1) throw std::invalid_argument("simulate_brownian: d must be >= 1");
    if (!(T > 0)) throw std::invalid_argument("simulate_brownian: T must be positive");
    if (!is_power_of_two(n_steps))
        throw std::invalid_argument("simulate_brownian: n_steps must be a power of two");
    DriverPath p{d, T, n_steps, {}};
    p.increments.resize(n_steps * static_cast<std::uint64_t>(d));
    NormalSource src(seed, d);
    src.fill_increments(path_index, n_steps, d, p.dt(), p.increments.data());
    return p;
}

}  // namespace qslie::sm
