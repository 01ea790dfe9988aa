#pragma once

#include <cmath>
#include <cstdint>

namespace qslie::sm {

// Philox4x32-10 counter-based generator (Salmon et al. constants). A draw is
// a pure function of (key, counter), so Monte Carlo workers can consume any
// path/substep in any order and still produce bit-identical streams.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    struct Block {
        std::uint32_t v[4];
    };

    static Block generate(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo) {
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
        std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
        std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
            std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return Block{{c0, c1, c2, c3}};
    }
};

// Two independent standard normals per counter via Box--Muller on the four
// 32-bit lanes of one Philox block.
struct GaussianPair {
    double z0, z1;
};

inline GaussianPair gaussian_pair(std::uint64_t seed, std::uint64_t ctr_hi, std::uint64_t ctr_lo) {
    auto b = Philox4x32::generate(seed, ctr_hi, ctr_lo);
    std::uint64_t u64a = (static_cast<std::uint64_t>(b.v[0]) << 32) | b.v[1];
    std::uint64_t u64b = (static_cast<std::uint64_t>(b.v[2]) << 32) | b.v[3];
    // u1 in (0, 1], u2 in [0, 1)
    double u1 = (static_cast<double>(u64a >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(u64b >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

// Normal increments for Brownian component pairs: one Philox block serves
// components (2j, 2j+1) of a given (path, substep).
class NormalSource {
  public:
    NormalSource(std::uint64_t seed, int d) : seed_(seed), pairs_((d + 1) / 2) {}

    // z for component i at (path, substep)
    double normal(std::uint64_t path, std::uint64_t substep, int component) const {
        const std::uint64_t pair = static_cast<std::uint64_t>(component / 2);
        auto g = gaussian_pair(seed_, path, substep * static_cast<std::uint64_t>(pairs_) + pair);
        return component % 2 == 0 ? g.z0 : g.z1;
    }

    // fill increments dw[substep*d + i] = sqrt(dt) * z for all components
    void fill_increments(std::uint64_t path, std::uint64_t n_substeps, int d, double dt,
                         double* out) const {
        const double s = std::sqrt(dt);
        for (std::uint64_t k = 0; k < n_substeps; ++k) {
            for (int p = 0; p < pairs_; ++p) {
                auto g = gaussian_pair(seed_, path,
                                       k * static_cast<std::uint64_t>(pairs_) +
                                           static_cast<std::uint64_t>(p));
                const int i0 = 2 * p, i1 = 2 * p + 1;
                out[k * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(i0)] = s * g.z0;
                if (i1 < d)
                    out[k * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(i1)] =
                        s * g.z1;
            }
        }
    }

  private:
    std::uint64_t seed_;
    int pairs_;
};

}  // namespace qslie::sm
