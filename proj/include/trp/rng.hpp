#pragma once

#include <cstdint>

#include "trp/normal.hpp"

namespace trp {

// Deterministic 64-bit generator (splitmix64). Chosen over the standard
// library engines so that identical seeds give identical streams on every
// platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform on (0,1), never returning an exact endpoint.
    double next_uniform() {
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    // Standard normal via the inverse-CDF transform.
    double next_normal() { return normal_quantile(next_uniform()); }

    double next_normal(double mean, double stddev) {
        return mean + stddev * next_normal();
    }

    // Independent substream; used to give parallel work items (paths, QMC
    // shifts) their own deterministic streams.
    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        Rng mix(seed ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull));
        return Rng(mix.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace trp
