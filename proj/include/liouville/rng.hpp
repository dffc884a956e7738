#pragma once

#include <cstdint>

#include "liouville/geometry.hpp"

namespace liouville {

// splitmix64; used instead of <random> distributions so that sampled points
// are bit-identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform radius in [lo, hi], uniform angle
    Vec2 annulus_point(double lo, double hi) {
        double r = lo * std::exp(uniform() * std::log(hi / lo));
        double th = uniform() * 6.283185307179586476925287;
        return polar_point(r, th);
    }

  private:
    std::uint64_t state_;
};

}  // namespace liouville
