#pragma once

#include <cstdint>

namespace gencond {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so parallel trials can own independent
// streams and replay identically regardless of scheduling.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64();

    // uniform on (0, 1]
    double uniform();

    // standard normal via Box-Muller; second value of each pair is cached
    double gaussian();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace gencond
