#ifndef TVEFF_RNG_HPP
#define TVEFF_RNG_HPP

#include <cstdint>
#include <string_view>

namespace tveff {

/// Deterministic generator (xoshiro256**) with self-contained uniform and
/// normal draws, so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform on [0, 1).
    double uniform();

    /// Uniform integer on {0, ..., n-1}, n >= 1.
    int uniform_int(int n);

    /// Standard normal via Box-Muller (cached pair).
    double normal();

private:
    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Seed for a named substream: mixes the base seed, a stream tag, and an
/// index so stages and replications can be re-run independently.
std::uint64_t substream_seed(std::uint64_t base_seed, std::string_view stream,
                             std::uint64_t index);

}  // namespace tveff

#endif  // TVEFF_RNG_HPP
