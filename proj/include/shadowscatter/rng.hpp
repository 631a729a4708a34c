#pragma once

#include <array>
#include <cstdint>

namespace shadowscatter {

/// One block of the Philox4x64-10 bijection (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3", SC'11). Exposed separately so the
/// known-answer tests can drive it directly.
std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> counter,
                                           std::array<std::uint64_t, 2> key);

/// Counter-based generator: key = user seed, counter = (block, 0, stream, 0).
/// Distinct stream ids give independent sequences under the same seed, which
/// is what makes parallel Monte Carlo blocks reproducible regardless of
/// scheduling. Draw order within a stream is sequential; rejection samplers
/// consume a variable number of raws, so reproducibility is per
/// (seed, stream, draw sequence), not per index.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform strictly inside (0,1): (r>>11 + 0.5) * 2^-53.
    double uniform01();

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    double normal();

    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled by the
    /// boost: Gamma(a) = Gamma(a+1) * U^(1/a).
    double gamma(double shape);

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::uint64_t block_ = 0;
    std::uint64_t stream_ = 0;
    std::array<std::uint64_t, 4> buf_{};
    int buf_pos_ = 4;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace shadowscatter
