#pragma once

#include <cstdint>
#include <random>

namespace spancent {

using Rng = std::mt19937_64;

/// Independent generator for stream `stream_id` under `master_seed`.
///
/// Seeding goes through std::seed_seq, whose mixing is fixed by the standard,
/// so a (seed, stream) pair yields the same sequence on every platform and
/// regardless of which worker thread consumes the stream.
Rng stream_rng(std::uint64_t master_seed, std::uint64_t stream_id);

/// Uniform index in [0, bound). bound > 0.
inline std::uint32_t uniform_index(Rng& rng, std::uint32_t bound) {
    // Lemire's multiply-shift with rejection; exact and portable.
    std::uint64_t x = rng() >> 32;
    std::uint64_t product = x * bound;
    auto low = static_cast<std::uint32_t>(product);
    if (low < bound) {
        const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
        while (low < threshold) {
            x = rng() >> 32;
            product = x * bound;
            low = static_cast<std::uint32_t>(product);
        }
    }
    return static_cast<std::uint32_t>(product >> 32);
}

}  // namespace spancent
