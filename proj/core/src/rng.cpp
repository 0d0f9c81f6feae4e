#include "spancent/rng.hpp"

namespace spancent {

Rng stream_rng(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(stream_id),
        static_cast<std::uint32_t>(stream_id >> 32),
        0x5eed5eedu,
    };
    return Rng(seq);
}

}  // namespace spancent
