#pragma once

#include <cstdint>

namespace plind {

/// Identifies one reproducible uniform stream. The same (seed, stream_id)
/// pair reproduces the identical sequence on any run and any thread
/// schedule; distinct stream_ids never overlap because each stream owns a
/// disjoint slice of the counter space.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    /// Stream offset by `index`, for per-task substreams.
    [[nodiscard]] constexpr RngStream derived(std::uint64_t index) const noexcept {
        return {seed, stream_id + index};
    }
};

/// Counter-based generator (Philox-2x64, 10 rounds). The key is the seed,
/// the high counter word is the stream id, the low word counts blocks.
/// State is tiny and streams can be created in bulk without warmup.
class CounterRng {
public:
    explicit constexpr CounterRng(RngStream s) noexcept
        : key_(s.seed), ctr_hi_(s.stream_id) {}

    std::uint64_t next_u64() noexcept;

    /// Uniform draw strictly inside (0,1); never returns 0 or 1, so
    /// log(u) and quantile(u) are always well-defined.
    double next_uniform01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_hi_;
    std::uint64_t ctr_lo_ = 0;
    std::uint64_t buffered_ = 0;
    bool has_buffered_ = false;
};

} // namespace plind
