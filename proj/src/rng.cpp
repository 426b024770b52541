#include "plind/rng.hpp"

namespace plind {
namespace {

constexpr std::uint64_t kMult = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kBump = 0x9E3779B97F4A7C15ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) noexcept {
    const auto prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    lo = static_cast<std::uint64_t>(prod);
}

} // namespace

std::uint64_t CounterRng::next_u64() noexcept {
    if (has_buffered_) {
        has_buffered_ = false;
        return buffered_;
    }
    std::uint64_t c0 = ctr_hi_;
    std::uint64_t c1 = ctr_lo_;
    std::uint64_t key = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi;
        std::uint64_t lo;
        mulhilo(kMult, c0, hi, lo);
        c0 = hi ^ key ^ c1;
        c1 = lo;
        key += kBump;
    }
    ++ctr_lo_;  // block index; ctr_hi_ stays the stream id
    buffered_ = c1;
    has_buffered_ = true;
    return c0;
}

} // namespace plind
