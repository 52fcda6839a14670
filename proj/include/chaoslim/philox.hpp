#ifndef CHAOSLIM_PHILOX_HPP
#define CHAOSLIM_PHILOX_HPP

#include <array>
#include <cstdint>

namespace chaoslim {

/// Philox4x32-10 counter-based block cipher (Salmon et al. style keyed
/// counter PRNG). Pure function of (counter, key), which is what makes
/// per-replication streams reproducible and overlap-free: distinct stream
/// ids live in distinct counter prefixes.
[[nodiscard]] inline std::array<std::uint32_t, 4>
philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint64_t M0 = 0xD2511F53u;
    constexpr std::uint64_t M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;

    auto round = [](std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
        std::uint64_t p0 = M0 * static_cast<std::uint64_t>(c[0]);
        std::uint64_t p1 = M1 * static_cast<std::uint64_t>(c[2]);
        std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    };

    round(ctr, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += W0;
        key[1] += W1;
        round(ctr, key);
    }
    return ctr;
}

/// Buffered uniform word stream over blocks (block index, stream id) with a
/// 64-bit key. Block layout: counter = (block lo, block hi, stream lo,
/// stream hi); key = (seed lo, seed hi).
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    [[nodiscard]] std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox4x32_10({static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  stream_lo_, stream_hi_},
                                 key_);
            ++block_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform double in the open interval (0, 1): (word + 1/2) / 2^32.
    [[nodiscard]] double next_unit() {
        return (static_cast<double>(next_u32()) + 0.5) * 0x1p-32;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace chaoslim

#endif
