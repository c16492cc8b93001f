#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace nfst {

using Hash256 = std::array<std::uint8_t, 32>;

namespace detail {

inline constexpr std::array<std::uint64_t, 24> keccak_round_constants{
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

inline constexpr std::array<int, 25> keccak_rotations{
    0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43,
    25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14,
};

constexpr std::uint64_t rotl64(std::uint64_t x, int n) noexcept
{
    return n == 0 ? x : (x << n) | (x >> (64 - n));
}

inline void keccak_f1600(std::array<std::uint64_t, 25>& a) noexcept
{
    for (std::uint64_t rc : keccak_round_constants) {
        // theta
        std::array<std::uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) {
            std::uint64_t d = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                a[y + x] ^= d;
        }
        // rho + pi
        std::array<std::uint64_t, 25> b{};
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] =
                    rotl64(a[x + 5 * y], keccak_rotations[x + 5 * y]);
        // chi
        for (int y = 0; y < 25; y += 5)
            for (int x = 0; x < 5; ++x)
                a[y + x] = b[y + x] ^ (~b[y + (x + 1) % 5] & b[y + (x + 2) % 5]);
        // iota
        a[0] ^= rc;
    }
}

} // namespace detail

/// Original Keccak-256 (0x01 padding) as used by Ethereum, not NIST SHA3-256.
inline Hash256 keccak256(std::span<const std::uint8_t> data) noexcept
{
    constexpr std::size_t rate = 136;
    std::array<std::uint64_t, 25> state{};

    auto absorb_block = [&state](const std::uint8_t* block) {
        for (std::size_t i = 0; i < rate / 8; ++i) {
            std::uint64_t lane = 0;
            for (int b = 7; b >= 0; --b)
                lane = (lane << 8) | block[i * 8 + static_cast<std::size_t>(b)];
            state[i] ^= lane;
        }
        detail::keccak_f1600(state);
    };

    std::size_t offset = 0;
    for (; offset + rate <= data.size(); offset += rate)
        absorb_block(data.data() + offset);

    std::array<std::uint8_t, rate> last{};
    std::size_t tail = data.size() - offset;
    for (std::size_t i = 0; i < tail; ++i)
        last[i] = data[offset + i];
    last[tail] ^= 0x01;
    last[rate - 1] ^= 0x80;
    absorb_block(last.data());

    Hash256 out{};
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(state[i / 8] >> (8 * (i % 8)));
    return out;
}

inline Hash256 keccak256(std::string_view text) noexcept
{
    return keccak256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::string to_hex(std::span<const std::uint8_t> bytes, bool prefix = true)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = prefix ? "0x" : "";
    out.reserve(out.size() + bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

} // namespace nfst
