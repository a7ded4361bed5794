#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>

namespace pdt::broadword {

static_assert(std::endian::native == std::endian::little, "little-endian host required");

inline constexpr uint64_t ones_step_4 = 0x1111111111111111ULL;
inline constexpr uint64_t ones_step_8 = 0x0101010101010101ULL;
inline constexpr uint64_t msbs_step_8 = 0x80ULL * ones_step_8;
inline constexpr uint64_t incr_step_8 = 0x80ULL << 56 | 0x40ULL << 48 | 0x20ULL << 40 | 0x10ULL << 32 |
                                        0x8ULL << 24 | 0x4ULL << 16 | 0x2ULL << 8 | 0x1;

// Lane i holds the popcount of byte i.
constexpr uint64_t byte_counts(uint64_t x)
{
    x = x - ((x & 0xa * ones_step_4) >> 1);
    x = (x & 3 * ones_step_4) + ((x >> 2) & 3 * ones_step_4);
    x = (x + (x >> 4)) & 0x0f * ones_step_8;
    return x;
}

// Marks (lane high bit) every lane where x_i <= y_i. Lanes must be < 128.
constexpr uint64_t lanes_leq(uint64_t x, uint64_t y)
{
    return (((y | msbs_step_8) - (x & ~msbs_step_8)) ^ (x ^ y)) & msbs_step_8;
}

constexpr uint64_t zcompare_step_8(uint64_t x)
{
    return ((x | ((x | msbs_step_8) - ones_step_8)) & msbs_step_8) >> 7;
}

constexpr std::optional<unsigned> first_marked_lane(uint64_t l)
{
    if (l == 0) return std::nullopt;
    return static_cast<unsigned>(std::countr_zero(l)) / 8;
}

// Position of the k-th (0-based) set bit of x; requires k < popcount(x).
inline unsigned select_in_word(uint64_t x, unsigned k)
{
    assert(k < unsigned(std::popcount(x)));
    const uint64_t byte_sums = byte_counts(x) * ones_step_8;
    const uint64_t k_step_8 = k * ones_step_8;
    const uint64_t geq = lanes_leq(byte_sums, k_step_8) >> 7;
    const unsigned place = unsigned((geq * ones_step_8 >> 53) & ~uint64_t(0x7));
    const unsigned byte_rank = k - unsigned(((byte_sums << 8) >> place) & 0xFF);
    const uint64_t spread_bits = ((x >> place) & 0xFF) * ones_step_8 & incr_step_8;
    const uint64_t bit_sums = zcompare_step_8(spread_bits) * ones_step_8;
    const uint64_t byte_rank_step_8 = byte_rank * ones_step_8;
    return place + unsigned((lanes_leq(bit_sums, byte_rank_step_8) >> 7) * ones_step_8 >> 56);
}

constexpr uint64_t bswap64(uint64_t x) { return __builtin_bswap64(x); }

constexpr uint64_t reverse_bits(uint64_t x)
{
    x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
    x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
    return bswap64(x);
}

// ---------------------------------------------------------------------------
// Parenthesis excess tables. A set bit is '(' (+1), a clear bit ')' (-1).
// Forward tables scan a byte from bit 0 to bit 7; backward tables scan from
// bit 7 to bit 0 and are used on complemented words, so that a backward search
// for a '(' becomes a forward-style search for a zero crossing.

namespace detail {

struct ExcessTables {
    std::array<int8_t, 256> fwd_min{};   // min prefix excess, nonempty prefixes
    std::array<int8_t, 256> bwd_min{};
    std::array<uint8_t, 256> fwd_clamped{}; // max(0, -fwd_min)
    std::array<uint8_t, 256> bwd_clamped{};
    // position of the zero crossing when entering the byte with excess r
    // (1..8), or 8 when the byte does not cross.
    std::array<std::array<uint8_t, 256>, 8> fwd_pos{};
    std::array<std::array<uint8_t, 256>, 8> bwd_pos{};
};

constexpr ExcessTables make_excess_tables()
{
    ExcessTables t;
    for (int b = 0; b < 256; ++b) {
        int e = 0, m = 9;
        for (int k = 0; k < 8; ++k) {
            e += (b >> k & 1) ? 1 : -1;
            if (e < m) m = e;
        }
        t.fwd_min[b] = int8_t(m);
        t.fwd_clamped[b] = uint8_t(m < 0 ? -m : 0);
        e = 0, m = 9;
        for (int k = 7; k >= 0; --k) {
            e += (b >> k & 1) ? 1 : -1;
            if (e < m) m = e;
        }
        t.bwd_min[b] = int8_t(m);
        t.bwd_clamped[b] = uint8_t(m < 0 ? -m : 0);
        for (int r = 1; r <= 8; ++r) {
            int x = r, pos = 8;
            for (int k = 0; k < 8; ++k) {
                x += (b >> k & 1) ? 1 : -1;
                if (x == 0) { pos = k; break; }
            }
            t.fwd_pos[r - 1][b] = uint8_t(pos);
            x = r, pos = 8;
            for (int k = 0; k < 8; ++k) {
                x += (b >> (7 - k) & 1) ? 1 : -1;
                if (x == 0) { pos = k; break; }
            }
            t.bwd_pos[r - 1][b] = uint8_t(pos);
        }
    }
    return t;
}

inline constexpr ExcessTables excess_tables = make_excess_tables();

} // namespace detail

constexpr int byte_min_excess(uint8_t b) { return detail::excess_tables.fwd_min[b]; }
constexpr int byte_min_excess_backward(uint8_t b) { return detail::excess_tables.bwd_min[b]; }

// Lane i = max(0, -byte_min_excess(byte i)).
inline uint64_t min_excess_lanes(uint64_t w)
{
    const auto& t = detail::excess_tables.fwd_clamped;
    uint64_t m = 0;
    for (unsigned i = 0; i < 8; ++i) m |= uint64_t(t[(w >> (8 * i)) & 0xFF]) << (8 * i);
    return m;
}

inline uint64_t min_excess_lanes_backward(uint64_t w)
{
    const auto& t = detail::excess_tables.bwd_clamped;
    uint64_t m = 0;
    for (unsigned i = 0; i < 8; ++i) m |= uint64_t(t[(w >> (8 * i)) & 0xFF]) << (8 * i);
    return m;
}

// Lane i = e_w plus the excess of bytes 0..i-1. Lanes past the first
// negative prefix are garbage (borrow), which callers tolerate because the
// crossing byte always precedes them.
constexpr uint64_t lane_excess(uint64_t w, uint64_t e_w)
{
    return (e_w + ((2 * byte_counts(w) - 8 * ones_step_8) << 8)) * ones_step_8;
}

// First bit (scanning bit 0 upwards) at which the running excess, entering
// with r >= 1, reaches zero; 64 when the word does not contain it.
inline unsigned find_crossing_fwd(uint64_t w, int64_t r)
{
    assert(r >= 1);
    if (r > 64) return 64;
    const uint64_t e8 = lane_excess(w, uint64_t(r));
    const uint64_t l8 = lanes_leq(e8, min_excess_lanes(w));
    if (l8 == 0) return 64;
    const unsigned lane = unsigned(std::countr_zero(l8)) / 8;
    const unsigned entering = unsigned(e8 >> (8 * lane)) & 0xFF;
    const unsigned byte = unsigned(w >> (8 * lane)) & 0xFF;
    int x = int(entering);
    for (unsigned k = 0; k < 8; ++k) {
        x += (byte >> k & 1) ? 1 : -1;
        if (x == 0) return 8 * lane + k;
    }
    assert(false);
    return 64;
}

// Backward counterpart: scans from bit 63 down, where a '(' lowers the
// excess. Returns the number of bits skipped before the crossing (so the
// crossing is at bit 63 - result), or 64 when absent.
inline unsigned find_crossing_bwd(uint64_t w, int64_t r)
{
    assert(r >= 1);
    if (r > 64) return 64;
    const uint64_t x = bswap64(~w);
    const uint64_t e8 = lane_excess(x, uint64_t(r));
    const uint64_t l8 = lanes_leq(e8, min_excess_lanes_backward(x));
    if (l8 == 0) return 64;
    const unsigned lane = unsigned(std::countr_zero(l8)) / 8;
    const unsigned entering = unsigned(e8 >> (8 * lane)) & 0xFF;
    const unsigned byte = unsigned(x >> (8 * lane)) & 0xFF;
    int e = int(entering);
    for (unsigned k = 0; k < 8; ++k) {
        e += (byte >> (7 - k) & 1) ? 1 : -1;
        if (e == 0) return 8 * lane + k;
    }
    assert(false);
    return 64;
}

// Byte-at-a-time reference versions of the two searches, using the larger
// per-(byte, excess) position tables.
inline unsigned find_crossing_fwd_bytewise(uint64_t w, int64_t r)
{
    const auto& t = detail::excess_tables;
    for (unsigned i = 0; i < 8; ++i) {
        const uint8_t b = uint8_t(w >> (8 * i));
        if (r <= 8 && r + t.fwd_min[b] <= 0) return 8 * i + t.fwd_pos[r - 1][b];
        r += 2 * std::popcount(b) - 8;
    }
    return 64;
}

inline unsigned find_crossing_bwd_bytewise(uint64_t w, int64_t r)
{
    const auto& t = detail::excess_tables;
    const uint64_t x = ~w;
    for (unsigned i = 0; i < 8; ++i) {
        const uint8_t b = uint8_t(x >> (8 * (7 - i)));
        if (r <= 8 && r + t.bwd_min[b] <= 0) return 8 * i + t.bwd_pos[r - 1][b];
        r += 2 * std::popcount(b) - 8;
    }
    return 64;
}

} // namespace pdt::broadword
