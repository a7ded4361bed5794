#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "pdt/bit_vector.hpp"
#include "pdt/broadword.hpp"

namespace pdt {

// Select over a vector whose ones are at most 64 positions apart (the first
// one at a position <= 63). Every 1024 ones we store the absolute position,
// and every 128 ones a 16-bit offset from it; the gap bound keeps the offsets
// in range, so no overflow list is needed.
class DenseSelect {
public:
    static constexpr uint64_t block_ones = 1024;
    static constexpr uint64_t sub_ones = 128;
    static constexpr uint64_t subs_per_block = block_ones / sub_ones - 1;

    DenseSelect() = default;
    explicit DenseSelect(BitVector bits);

    static bool admissible(const BitVector& bits);

    const BitVector& bits() const { return bits_; }
    uint64_t size() const { return bits_.size(); }
    uint64_t num_ones() const { return ones_; }

    uint64_t select(uint64_t k) const
    {
        if (k >= ones_) throw std::out_of_range("select ordinal " + std::to_string(k) + " >= " + std::to_string(ones_));
        return select_unchecked(k);
    }

    uint64_t select_unchecked(uint64_t k) const
    {
        const uint64_t b = k / block_ones, s = k % block_ones / sub_ones;
        uint64_t pos = blocks_[b] + (s ? subs_[b * subs_per_block + s - 1] : 0);
        uint64_t r = k % sub_ones;
        uint64_t w = pos / 64;
        uint64_t word = bits_.word(w) & (~uint64_t(0) << (pos % 64));
        for (uint64_t c = std::popcount(word); r >= c; c = std::popcount(word)) {
            r -= c;
            word = bits_.word(++w);
        }
        return w * 64 + broadword::select_in_word(word, unsigned(r));
    }

    uint64_t directory_bits() const { return 64 * (blocks_.size() + 1) + 16 * subs_.size(); }
    uint64_t size_in_bits() const { return bits_.size_in_bits() + directory_bits(); }

    void save(ContainerWriter& out, const std::string& prefix) const;
    static DenseSelect load(const ContainerReader& in, const std::string& prefix);

private:
    void validate_directory(const std::string& prefix) const;

    BitVector bits_;
    uint64_t ones_ = 0;
    MappedArray<uint64_t> blocks_;
    MappedArray<uint16_t> subs_;
};

// Fallback select for vectors that violate the gap bound: the position of
// every 256th one, then a word-by-word popcount scan.
class SampledSelect {
public:
    static constexpr uint64_t sample_rate = 256;

    SampledSelect() = default;
    explicit SampledSelect(BitVector bits);

    const BitVector& bits() const { return bits_; }
    uint64_t size() const { return bits_.size(); }
    uint64_t num_ones() const { return ones_; }

    uint64_t select(uint64_t k) const
    {
        if (k >= ones_) throw std::out_of_range("select ordinal " + std::to_string(k) + " >= " + std::to_string(ones_));
        return select_unchecked(k);
    }

    uint64_t select_unchecked(uint64_t k) const
    {
        const uint64_t pos = samples_[k / sample_rate];
        uint64_t r = k % sample_rate;
        uint64_t w = pos / 64;
        uint64_t word = bits_.word(w) & (~uint64_t(0) << (pos % 64));
        for (uint64_t c = std::popcount(word); r >= c; c = std::popcount(word)) {
            r -= c;
            word = bits_.word(++w);
        }
        return w * 64 + broadword::select_in_word(word, unsigned(r));
    }

    uint64_t directory_bits() const { return 64 * (samples_.size() + 1); }
    uint64_t size_in_bits() const { return bits_.size_in_bits() + directory_bits(); }

    void save(ContainerWriter& out, const std::string& prefix) const;
    static SampledSelect load(const ContainerReader& in, const std::string& prefix);

private:
    BitVector bits_;
    uint64_t ones_ = 0;
    MappedArray<uint64_t> samples_;
};

} // namespace pdt
