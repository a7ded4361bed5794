#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "pdt/bit_vector.hpp"
#include "pdt/broadword.hpp"

namespace pdt {

// Bit vector with a rank9-style directory and hinted select for both bit
// values. Each 512-bit superblock gets two words: the number of ones before
// it, and seven 9-bit counts of ones before words 1..7 of the superblock.
// Select samples the superblock holding every hint_rate-th one (and zero) and
// binary searches between consecutive samples.
class RankSelect {
public:
    static constexpr uint64_t default_hint_rate = 8192;

    RankSelect() = default;
    explicit RankSelect(BitVector bits, uint64_t hint_rate = default_hint_rate);

    const BitVector& bits() const { return bits_; }
    uint64_t size() const { return bits_.size(); }
    uint64_t num_ones() const { return ones_; }
    uint64_t num_zeros() const { return bits_.size() - ones_; }
    bool operator[](uint64_t pos) const { return bits_[pos]; }

    uint64_t rank1(uint64_t i) const
    {
        if (i > bits_.size()) throw std::out_of_range("rank position " + std::to_string(i) + " > length " + std::to_string(bits_.size()));
        return rank1_unchecked(i);
    }
    uint64_t rank0(uint64_t i) const { return i - rank1(i); }
    uint64_t rank(bool b, uint64_t i) const { return b ? rank1(i) : rank0(i); }

    uint64_t rank1_unchecked(uint64_t i) const
    {
        const uint64_t sb = i / 512, w = i / 64, in_sb = w % 8;
        uint64_t r = counts_[2 * sb] + sub_count(sb, in_sb);
        if (i % 64) r += std::popcount(bits_.word(w) & ((uint64_t(1) << (i % 64)) - 1));
        return r;
    }

    uint64_t select1(uint64_t k) const;
    uint64_t select0(uint64_t k) const;
    uint64_t select(bool b, uint64_t k) const { return b ? select1(k) : select0(k); }

    uint64_t hint_rate() const { return hint_rate_; }
    // Directory bits only (excluding the vector itself).
    uint64_t directory_bits() const;
    uint64_t size_in_bits() const { return bits_.size_in_bits() + directory_bits(); }

    void save(ContainerWriter& out, const std::string& prefix) const;
    static RankSelect load(const ContainerReader& in, const std::string& prefix);

private:
    uint64_t sub_count(uint64_t sb, uint64_t in_sb) const
    {
        if (in_sb == 0) return 0;
        return counts_[2 * sb + 1] >> (9 * (in_sb - 1)) & 0x1FF;
    }
    uint64_t ones_before_sb(uint64_t sb) const { return counts_[2 * sb]; }
    uint64_t zeros_before_sb(uint64_t sb) const { return sb * 512 - counts_[2 * sb]; }
    void build_hints();

    BitVector bits_;
    uint64_t ones_ = 0;
    uint64_t hint_rate_ = default_hint_rate;
    uint64_t superblocks_ = 0;
    MappedArray<uint64_t> counts_;  // 2 * (superblocks_ + 1) words
    MappedArray<uint64_t> hints1_;  // superblock of every hint_rate-th one, plus sentinel
    MappedArray<uint64_t> hints0_;
};

} // namespace pdt
