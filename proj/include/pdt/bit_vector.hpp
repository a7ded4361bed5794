#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdt/mapped_array.hpp"

namespace pdt {

class ContainerWriter;
class ContainerReader;

// Append-only bit buffer. Bit p lives at bit p % 64 of word p / 64.
class BitVectorBuilder {
public:
    BitVectorBuilder() = default;
    explicit BitVectorBuilder(uint64_t n, bool value = false);

    void push_back(bool b)
    {
        if (size_ % 64 == 0) words_.push_back(0);
        if (b) words_.back() |= uint64_t(1) << (size_ % 64);
        ++size_;
    }

    // Appends the len low bits of bits, least significant first.
    void append_bits(uint64_t bits, unsigned len);
    void append_run(bool b, uint64_t len);
    void set(uint64_t pos, bool b);
    bool operator[](uint64_t pos) const { return words_[pos / 64] >> (pos % 64) & 1; }

    uint64_t size() const { return size_; }
    std::vector<uint64_t>& words() { return words_; }

private:
    std::vector<uint64_t> words_;
    uint64_t size_ = 0;
};

// Immutable packed bit sequence; bits past size() in the last word are zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(BitVectorBuilder&& builder);
    BitVector(MappedArray<uint64_t> words, uint64_t size);

    uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::span<const uint64_t> words() const { return words_.span(); }
    uint64_t word(uint64_t i) const { return words_[i]; }
    uint64_t num_words() const { return words_.size(); }

    bool operator[](uint64_t pos) const
    {
        assert(pos < size_);
        return words_[pos / 64] >> (pos % 64) & 1;
    }

    // len <= 64 bits starting at pos, least significant first.
    uint64_t get_bits(uint64_t pos, unsigned len) const
    {
        assert(len <= 64 && pos + len <= size_);
        if (len == 0) return 0;
        const uint64_t block = pos / 64, shift = pos % 64;
        const uint64_t mask = len == 64 ? ~uint64_t(0) : (uint64_t(1) << len) - 1;
        if (shift + len <= 64) return words_[block] >> shift & mask;
        return (words_[block] >> shift | words_[block + 1] << (64 - shift)) & mask;
    }

    // Smallest position >= pos holding a zero, or size() if none.
    uint64_t next_zero(uint64_t pos) const
    {
        uint64_t block = pos / 64;
        if (block >= words_.size()) return size_;
        uint64_t w = ~words_[block] & (~uint64_t(0) << (pos % 64));
        while (w == 0) {
            if (++block == words_.size()) return size_;
            w = ~words_[block];
        }
        const uint64_t r = block * 64 + std::countr_zero(w);
        return r < size_ ? r : size_;
    }

    // Smallest position >= pos holding a one, or size() if none.
    uint64_t next_one(uint64_t pos) const
    {
        uint64_t block = pos / 64;
        if (block >= words_.size()) return size_;
        uint64_t w = words_[block] & (~uint64_t(0) << (pos % 64));
        while (w == 0) {
            if (++block == words_.size()) return size_;
            w = words_[block];
        }
        return block * 64 + std::countr_zero(w);
    }

    // Largest position < pos holding a zero, or -1 (as uint64 max) if none.
    uint64_t prev_zero(uint64_t pos) const
    {
        if (pos == 0) return ~uint64_t(0);
        uint64_t block = (pos - 1) / 64;
        const unsigned top = unsigned((pos - 1) % 64);
        uint64_t w = ~words_[block] & (top == 63 ? ~uint64_t(0) : (uint64_t(2) << top) - 1);
        while (w == 0) {
            if (block == 0) return ~uint64_t(0);
            w = ~words_[--block];
        }
        return block * 64 + 63 - std::countl_zero(w);
    }

    uint64_t count_ones() const;
    uint64_t size_in_bits() const { return 64 + words_.size() * 64; }

    void save(ContainerWriter& out, const std::string& name) const;
    static BitVector load(const ContainerReader& in, const std::string& name);

private:
    MappedArray<uint64_t> words_;
    uint64_t size_ = 0;
};

} // namespace pdt
