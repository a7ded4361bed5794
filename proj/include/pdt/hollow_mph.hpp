#pragma once

// Monotone minimal perfect hashing over a hollow trie: the binary trie of the
// 9-bit key transform, keeping only its topology and the skips of internal
// nodes. HollowTrieMph decomposes it with left-biased heavy paths and stores
// the tree of paths as DFUDS plus one (skip, direction) pair per '('.
// FlatHollowTrie keeps the binary trie itself, as a height/latency baseline.
//
// Pair layout: with w = bit_width(skip + 1) - 1, l_low gets the low w bits of
// skip + 1 (most significant first) followed by the direction bit, and l_high
// gets w zeros followed by a one. A pair therefore ends at a one of l_high and
// is at most 64 bits long, which is what DenseSelect needs.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "pdt/bp_vector.hpp"
#include "pdt/dense_select.hpp"

namespace pdt {

class ContainerWriter;
class ContainerReader;

struct SkipPair {
    uint64_t skip = 0;
    bool dir = false;  // 0 = left, 1 = right
};

// Appends the encoding of one pair; skip must be < 2^63.
void encode_pair(SkipPair pair, BitVectorBuilder& low, BitVectorBuilder& high);

class SkipPairs {
public:
    SkipPairs() = default;
    SkipPairs(BitVector low, BitVector high);

    uint64_t size() const { return high_.num_ones(); }

    // Bit offset where pair i starts.
    uint64_t start(uint64_t i) const { return i ? high_.select_unchecked(i - 1) + 1 : 0; }

    // Decodes the pair at pos and moves pos past it.
    SkipPair read(uint64_t& pos) const
    {
        const uint64_t end = high_.bits().next_one(pos);
        const unsigned w = unsigned(end - pos);
        uint64_t v = 1;
        if (w) v = (uint64_t(1) << w) | broadword::reverse_bits(low_.get_bits(pos, w)) >> (64 - w);
        pos = end + 1;
        return {v - 1, low_[end]};
    }

    SkipPair operator[](uint64_t i) const
    {
        uint64_t pos = start(i);
        return read(pos);
    }

    const BitVector& low() const { return low_; }
    const DenseSelect& high() const { return high_; }
    uint64_t size_in_bits() const { return low_.size_in_bits() + high_.size_in_bits(); }

    void save(ContainerWriter& out, const std::string& prefix) const;
    static SkipPairs load(const ContainerReader& in, const std::string& prefix);

private:
    BitVector low_;
    DenseSelect high_;
};

class HollowTrieMph {
public:
    HollowTrieMph() = default;

    // keys must be sorted, unique and free of 0x00.
    static HollowTrieMph build(std::span<const std::string_view> keys,
                               uint64_t block_bits = BpVector::default_block_bits);
    // Keys given as prefix-free, sorted strings of '0' and '1'.
    static HollowTrieMph build_from_bits(std::span<const std::string_view> bit_keys,
                                         uint64_t block_bits = BpVector::default_block_bits);

    uint64_t size() const { return count_; }
    bool binary_input() const { return binary_input_; }

    // Rank of s among the keys when s is a key; some value in [0, size())
    // otherwise. Structures built from bit keys read s as '0'/'1' text.
    uint64_t hash(std::string_view s) const;

    const BpVector& bp() const { return bp_; }
    const SkipPairs& pairs() const { return pairs_; }
    TreeShape shape() const { return dfuds_shape(bp_.bits()); }

    // Every path ends with a left turn, so every internal node of the tree of
    // paths has a right child.
    bool paths_end_left() const;

    uint64_t size_in_bits() const { return bp_.size_in_bits() + pairs_.size_in_bits() + 3 * 64; }
    double bits_per_key() const { return count_ ? double(size_in_bits()) / double(count_) : 0.0; }

    void save(ContainerWriter& out) const;
    void save(const std::string& path) const;
    static HollowTrieMph load(const ContainerReader& in);
    static HollowTrieMph load(const std::string& path, bool verify_checksum = true);

private:
    template <typename Bits>
    uint64_t hash_impl(const Bits& x) const;

    uint64_t count_ = 0;
    bool binary_input_ = false;
    BpVector bp_;
    SkipPairs pairs_;
};

// Non-decomposed hollow trie: DFUDS of the binary trie, one pair per internal
// node in preorder (the direction bit is unused and always 0).
class FlatHollowTrie {
public:
    FlatHollowTrie() = default;

    static FlatHollowTrie build(std::span<const std::string_view> keys,
                                uint64_t block_bits = BpVector::default_block_bits);
    static FlatHollowTrie build_from_bits(std::span<const std::string_view> bit_keys,
                                          uint64_t block_bits = BpVector::default_block_bits);

    uint64_t size() const { return count_; }
    bool binary_input() const { return binary_input_; }
    uint64_t hash(std::string_view s) const;

    const BpVector& bp() const { return bp_; }
    const SkipPairs& pairs() const { return pairs_; }
    TreeShape shape() const { return dfuds_shape(bp_.bits()); }

    uint64_t size_in_bits() const { return bp_.size_in_bits() + pairs_.size_in_bits() + 3 * 64; }
    double bits_per_key() const { return count_ ? double(size_in_bits()) / double(count_) : 0.0; }

    void save(ContainerWriter& out) const;
    void save(const std::string& path) const;
    static FlatHollowTrie load(const ContainerReader& in);
    static FlatHollowTrie load(const std::string& path, bool verify_checksum = true);

private:
    template <typename Bits>
    uint64_t hash_impl(const Bits& x) const;

    uint64_t count_ = 0;
    bool binary_input_ = false;
    BpVector bp_;
    SkipPairs pairs_;
};

} // namespace pdt
