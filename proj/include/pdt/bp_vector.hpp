#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "pdt/broadword.hpp"
#include "pdt/rank_select.hpp"

namespace pdt {

// Balanced parentheses ('(' = 1) with FindClose/FindOpen over a Range Min
// tree. The sequence is cut into blocks of block_bits; for each block we keep
// the excess at its start and, in a heap-ordered complete binary tree, the
// minimum excess over the closed interval [start, end] of every block and
// subtree. Only minima are kept: for a mate search with target x the first
// block after the start whose minimum is <= x is the block holding the answer,
// since excess moves by one per symbol and cannot skip over x.
//
// Also accepts a balanced sequence followed by one unmatched ')', which is
// how a DFUDS without a virtual root ends.
class BpVector {
public:
    static constexpr uint64_t default_block_bits = 512;
    static constexpr uint64_t npos = ~uint64_t(0);

    BpVector() = default;
    explicit BpVector(BitVector bits, uint64_t block_bits = default_block_bits);

    uint64_t size() const { return rs_.size(); }
    const BitVector& bits() const { return rs_.bits(); }
    const RankSelect& rank_select() const { return rs_; }
    bool is_open(uint64_t i) const { return rs_[i]; }
    uint64_t block_bits() const { return block_bits_; }
    uint64_t num_blocks() const { return nblocks_; }

    int64_t excess(uint64_t i) const
    {
        return 2 * int64_t(rs_.rank1(i)) - int64_t(i);
    }

    uint64_t find_close(uint64_t i) const
    {
        check_paren(i, true);
        return find_close_impl<false>(i);
    }
    uint64_t find_open(uint64_t j) const
    {
        check_paren(j, false);
        return find_open_impl<false>(j);
    }

    // Same searches with the in-block scan done a byte at a time through
    // lookup tables; kept for benchmarking and differential testing.
    uint64_t find_close_bytewise(uint64_t i) const
    {
        check_paren(i, true);
        return find_close_impl<true>(i);
    }
    uint64_t find_open_bytewise(uint64_t j) const
    {
        check_paren(j, false);
        return find_open_impl<true>(j);
    }

    // First block after b whose minimum is <= x / last block before b whose
    // minimum is <= x, as located by the tree alone.
    std::optional<uint64_t> next_block_reaching(uint64_t b, int64_t x) const;
    std::optional<uint64_t> prev_block_reaching(uint64_t b, int64_t x) const;
    int64_t block_min(uint64_t b) const { return mins_[leaves_ + b]; }
    int64_t block_start_excess(uint64_t b) const { return samples_[b]; }

    uint64_t directory_bits() const
    {
        return rs_.directory_bits() + 32 * (mins_.size() + samples_.size()) + 64;
    }
    uint64_t size_in_bits() const { return rs_.size_in_bits() + directory_bits() - rs_.directory_bits(); }

    void save(ContainerWriter& out, const std::string& prefix) const;
    static BpVector load(const ContainerReader& in, const std::string& prefix);

private:
    void check_paren(uint64_t i, bool open) const
    {
        if (i >= size()) throw std::out_of_range("parenthesis position " + std::to_string(i) + " >= length " + std::to_string(size()));
        if (rs_[i] != open)
            throw std::invalid_argument(std::string("position ") + std::to_string(i) + " does not hold " +
                                        (open ? "'('" : "')'"));
    }
    void init_geometry();

    // Scans [from, to) forward; r is the excess entering `from` relative to
    // the target (>= 1). Returns the position whose symbol brings it to 0.
    template <bool Bytewise>
    uint64_t scan_fwd(uint64_t from, uint64_t to, int64_t& r) const
    {
        while (from < to) {
            const unsigned s = unsigned(from % 64);
            const unsigned valid = unsigned(std::min<uint64_t>(64 - s, to - from));
            uint64_t word = bits().word(from / 64) >> s;
            if (valid < 64) word |= ~uint64_t(0) << valid;  // pad with '(' so no false crossing
            const unsigned c = Bytewise ? broadword::find_crossing_fwd_bytewise(word, r)
                                        : broadword::find_crossing_fwd(word, r);
            if (c < valid) return from + c;
            r += 2 * int64_t(std::popcount(valid < 64 ? word & ((uint64_t(1) << valid) - 1) : word)) - valid;
            from += valid;
        }
        return npos;
    }

    // Scans positions to-1 down to from; r is the excess at `to` relative to
    // the target. Returns the position p at which excess(p) hits the target.
    template <bool Bytewise>
    uint64_t scan_bwd(uint64_t from, uint64_t to, int64_t& r) const
    {
        while (to > from) {
            const uint64_t last = to - 1;
            const unsigned t = unsigned(last % 64);
            const unsigned valid = unsigned(std::min<uint64_t>(t + 1, to - from));
            uint64_t word = bits().word(last / 64) << (63 - t);
            if (valid < 64) word &= ~uint64_t(0) << (64 - valid);  // pad with ')'
            const unsigned c = Bytewise ? broadword::find_crossing_bwd_bytewise(word, r)
                                        : broadword::find_crossing_bwd(word, r);
            if (c < valid) return last - c;
            r += int64_t(valid) - 2 * int64_t(std::popcount(word));
            to -= valid;
        }
        return npos;
    }

    uint64_t block_end(uint64_t b) const { return std::min((b + 1) * block_bits_, size()); }

    template <bool Bytewise>
    uint64_t find_close_impl(uint64_t i) const
    {
        const uint64_t b = i / block_bits_;
        int64_t r = 1;
        uint64_t q = scan_fwd<Bytewise>(i + 1, block_end(b), r);
        if (q != npos) return q;
        const int64_t target = samples_[b + 1] - r;
        const auto nb = next_block_reaching(b, target);
        if (!nb) throw std::logic_error("unmatched '(' at " + std::to_string(i));
        r = samples_[*nb] - target;
        q = scan_fwd<Bytewise>(*nb * block_bits_, block_end(*nb), r);
        if (q == npos) throw std::logic_error("range min tree inconsistent at block " + std::to_string(*nb));
        return q;
    }

    template <bool Bytewise>
    uint64_t find_open_impl(uint64_t j) const
    {
        const uint64_t b = j / block_bits_;
        int64_t r = 1;
        uint64_t q = scan_bwd<Bytewise>(b * block_bits_, j, r);
        if (q != npos) return q;
        const int64_t target = samples_[b] - r;
        const auto pb = prev_block_reaching(b, target);
        if (!pb) throw std::logic_error("unmatched ')' at " + std::to_string(j));
        r = samples_[*pb + 1] - target;
        q = scan_bwd<Bytewise>(*pb * block_bits_, (*pb + 1) * block_bits_, r);
        if (q == npos) throw std::logic_error("range min tree inconsistent at block " + std::to_string(*pb));
        return q;
    }

    RankSelect rs_;
    uint64_t block_bits_ = default_block_bits;
    uint64_t nblocks_ = 0;
    uint64_t leaves_ = 1;
    MappedArray<int32_t> mins_;     // 2 * leaves_, node 1 is the root
    MappedArray<int32_t> samples_;  // nblocks_ + 1 block-start excesses
};

struct TreeShape {
    uint64_t nodes = 0;
    uint64_t height = 0;      // max node depth, root at 0
    uint64_t depth_sum = 0;   // sum of node depths
    double average_depth() const { return nodes ? double(depth_sum) / double(nodes) : 0.0; }
};

// Depths of every node of a DFUDS tree, computed by one left-to-right scan.
TreeShape dfuds_shape(const BitVector& bp);

} // namespace pdt
