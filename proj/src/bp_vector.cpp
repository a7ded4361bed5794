#include "pdt/bp_vector.hpp"

#include <limits>
#include <vector>

#include "pdt/container.hpp"
#include "pdt/errors.hpp"

namespace pdt {

namespace {

bool valid_block_bits(uint64_t b) { return b >= 64 && std::has_single_bit(b); }

} // namespace

BpVector::BpVector(BitVector bits, uint64_t block_bits) : block_bits_(block_bits)
{
    if (!valid_block_bits(block_bits_))
        throw std::invalid_argument("block size must be a power of two >= 64, got " + std::to_string(block_bits_));
    if (bits.size() >= (uint64_t(1) << 31))
        throw BuildError("parentheses sequence of " + std::to_string(bits.size()) + " symbols exceeds 2^31 - 1");
    const uint64_t n = bits.size();
    rs_ = RankSelect(std::move(bits));
    init_geometry();

    std::vector<int32_t> samples(nblocks_ + 1, 0);
    std::vector<int32_t> mins(2 * leaves_, std::numeric_limits<int32_t>::max());
    int64_t e = 0;
    for (uint64_t b = 0; b < nblocks_; ++b) {
        samples[b] = int32_t(e);
        int64_t m = e;
        for (uint64_t p = b * block_bits_; p < block_end(b); ++p) {
            e += rs_[p] ? 1 : -1;
            if (e < 0 && p + 1 < n)
                throw BuildError("parentheses unbalanced: excess drops below zero at position " + std::to_string(p));
            m = std::min(m, e);
        }
        mins[leaves_ + b] = int32_t(m);
    }
    samples[nblocks_] = int32_t(e);
    if (e != 0 && e != -1)
        throw BuildError("parentheses unbalanced: final excess " + std::to_string(e));
    for (uint64_t v = leaves_ - 1; v >= 1; --v) mins[v] = std::min(mins[2 * v], mins[2 * v + 1]);
    mins_ = MappedArray<int32_t>(std::move(mins));
    samples_ = MappedArray<int32_t>(std::move(samples));
}

void BpVector::init_geometry()
{
    nblocks_ = (size() + block_bits_ - 1) / block_bits_;
    leaves_ = std::bit_ceil(std::max<uint64_t>(nblocks_, 1));
}

std::optional<uint64_t> BpVector::next_block_reaching(uint64_t b, int64_t x) const
{
    uint64_t v = leaves_ + b;
    while (v > 1) {
        if (!(v & 1) && mins_[v + 1] <= x) {
            ++v;
            while (v < leaves_) v = mins_[2 * v] <= x ? 2 * v : 2 * v + 1;
            return v - leaves_;
        }
        v >>= 1;
    }
    return std::nullopt;
}

std::optional<uint64_t> BpVector::prev_block_reaching(uint64_t b, int64_t x) const
{
    uint64_t v = leaves_ + b;
    while (v > 1) {
        if ((v & 1) && mins_[v - 1] <= x) {
            --v;
            while (v < leaves_) v = mins_[2 * v + 1] <= x ? 2 * v + 1 : 2 * v;
            return v - leaves_;
        }
        v >>= 1;
    }
    return std::nullopt;
}

void BpVector::save(ContainerWriter& out, const std::string& prefix) const
{
    rs_.save(out, prefix);
    out.add(prefix + ".rmt", std::vector<uint64_t>{block_bits_});
    out.add(prefix + ".rmt_mins", mins_.span());
    out.add(prefix + ".rmt_samples", samples_.span());
}

BpVector BpVector::load(const ContainerReader& in, const std::string& prefix)
{
    BpVector bp;
    bp.rs_ = RankSelect::load(in, prefix);
    bp.block_bits_ = in.scalars(prefix + ".rmt", 1)[0];
    if (!valid_block_bits(bp.block_bits_))
        throw FormatError("section '" + prefix + ".rmt': invalid block size " + std::to_string(bp.block_bits_));
    if (bp.size() >= (uint64_t(1) << 31)) throw FormatError("parentheses sequence under '" + prefix + "' too long");
    bp.init_geometry();
    bp.mins_ = in.get<int32_t>(prefix + ".rmt_mins");
    bp.samples_ = in.get<int32_t>(prefix + ".rmt_samples");
    if (bp.mins_.size() != 2 * bp.leaves_)
        throw FormatError("section '" + prefix + ".rmt_mins' has " + std::to_string(bp.mins_.size()) +
                          " entries, expected " + std::to_string(2 * bp.leaves_));
    if (bp.samples_.size() != bp.nblocks_ + 1)
        throw FormatError("section '" + prefix + ".rmt_samples' has " + std::to_string(bp.samples_.size()) +
                          " entries, expected " + std::to_string(bp.nblocks_ + 1));
    // Samples are cheap to cross-check against the rank directory.
    for (uint64_t b = 0; b <= bp.nblocks_; ++b) {
        const uint64_t p = std::min(b * bp.block_bits_, bp.size());
        if (bp.samples_[b] != bp.excess(p))
            throw FormatError("section '" + prefix + ".rmt_samples' disagrees with the sequence at block " +
                              std::to_string(b));
    }
    return bp;
}

TreeShape dfuds_shape(const BitVector& bp)
{
    TreeShape shape;
    std::vector<uint64_t> remaining;  // children not yet visited, per open ancestor
    uint64_t p = 0;
    while (p < bp.size()) {
        uint64_t depth = 0;
        if (shape.nodes > 0) {
            while (!remaining.empty() && remaining.back() == 0) remaining.pop_back();
            if (remaining.empty()) throw FormatError("DFUDS sequence has more nodes than its root spans");
            depth = remaining.size();
            --remaining.back();
        }
        const uint64_t close = bp.next_zero(p);
        if (close == bp.size()) throw FormatError("DFUDS sequence ends inside a node");
        if (close > p) remaining.push_back(close - p);
        ++shape.nodes;
        shape.depth_sum += depth;
        shape.height = std::max(shape.height, depth);
        p = close + 1;
    }
    for (uint64_t r : remaining)
        if (r != 0) throw FormatError("DFUDS sequence ends before all children are listed");
    return shape;
}

} // namespace pdt
