#include "pdt/dense_select.hpp"

#include "pdt/container.hpp"
#include "pdt/errors.hpp"

namespace pdt {

bool DenseSelect::admissible(const BitVector& bits)
{
    int64_t last = -1;
    for (uint64_t w = 0; w < bits.num_words(); ++w) {
        uint64_t word = bits.word(w);
        while (word) {
            const int64_t p = int64_t(w * 64) + std::countr_zero(word);
            if (p - last > 64) return false;
            last = p;
            word &= word - 1;
        }
    }
    return true;
}

DenseSelect::DenseSelect(BitVector bits) : bits_(std::move(bits))
{
    std::vector<uint64_t> blocks;
    std::vector<uint16_t> subs;
    int64_t last = -1;
    uint64_t k = 0;
    for (uint64_t w = 0; w < bits_.num_words(); ++w) {
        uint64_t word = bits_.word(w);
        while (word) {
            const uint64_t p = w * 64 + std::countr_zero(word);
            if (int64_t(p) - last > 64)
                throw BuildError("dense select: ones at " + std::to_string(last) + " and " + std::to_string(p) +
                                 " are more than 64 positions apart");
            last = int64_t(p);
            if (k % block_ones == 0)
                blocks.push_back(p);
            else if (k % sub_ones == 0)
                subs.push_back(uint16_t(p - blocks.back()));
            ++k;
            word &= word - 1;
        }
    }
    ones_ = k;
    // Pad the last block so every block owns subs_per_block entries.
    subs.resize(blocks.size() * subs_per_block, 0);
    blocks_ = MappedArray<uint64_t>(std::move(blocks));
    subs_ = MappedArray<uint16_t>(std::move(subs));
}

void DenseSelect::save(ContainerWriter& out, const std::string& prefix) const
{
    bits_.save(out, prefix + ".bits");
    out.add(prefix + ".dsel_blocks", blocks_.span());
    out.add(prefix + ".dsel_subs", subs_.span());
}

void DenseSelect::validate_directory(const std::string& prefix) const
{
    const uint64_t want_blocks = (ones_ + block_ones - 1) / block_ones;
    if (blocks_.size() != want_blocks || subs_.size() != want_blocks * subs_per_block)
        throw FormatError("dense select directory under '" + prefix + "' does not match the vector");
    for (uint64_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b] >= bits_.size() || !bits_[blocks_[b]])
            throw FormatError("dense select block " + std::to_string(b) + " under '" + prefix + "' is corrupt");
        for (uint64_t s = 0; s < subs_per_block; ++s)
            if (blocks_[b] + subs_[b * subs_per_block + s] >= bits_.size())
                throw FormatError("dense select offset under '" + prefix + "' out of range");
    }
}

DenseSelect DenseSelect::load(const ContainerReader& in, const std::string& prefix)
{
    DenseSelect ds;
    ds.bits_ = BitVector::load(in, prefix + ".bits");
    ds.ones_ = ds.bits_.count_ones();
    ds.blocks_ = in.get<uint64_t>(prefix + ".dsel_blocks");
    ds.subs_ = in.get<uint16_t>(prefix + ".dsel_subs");
    ds.validate_directory(prefix);
    return ds;
}

SampledSelect::SampledSelect(BitVector bits) : bits_(std::move(bits))
{
    std::vector<uint64_t> samples;
    uint64_t k = 0;
    for (uint64_t w = 0; w < bits_.num_words(); ++w) {
        uint64_t word = bits_.word(w);
        while (word) {
            if (k % sample_rate == 0) samples.push_back(w * 64 + std::countr_zero(word));
            ++k;
            word &= word - 1;
        }
    }
    ones_ = k;
    samples_ = MappedArray<uint64_t>(std::move(samples));
}

void SampledSelect::save(ContainerWriter& out, const std::string& prefix) const
{
    bits_.save(out, prefix + ".bits");
    out.add(prefix + ".ssel", samples_.span());
}

SampledSelect SampledSelect::load(const ContainerReader& in, const std::string& prefix)
{
    SampledSelect ss;
    ss.bits_ = BitVector::load(in, prefix + ".bits");
    ss.ones_ = ss.bits_.count_ones();
    ss.samples_ = in.get<uint64_t>(prefix + ".ssel");
    if (ss.samples_.size() != (ss.ones_ + sample_rate - 1) / sample_rate)
        throw FormatError("sampled select directory under '" + prefix + "' does not match the vector");
    for (uint64_t p : ss.samples_)
        if (p >= ss.bits_.size() || !ss.bits_[p])
            throw FormatError("sampled select entry under '" + prefix + "' is corrupt");
    return ss;
}

} // namespace pdt
