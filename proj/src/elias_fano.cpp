#include "pdt/elias_fano.hpp"

#include <bit>

#include "pdt/container.hpp"
#include "pdt/errors.hpp"

namespace pdt {

EliasFano::EliasFano(std::span<const uint64_t> values, uint64_t universe) : m_(values.size()), n_(universe)
{
    for (uint64_t i = 0; i < m_; ++i) {
        if (values[i] >= n_)
            throw BuildError("Elias-Fano value " + std::to_string(values[i]) + " at index " + std::to_string(i) +
                             " is outside the universe [0, " + std::to_string(n_) + ")");
        if (i > 0 && values[i] < values[i - 1])
            throw BuildError("Elias-Fano input decreases at index " + std::to_string(i));
    }
    ell_ = (m_ > 0 && n_ > m_) ? unsigned(std::bit_width(n_ / m_) - 1) : 0;

    std::vector<uint64_t> low((m_ * ell_ + 63) / 64, 0);
    if (ell_ > 0) {
        const uint64_t mask = ell_ == 64 ? ~uint64_t(0) : (uint64_t(1) << ell_) - 1;
        for (uint64_t i = 0; i < m_; ++i) {
            const uint64_t v = values[i] & mask, bit = i * ell_;
            low[bit / 64] |= v << (bit % 64);
            if (bit % 64 + ell_ > 64) low[bit / 64 + 1] |= v >> (64 - bit % 64);
        }
    }
    low_ = MappedArray<uint64_t>(std::move(low));

    const uint64_t high_len = m_ == 0 ? 0 : m_ + ((n_ - 1) >> ell_) + 1;
    BitVectorBuilder high(high_len);
    for (uint64_t i = 0; i < m_; ++i) high.set((values[i] >> ell_) + i, true);
    BitVector hb(std::move(high));
    dense_ = DenseSelect::admissible(hb);
    if (dense_)
        dense_sel_ = DenseSelect(std::move(hb));
    else
        sampled_ = SampledSelect(std::move(hb));
}

uint64_t EliasFano::size_in_bits() const
{
    const uint64_t header = 4 * 64;
    const uint64_t high = dense_ ? dense_sel_.size_in_bits() : sampled_.size_in_bits();
    return header + 64 * low_.size() + high;
}

void EliasFano::save(ContainerWriter& out, const std::string& prefix) const
{
    out.add(prefix + ".ef", std::vector<uint64_t>{m_, n_, ell_, dense_ ? 1u : 0u});
    out.add(prefix + ".ef_low", low_.span());
    if (dense_)
        dense_sel_.save(out, prefix + ".ef_hi");
    else
        sampled_.save(out, prefix + ".ef_hi");
}

EliasFano EliasFano::load(const ContainerReader& in, const std::string& prefix)
{
    const auto header = in.scalars(prefix + ".ef", 4);
    EliasFano ef;
    ef.m_ = header[0];
    ef.n_ = header[1];
    ef.ell_ = unsigned(header[2]);
    ef.dense_ = header[3] != 0;
    const unsigned want_ell = (ef.m_ > 0 && ef.n_ > ef.m_) ? unsigned(std::bit_width(ef.n_ / ef.m_) - 1) : 0;
    if (ef.ell_ != want_ell || header[3] > 1 || (ef.m_ > 0 && ef.n_ == 0))
        throw FormatError("section '" + prefix + ".ef' has an inconsistent header");
    ef.low_ = in.get<uint64_t>(prefix + ".ef_low");
    if (ef.low_.size() != (ef.m_ * ef.ell_ + 63) / 64)
        throw FormatError("section '" + prefix + ".ef_low' has the wrong length");
    const uint64_t high_len = ef.m_ == 0 ? 0 : ef.m_ + ((ef.n_ - 1) >> ef.ell_) + 1;
    const BitVector* hb;
    if (ef.dense_) {
        ef.dense_sel_ = DenseSelect::load(in, prefix + ".ef_hi");
        hb = &ef.dense_sel_.bits();
    } else {
        ef.sampled_ = SampledSelect::load(in, prefix + ".ef_hi");
        hb = &ef.sampled_.bits();
    }
    if (hb->size() != high_len || (ef.dense_ ? ef.dense_sel_.num_ones() : ef.sampled_.num_ones()) != ef.m_)
        throw FormatError("Elias-Fano high part under '" + prefix + "' does not match its header");
    return ef;
}

} // namespace pdt
