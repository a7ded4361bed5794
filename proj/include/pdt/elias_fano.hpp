#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdt/bit_vector.hpp"
#include "pdt/dense_select.hpp"

namespace pdt {

// Elias-Fano sequence of m non-decreasing integers in [0, n). Value i is
// split into ell low bits, stored packed, and a high part stored as the
// unary-gap bit vector with a one at position (v_i >> ell) + i.
class EliasFano {
public:
    EliasFano() = default;
    EliasFano(std::span<const uint64_t> values, uint64_t universe);

    uint64_t size() const { return m_; }
    uint64_t universe() const { return n_; }
    unsigned low_width() const { return ell_; }
    bool dense_high() const { return dense_; }

    uint64_t operator[](uint64_t i) const
    {
        if (i >= m_) throw std::out_of_range("Elias-Fano index " + std::to_string(i) + " >= " + std::to_string(m_));
        return access_unchecked(i);
    }

    uint64_t access_unchecked(uint64_t i) const
    {
        return high_part(i) << ell_ | low(i);
    }

    uint64_t high_part(uint64_t i) const
    {
        const uint64_t pos = dense_ ? dense_sel_.select_unchecked(i) : sampled_.select_unchecked(i);
        return pos - i;
    }
    uint64_t low(uint64_t i) const
    {
        if (ell_ == 0) return 0;
        const uint64_t bit = i * ell_, w = bit / 64, shift = bit % 64;
        const uint64_t mask = ell_ == 64 ? ~uint64_t(0) : (uint64_t(1) << ell_) - 1;
        uint64_t v = low_[w] >> shift;
        if (shift + ell_ > 64) v |= low_[w + 1] << (64 - shift);
        return v & mask;
    }

    uint64_t size_in_bits() const;

    void save(ContainerWriter& out, const std::string& prefix) const;
    static EliasFano load(const ContainerReader& in, const std::string& prefix);

private:
    uint64_t m_ = 0, n_ = 0;
    unsigned ell_ = 0;
    bool dense_ = true;
    MappedArray<uint64_t> low_;
    DenseSelect dense_sel_;
    SampledSelect sampled_;
};

} // namespace pdt
