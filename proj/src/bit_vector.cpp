#include "pdt/bit_vector.hpp"

#include "pdt/container.hpp"

namespace pdt {

BitVectorBuilder::BitVectorBuilder(uint64_t n, bool value)
    : words_((n + 63) / 64, value ? ~uint64_t(0) : 0), size_(n)
{
    if (value && n % 64) words_.back() = (uint64_t(1) << (n % 64)) - 1;
}

void BitVectorBuilder::append_bits(uint64_t bits, unsigned len)
{
    assert(len <= 64);
    if (len == 0) return;
    if (len < 64) bits &= (uint64_t(1) << len) - 1;
    const unsigned used = unsigned(size_ % 64);
    if (used == 0) {
        words_.push_back(bits);
    } else {
        words_.back() |= bits << used;
        if (used + len > 64) words_.push_back(bits >> (64 - used));
    }
    size_ += len;
}

void BitVectorBuilder::append_run(bool b, uint64_t len)
{
    const uint64_t fill = b ? ~uint64_t(0) : 0;
    while (len >= 64) {
        append_bits(fill, 64);
        len -= 64;
    }
    append_bits(fill, unsigned(len));
}

void BitVectorBuilder::set(uint64_t pos, bool b)
{
    assert(pos < size_);
    const uint64_t mask = uint64_t(1) << (pos % 64);
    if (b)
        words_[pos / 64] |= mask;
    else
        words_[pos / 64] &= ~mask;
}

BitVector::BitVector(BitVectorBuilder&& builder)
    : words_(std::move(builder.words())), size_(builder.size())
{}

BitVector::BitVector(MappedArray<uint64_t> words, uint64_t size) : words_(std::move(words)), size_(size)
{
    if (words_.size() != (size_ + 63) / 64)
        throw FormatError("bit vector of " + std::to_string(size_) + " bits stored in " +
                          std::to_string(words_.size()) + " words");
    if (size_ % 64 && words_[words_.size() - 1] >> (size_ % 64))
        throw FormatError("bit vector has set bits past its length");
}

uint64_t BitVector::count_ones() const
{
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

void BitVector::save(ContainerWriter& out, const std::string& name) const
{
    std::vector<uint64_t> data;
    data.reserve(words_.size() + 1);
    data.push_back(size_);
    data.insert(data.end(), words_.begin(), words_.end());
    out.add(name, data);
}

BitVector BitVector::load(const ContainerReader& in, const std::string& name)
{
    auto all = in.get<uint64_t>(name);
    if (all.empty()) throw FormatError("section '" + name + "' lacks the bit length");
    // View past the length prefix without copying.
    MappedArray<uint64_t> words(std::make_shared<MappedArray<uint64_t>>(all), all.data() + 1, all.size() - 1);
    try {
        return BitVector(std::move(words), all[0]);
    } catch (const FormatError& e) {
        throw FormatError("section '" + name + "': " + e.what());
    }
}

} // namespace pdt
