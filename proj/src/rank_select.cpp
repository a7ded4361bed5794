#include "pdt/rank_select.hpp"

#include "pdt/container.hpp"

namespace pdt {

RankSelect::RankSelect(BitVector bits, uint64_t hint_rate) : bits_(std::move(bits)), hint_rate_(hint_rate)
{
    if (hint_rate_ == 0) throw std::invalid_argument("select hint rate must be positive");
    const uint64_t nw = bits_.num_words();
    superblocks_ = (nw + 7) / 8;
    std::vector<uint64_t> counts(2 * (superblocks_ + 1), 0);
    uint64_t total = 0;
    for (uint64_t sb = 0; sb < superblocks_; ++sb) {
        counts[2 * sb] = total;
        uint64_t in = 0, packed = 0;
        for (uint64_t j = 0; j < 8; ++j) {
            if (j > 0) packed |= in << (9 * (j - 1));
            if (sb * 8 + j < nw) in += std::popcount(bits_.word(sb * 8 + j));
        }
        counts[2 * sb + 1] = packed;
        total += in;
    }
    counts[2 * superblocks_] = total;
    ones_ = total;
    counts_ = MappedArray<uint64_t>(std::move(counts));
    build_hints();
}

void RankSelect::build_hints()
{
    std::vector<uint64_t> h1, h0;
    uint64_t next1 = 0, next0 = 0;
    for (uint64_t sb = 0; sb < superblocks_; ++sb) {
        const uint64_t end1 = ones_before_sb(sb + 1);
        const uint64_t end0 = std::min(zeros_before_sb(sb + 1), num_zeros());
        while (next1 < end1) {
            h1.push_back(sb);
            next1 += hint_rate_;
        }
        while (next0 < end0) {
            h0.push_back(sb);
            next0 += hint_rate_;
        }
    }
    h1.push_back(superblocks_ ? superblocks_ - 1 : 0);
    h0.push_back(superblocks_ ? superblocks_ - 1 : 0);
    hints1_ = MappedArray<uint64_t>(std::move(h1));
    hints0_ = MappedArray<uint64_t>(std::move(h0));
}

uint64_t RankSelect::select1(uint64_t k) const
{
    if (k >= ones_) throw std::out_of_range("select1 ordinal " + std::to_string(k) + " >= " + std::to_string(ones_));
    // Last superblock whose preceding count is <= k.
    uint64_t lo = hints1_[k / hint_rate_], hi = hints1_[k / hint_rate_ + 1] + 1;
    while (hi - lo > 1) {
        const uint64_t mid = (lo + hi) / 2;
        if (ones_before_sb(mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    uint64_t r = k - ones_before_sb(lo);
    uint64_t j = 7;
    while (j > 0 && sub_count(lo, j) > r) --j;
    r -= sub_count(lo, j);
    const uint64_t w = lo * 8 + j;
    return w * 64 + broadword::select_in_word(bits_.word(w), unsigned(r));
}

uint64_t RankSelect::select0(uint64_t k) const
{
    if (k >= num_zeros())
        throw std::out_of_range("select0 ordinal " + std::to_string(k) + " >= " + std::to_string(num_zeros()));
    uint64_t lo = hints0_[k / hint_rate_], hi = hints0_[k / hint_rate_ + 1] + 1;
    while (hi - lo > 1) {
        const uint64_t mid = (lo + hi) / 2;
        if (zeros_before_sb(mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    uint64_t r = k - zeros_before_sb(lo);
    uint64_t j = 7;
    while (j > 0 && 64 * j - sub_count(lo, j) > r) --j;
    r -= 64 * j - sub_count(lo, j);
    const uint64_t w = lo * 8 + j;
    return w * 64 + broadword::select_in_word(~bits_.word(w), unsigned(r));
}

uint64_t RankSelect::directory_bits() const
{
    return 64 * (counts_.size() + hints1_.size() + hints0_.size() + 2);
}

void RankSelect::save(ContainerWriter& out, const std::string& prefix) const
{
    bits_.save(out, prefix + ".bits");
    out.add(prefix + ".rank", std::vector<uint64_t>{hint_rate_});
    out.add(prefix + ".rank_dir", counts_.span());
    out.add(prefix + ".sel1", hints1_.span());
    out.add(prefix + ".sel0", hints0_.span());
}

RankSelect RankSelect::load(const ContainerReader& in, const std::string& prefix)
{
    RankSelect rs;
    rs.bits_ = BitVector::load(in, prefix + ".bits");
    rs.hint_rate_ = in.scalars(prefix + ".rank", 1)[0];
    if (rs.hint_rate_ == 0) throw FormatError("section '" + prefix + ".rank': zero hint rate");
    rs.superblocks_ = (rs.bits_.num_words() + 7) / 8;
    rs.counts_ = in.get<uint64_t>(prefix + ".rank_dir");
    if (rs.counts_.size() != 2 * (rs.superblocks_ + 1))
        throw FormatError("section '" + prefix + ".rank_dir' has " + std::to_string(rs.counts_.size()) +
                          " words, expected " + std::to_string(2 * (rs.superblocks_ + 1)));
    rs.ones_ = rs.counts_[2 * rs.superblocks_];
    if (rs.ones_ > rs.bits_.size()) throw FormatError("section '" + prefix + ".rank_dir': count exceeds length");
    rs.hints1_ = in.get<uint64_t>(prefix + ".sel1");
    rs.hints0_ = in.get<uint64_t>(prefix + ".sel0");
    const uint64_t want1 = (rs.ones_ + rs.hint_rate_ - 1) / rs.hint_rate_ + 1;
    const uint64_t want0 = (rs.num_zeros() + rs.hint_rate_ - 1) / rs.hint_rate_ + 1;
    if (rs.hints1_.size() != want1 || rs.hints0_.size() != want0)
        throw FormatError("select hints under '" + prefix + "' do not match the vector");
    for (auto* h : {&rs.hints1_, &rs.hints0_})
        for (uint64_t v : *h)
            if (v > rs.superblocks_) throw FormatError("select hint under '" + prefix + "' out of range");
    return rs;
}

} // namespace pdt
