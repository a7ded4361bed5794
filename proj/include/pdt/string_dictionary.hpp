#pragma once

// Path-decomposed trie dictionary. The tree of paths is stored as DFUDS
// parentheses (one run of '(' per child followed by a ')', nodes in preorder,
// no virtual root), the hanging branching bytes in B (reversed per node, one
// per '('), and the path labels in a LabelStore (one per ')').
//
// Children of a node are ordered bottom-to-top along its path and
// left-to-right within a path node, so the subtries hanging at a branch
// point occupy a contiguous range of B located by summing the specials seen
// so far in the label.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdt/bp_vector.hpp"
#include "pdt/label_codec.hpp"
#include "pdt/mapped_array.hpp"

namespace pdt {

enum class DictStrategy : uint32_t {
    lex = 0,       // leftmost paths: ids are lexicographic ranks
    centroid = 1,  // heavy paths: logarithmic height
};

struct DictionaryOptions {
    DictStrategy strategy = DictStrategy::centroid;
    bool compress = false;
    uint32_t repair_pairs = default_repair_pairs;
    uint64_t block_bits = BpVector::default_block_bits;
};

// Counters filled by lookup_traced.
struct LookupTrace {
    uint64_t nodes_visited = 0;
    uint64_t literals_scanned = 0;
    uint64_t specials_scanned = 0;
};

class StringDictionary {
public:
    StringDictionary() = default;

    // keys must be sorted, unique and free of 0x00.
    static StringDictionary build(std::span<const std::string_view> keys, const DictionaryOptions& options = {});

    uint64_t size() const { return count_; }
    DictStrategy strategy() const { return strategy_; }
    bool compressed() const { return labels_.compressed(); }

    // Id of s, or -1 when s is not in the set.
    int64_t lookup(std::string_view s) const { return lookup_impl<false>(s, nullptr); }
    int64_t lookup_traced(std::string_view s, LookupTrace& trace) const { return lookup_impl<true>(s, &trace); }

    std::string access(uint64_t id) const;

    const BpVector& bp() const { return bp_; }
    const LabelStore& labels() const { return labels_; }
    std::span<const uint8_t> branching() const { return branching_.span(); }
    TreeShape shape() const { return dfuds_shape(bp_.bits()); }

    uint64_t size_in_bits() const { return bp_.size_in_bits() + 8 * branching_.size() + labels_.size_in_bits() + 4 * 64; }
    uint64_t size_in_bytes() const { return (size_in_bits() + 7) / 8; }

    void save(ContainerWriter& out) const;
    void save(const std::string& path) const;
    static StringDictionary load(const ContainerReader& in);
    static StringDictionary load(const std::string& path, bool verify_checksum = true);

private:
    template <bool Trace>
    int64_t lookup_impl(std::string_view s, LookupTrace* trace) const;

    uint64_t count_ = 0;
    DictStrategy strategy_ = DictStrategy::centroid;
    BpVector bp_;
    MappedArray<uint8_t> branching_;
    LabelStore labels_;
};

template <bool Trace>
int64_t StringDictionary::lookup_impl(std::string_view s, LookupTrace* trace) const
{
    if (count_ == 0) return -1;
    const uint64_t len = s.size() + 1;  // s followed by the terminator
    auto at = [&](uint64_t pos) -> Symbol { return pos < s.size() ? uint8_t(s[pos]) : terminator; };
    uint64_t k = 0, p = 0, pos = 0;
    while (true) {
        if constexpr (Trace) ++trace->nodes_visited;
        LabelCursor cur = labels_.cursor(k);
        uint64_t acc = 0, run = 0;
        Symbol c;
        bool descended = false;
        while (cur.next(c)) {
            if (is_special(c)) {
                if constexpr (Trace) ++trace->specials_scanned;
                run += special_count(c);
                acc += special_count(c);
                continue;
            }
            if constexpr (Trace) ++trace->literals_scanned;
            if (pos >= len) return -1;
            const Symbol want = at(pos);
            if (c == want) {
                ++pos;
                run = 0;
                continue;
            }
            if (run == 0) return -1;
            // Branch point: the subtries hanging here are B[base + acc - run, base + acc),
            // stored with descending branching bytes.
            const uint64_t base = p - k;
            const uint8_t* b = branching_.data() + base;
            uint64_t j = acc - run;
            while (j < acc && b[j] > want) ++j;
            if (j == acc || b[j] != want) return -1;
            const uint64_t open = p + j;
            const uint64_t mate = bp_.find_close(open);
            k += (mate - open - 1) / 2 + 1;
            p = mate + 1;
            ++pos;
            descended = true;
            break;
        }
        if (!descended) return pos == len ? int64_t(k) : -1;
    }
}

} // namespace pdt
