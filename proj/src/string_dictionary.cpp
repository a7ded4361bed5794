#include "pdt/string_dictionary.hpp"

#include <algorithm>

#include "pdt/container.hpp"
#include "pdt/trie_builder.hpp"

namespace pdt {

StringDictionary StringDictionary::build(std::span<const std::string_view> keys, const DictionaryOptions& options)
{
    if (keys.empty()) throw BuildError("cannot build a dictionary over an empty set");
    const CompactedTrie trie = build_compacted_trie(keys);
    const PathDecomposition pd = decompose(
        trie, options.strategy == DictStrategy::lex ? PathStrategy::leftmost : PathStrategy::heavy);
    const ByteKeys K{keys};

    BitVectorBuilder bp;
    std::vector<uint8_t> branching;
    branching.reserve(keys.size());
    LabelSequence labels;
    labels.ends.reserve(keys.size());

    auto sym = [&](uint32_t v, uint64_t q) { return K.symbol(trie.node(v).first_leaf, q); };
    for (uint64_t idx = 0; idx < pd.size(); ++idx) {
        const uint32_t top = pd.top[idx];
        const auto kids = path_children(trie, pd, top);
        const uint64_t d = kids.size();
        bp.append_run(true, d);
        bp.push_back(false);
        for (uint64_t j = 0; j < d; ++j) {
            const uint32_t child = kids[d - 1 - j];
            branching.push_back(uint8_t(sym(child, trie.node(trie.node(child).parent).depth)));
        }
        const uint32_t parent = trie.node(top).parent;
        uint64_t start = parent == no_node ? 0 : trie.node(parent).depth + 1;
        for (uint32_t v = top;;) {
            const TrieNode& n = trie.node(v);
            for (uint64_t q = start; q < n.depth; ++q) labels.push(sym(v, q));
            if (n.is_leaf()) break;
            const uint32_t next = pd.preferred[v];
            labels.push_hanging(trie.num_children(v) - 1);
            labels.push(sym(next, n.depth));
            start = n.depth + 1;
            v = next;
        }
        labels.end_label();
    }

    StringDictionary dict;
    dict.count_ = keys.size();
    dict.strategy_ = options.strategy;
    dict.bp_ = BpVector(BitVector(std::move(bp)), options.block_bits);
    dict.branching_ = MappedArray<uint8_t>(std::move(branching));
    dict.labels_ = LabelStore(labels, options.compress, options.repair_pairs);
    return dict;
}

std::string StringDictionary::access(uint64_t id) const
{
    if (id >= count_) throw std::out_of_range("id " + std::to_string(id) + " >= " + std::to_string(count_));
    std::string rev;
    std::vector<Symbol> part;
    Symbol c;

    uint64_t k = id;
    uint64_t p = k ? bp_.rank_select().select0(k - 1) + 1 : 0;
    auto cur = labels_.cursor(k);
    while (cur.next(c))
        if (!is_special(c)) part.push_back(c);
    for (auto it = part.rbegin(); it != part.rend(); ++it) rev.push_back(char(*it));

    while (k != 0) {
        const uint64_t open = bp_.find_open(p - 1);
        const uint64_t parent = k - 1 - (p - open - 2) / 2;
        const uint64_t prev = bp_.bits().prev_zero(open);
        const uint64_t pp = prev == ~uint64_t(0) ? 0 : prev + 1;
        const uint64_t j = open - pp;
        // Literals of the parent's label up to the branch point our subtrie hangs from.
        part.clear();
        uint64_t acc = 0;
        auto pc = labels_.cursor(parent);
        while (pc.next(c)) {
            if (is_special(c)) {
                acc += special_count(c);
                if (acc > j) break;
            } else {
                part.push_back(c);
            }
        }
        if (acc <= j) throw FormatError("label of node " + std::to_string(parent) + " has too few specials");
        rev.push_back(char(branching_[pp - parent + j]));
        for (auto it = part.rbegin(); it != part.rend(); ++it) rev.push_back(char(*it));
        k = parent;
        p = pp;
    }
    std::reverse(rev.begin(), rev.end());
    if (rev.empty() || rev.back() != char(terminator)) throw FormatError("string " + std::to_string(id) + " lacks its terminator");
    rev.pop_back();
    return rev;
}

void StringDictionary::save(ContainerWriter& out) const
{
    out.add("dict", std::vector<uint64_t>{count_, uint64_t(strategy_)});
    bp_.save(out, "bp");
    out.add("B", branching_.span());
    labels_.save(out, "L");
}

void StringDictionary::save(const std::string& path) const
{
    ContainerWriter w(StructureKind::string_dictionary);
    save(w);
    w.write_file(path);
}

StringDictionary StringDictionary::load(const ContainerReader& in)
{
    if (in.kind() != StructureKind::string_dictionary)
        throw FormatError("container holds structure kind " + std::to_string(uint32_t(in.kind())) +
                          ", not a string dictionary");
    const auto header = in.scalars("dict", 2);
    StringDictionary d;
    d.count_ = header[0];
    if (header[1] > 1) throw FormatError("section 'dict': unknown strategy " + std::to_string(header[1]));
    d.strategy_ = DictStrategy(header[1]);
    d.bp_ = BpVector::load(in, "bp");
    d.branching_ = in.get<uint8_t>("B");
    d.labels_ = LabelStore::load(in, "L");
    const auto& rs = d.bp_.rank_select();
    if (d.count_ == 0 || rs.num_zeros() != d.count_ || rs.num_ones() + 1 != d.count_)
        throw FormatError("section 'bp' does not encode a tree of " + std::to_string(d.count_) + " nodes");
    if (d.branching_.size() != rs.num_ones())
        throw FormatError("section 'B' has " + std::to_string(d.branching_.size()) + " entries, expected " +
                          std::to_string(rs.num_ones()));
    if (d.labels_.size() != d.count_)
        throw FormatError("label store holds " + std::to_string(d.labels_.size()) + " labels, expected " +
                          std::to_string(d.count_));
    return d;
}

StringDictionary StringDictionary::load(const std::string& path, bool verify_checksum)
{
    return load(ContainerReader::open(path, verify_checksum));
}

} // namespace pdt
