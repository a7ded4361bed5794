#include "pdt/hollow_mph.hpp"

#include <bit>
#include <vector>

#include "pdt/container.hpp"
#include "pdt/errors.hpp"
#include "pdt/trie_builder.hpp"

namespace pdt {

namespace {

// Query bits under the same transform the trie was built on.
struct ByteQuery {
    std::string_view s;
    uint64_t size() const { return 9 * s.size() + 1; }
    bool operator[](uint64_t p) const
    {
        const uint64_t q = p / 9, o = p % 9;
        if (q == s.size()) return false;
        if (o == 0) return true;
        return uint8_t(s[q]) >> (8 - o) & 1;
    }
};

struct BitQuery {
    std::string_view s;
    uint64_t size() const { return s.size(); }
    bool operator[](uint64_t p) const { return s[p] == '1'; }
};

void check_kind(const ContainerReader& in, StructureKind want, const char* what)
{
    if (in.kind() != want)
        throw FormatError("container holds structure kind " + std::to_string(uint32_t(in.kind())) + ", not a " +
                          what);
}

void check_tree(const BpVector& bp, const SkipPairs& pairs, uint64_t nodes, uint64_t expected_pairs)
{
    const auto& rs = bp.rank_select();
    if (nodes == 0 || rs.num_zeros() != nodes || rs.num_ones() + 1 != nodes)
        throw FormatError("section 'bp' does not encode a tree of " + std::to_string(nodes) + " nodes");
    if (pairs.size() != expected_pairs)
        throw FormatError("pair sections hold " + std::to_string(pairs.size()) + " pairs, expected " +
                          std::to_string(expected_pairs));
}

} // namespace

void encode_pair(SkipPair pair, BitVectorBuilder& low, BitVectorBuilder& high)
{
    if (pair.skip >= uint64_t(1) << 63) throw BuildError("skip " + std::to_string(pair.skip) + " too large");
    const uint64_t v = pair.skip + 1;
    const unsigned w = unsigned(std::bit_width(v)) - 1;
    for (unsigned t = w; t-- > 0;) low.push_back(v >> t & 1);
    low.push_back(pair.dir);
    high.append_run(false, w);
    high.push_back(true);
}

SkipPairs::SkipPairs(BitVector low, BitVector high) : low_(std::move(low))
{
    if (low_.size() != high.size())
        throw FormatError("pair vectors differ in length: " + std::to_string(low_.size()) + " vs " +
                          std::to_string(high.size()));
    if (!DenseSelect::admissible(high)) throw FormatError("pair boundaries more than 64 bits apart");
    high_ = DenseSelect(std::move(high));
    if (high_.size() && !high_.bits()[high_.size() - 1]) throw FormatError("pair vector ends inside a pair");
}

void SkipPairs::save(ContainerWriter& out, const std::string& prefix) const
{
    low_.save(out, prefix + ".lo");
    high_.save(out, prefix + ".hi");
}

SkipPairs SkipPairs::load(const ContainerReader& in, const std::string& prefix)
{
    SkipPairs p;
    p.low_ = BitVector::load(in, prefix + ".lo");
    p.high_ = DenseSelect::load(in, prefix + ".hi");
    if (p.low_.size() != p.high_.size())
        throw FormatError("section '" + prefix + ".lo' has " + std::to_string(p.low_.size()) + " bits, expected " +
                          std::to_string(p.high_.size()));
    if (p.high_.size() && !p.high_.bits()[p.high_.size() - 1])
        throw FormatError("section '" + prefix + ".hi' ends inside a pair");
    return p;
}

// ---------------------------------------------------------------------------

namespace {

struct Encoded {
    BitVectorBuilder bp, low, high;
};

Encoded encode_centroid(const CompactedTrie& trie)
{
    const PathDecomposition pd = decompose(trie, PathStrategy::left_biased_heavy);
    Encoded e;
    for (uint64_t idx = 0; idx < pd.size(); ++idx) {
        const uint32_t top = pd.top[idx];
        e.bp.append_run(true, pd.degree[idx]);
        e.bp.push_back(false);
        bool last_dir = false;
        for (uint32_t v = top; !trie.node(v).is_leaf(); v = pd.preferred[v]) {
            last_dir = pd.preferred[v] != trie.node(v).first_child;
            encode_pair({trie.skip(v), last_dir}, e.low, e.high);
        }
        if (last_dir) throw std::logic_error("left-biased path ends with a right turn");
    }
    return e;
}

Encoded encode_flat(const CompactedTrie& trie)
{
    Encoded e;
    std::vector<uint32_t> stack{trie.root()};
    while (!stack.empty()) {
        const uint32_t v = stack.back();
        stack.pop_back();
        const TrieNode& n = trie.node(v);
        if (n.is_leaf()) {
            e.bp.push_back(false);
            continue;
        }
        const uint32_t right = trie.node(n.first_child).next_sibling;
        e.bp.append_run(true, 2);
        e.bp.push_back(false);
        encode_pair({trie.skip(v), false}, e.low, e.high);
        stack.push_back(right);
        stack.push_back(n.first_child);
    }
    return e;
}

} // namespace

HollowTrieMph HollowTrieMph::build(std::span<const std::string_view> keys, uint64_t block_bits)
{
    if (keys.empty()) throw BuildError("cannot build a hash over an empty set");
    auto e = encode_centroid(build_binary_trie(keys));
    HollowTrieMph m;
    m.count_ = keys.size();
    m.bp_ = BpVector(BitVector(std::move(e.bp)), block_bits);
    m.pairs_ = SkipPairs(BitVector(std::move(e.low)), BitVector(std::move(e.high)));
    return m;
}

HollowTrieMph HollowTrieMph::build_from_bits(std::span<const std::string_view> bit_keys, uint64_t block_bits)
{
    if (bit_keys.empty()) throw BuildError("cannot build a hash over an empty set");
    auto e = encode_centroid(build_binary_trie_from_bits(bit_keys));
    HollowTrieMph m;
    m.count_ = bit_keys.size();
    m.binary_input_ = true;
    m.bp_ = BpVector(BitVector(std::move(e.bp)), block_bits);
    m.pairs_ = SkipPairs(BitVector(std::move(e.low)), BitVector(std::move(e.high)));
    return m;
}

uint64_t HollowTrieMph::hash(std::string_view s) const
{
    return binary_input_ ? hash_impl(BitQuery{s}) : hash_impl(ByteQuery{s});
}

template <typename Bits>
uint64_t HollowTrieMph::hash_impl(const Bits& x) const
{
    const BitVector& bits = bp_.bits();
    const uint64_t len = x.size();
    uint64_t k = 0, p = 0, pos = 0, left_turns = 0;
    while (true) {
        const uint64_t d = bits.next_zero(p) - p;
        if (d == 0) return k - left_turns;
        uint64_t ppos = pairs_.start(p - k);
        uint64_t left_seen = 0, right_seen = 0, i = 0;
        bool descended = false;
        for (; i < d; ++i) {
            const SkipPair pr = pairs_.read(ppos);
            pos += pr.skip;
            if (pos >= len) {
                // Only non-members run out of bits: stop at this node.
                left_seen += pr.dir;
                for (++i; i < d; ++i) left_seen += pairs_.read(ppos).dir;
                break;
            }
            const bool b = x[pos];
            if (b == pr.dir) {
                ++pos;
                (pr.dir ? left_seen : right_seen) += 1;
                continue;
            }
            // Left children come top-to-bottom, right children bottom-to-top.
            const uint64_t child = b ? d - right_seen - 1 : left_seen;
            left_turns += !b;
            const uint64_t open = p + d - 1 - child;
            const uint64_t mate = bp_.find_close(open);
            k += (mate - open - 1) / 2 + 1;
            p = mate + 1;
            ++pos;
            descended = true;
            break;
        }
        if (descended) continue;
        // The leaves of the left subtries precede this node's leaf: jump over
        // them to the first right child.
        if (left_seen >= d) return k - left_turns;  // malformed: no right child
        const uint64_t open = p + d - 1 - left_seen;
        return k - left_turns + (bp_.find_close(open) - open - 1) / 2;
    }
}

bool HollowTrieMph::paths_end_left() const
{
    const BitVector& bits = bp_.bits();
    uint64_t pair = 0;
    for (uint64_t p = 0; p < bits.size();) {
        const uint64_t close = bits.next_zero(p);
        const uint64_t d = close - p;
        if (d > 0) {
            pair += d;
            if (pairs_[pair - 1].dir) return false;
        }
        p = close + 1;
    }
    return true;
}

void HollowTrieMph::save(ContainerWriter& out) const
{
    out.add("mph", std::vector<uint64_t>{count_, uint64_t(binary_input_)});
    bp_.save(out, "bp");
    pairs_.save(out, "pairs");
}

void HollowTrieMph::save(const std::string& path) const
{
    ContainerWriter w(StructureKind::hollow_mph);
    save(w);
    w.write_file(path);
}

HollowTrieMph HollowTrieMph::load(const ContainerReader& in)
{
    check_kind(in, StructureKind::hollow_mph, "hollow trie hash");
    const auto header = in.scalars("mph", 2);
    HollowTrieMph m;
    m.count_ = header[0];
    m.binary_input_ = header[1] != 0;
    m.bp_ = BpVector::load(in, "bp");
    m.pairs_ = SkipPairs::load(in, "pairs");
    check_tree(m.bp_, m.pairs_, m.count_, m.bp_.rank_select().num_ones());
    if (!m.paths_end_left()) throw FormatError("a path of the hollow trie does not end with a left turn");
    return m;
}

HollowTrieMph HollowTrieMph::load(const std::string& path, bool verify_checksum)
{
    return load(ContainerReader::open(path, verify_checksum));
}

// ---------------------------------------------------------------------------

FlatHollowTrie FlatHollowTrie::build(std::span<const std::string_view> keys, uint64_t block_bits)
{
    if (keys.empty()) throw BuildError("cannot build a hash over an empty set");
    auto e = encode_flat(build_binary_trie(keys));
    FlatHollowTrie t;
    t.count_ = keys.size();
    t.bp_ = BpVector(BitVector(std::move(e.bp)), block_bits);
    t.pairs_ = SkipPairs(BitVector(std::move(e.low)), BitVector(std::move(e.high)));
    return t;
}

FlatHollowTrie FlatHollowTrie::build_from_bits(std::span<const std::string_view> bit_keys, uint64_t block_bits)
{
    if (bit_keys.empty()) throw BuildError("cannot build a hash over an empty set");
    auto e = encode_flat(build_binary_trie_from_bits(bit_keys));
    FlatHollowTrie t;
    t.count_ = bit_keys.size();
    t.binary_input_ = true;
    t.bp_ = BpVector(BitVector(std::move(e.bp)), block_bits);
    t.pairs_ = SkipPairs(BitVector(std::move(e.low)), BitVector(std::move(e.high)));
    return t;
}

uint64_t FlatHollowTrie::hash(std::string_view s) const
{
    return binary_input_ ? hash_impl(BitQuery{s}) : hash_impl(ByteQuery{s});
}

template <typename Bits>
uint64_t FlatHollowTrie::hash_impl(const Bits& x) const
{
    const BitVector& bits = bp_.bits();
    const uint64_t len = x.size();
    uint64_t k = 0, p = 0, pos = 0;
    while (bits[p]) {
        // (p - k) / 2 internal nodes precede this one.
        pos += pairs_[(p - k) / 2].skip;
        if (pos < len && x[pos]) {
            const uint64_t mate = bp_.find_close(p);
            k += (mate - p - 1) / 2 + 1;
            p = mate + 1;
        } else {
            k += 1;
            p += 3;
        }
        ++pos;
    }
    return k - (p - k) / 2;
}

void FlatHollowTrie::save(ContainerWriter& out) const
{
    out.add("flat", std::vector<uint64_t>{count_, uint64_t(binary_input_)});
    bp_.save(out, "bp");
    pairs_.save(out, "pairs");
}

void FlatHollowTrie::save(const std::string& path) const
{
    ContainerWriter w(StructureKind::flat_hollow);
    save(w);
    w.write_file(path);
}

FlatHollowTrie FlatHollowTrie::load(const ContainerReader& in)
{
    check_kind(in, StructureKind::flat_hollow, "flat hollow trie");
    const auto header = in.scalars("flat", 2);
    FlatHollowTrie t;
    t.count_ = header[0];
    t.binary_input_ = header[1] != 0;
    t.bp_ = BpVector::load(in, "bp");
    t.pairs_ = SkipPairs::load(in, "pairs");
    if (t.count_ == 0) throw FormatError("section 'flat': empty key set");
    check_tree(t.bp_, t.pairs_, 2 * t.count_ - 1, t.count_ - 1);
    return t;
}

FlatHollowTrie FlatHollowTrie::load(const std::string& path, bool verify_checksum)
{
    return load(ContainerReader::open(path, verify_checksum));
}

} // namespace pdt
