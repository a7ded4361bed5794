#include "pdt/trie_builder.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "pdt/errors.hpp"

namespace pdt {

namespace {

uint64_t byte_lcp(std::string_view a, std::string_view b)
{
    const auto n = std::min(a.size(), b.size());
    return uint64_t(std::mismatch(a.begin(), a.begin() + n, b.begin()).first - a.begin());
}

} // namespace

uint64_t ByteKeys::lcp(uint64_t i) const { return byte_lcp(keys[i - 1], keys[i]); }

uint64_t BinaryKeys::lcp(uint64_t i) const
{
    const auto a = keys[i - 1], b = keys[i];
    const uint64_t l = byte_lcp(a, b);
    if (l == a.size() || l == b.size()) return 9 * l;
    return 9 * l + 1 + std::countl_zero(uint8_t(uint8_t(a[l]) ^ uint8_t(b[l])));
}

uint64_t BitStringKeys::lcp(uint64_t i) const { return byte_lcp(keys[i - 1], keys[i]); }

void validate_sorted_keys(std::span<const std::string_view> keys)
{
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].find('\0') != std::string_view::npos)
            throw InputError("key " + std::to_string(i) + " contains a 0x00 byte");
        if (i > 0 && !(keys[i - 1] < keys[i]))
            throw BuildError("keys not sorted and unique at index " + std::to_string(i));
    }
}

void validate_bit_keys(std::span<const std::string_view> keys)
{
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].find_first_not_of("01") != std::string_view::npos)
            throw InputError("bit key " + std::to_string(i) + " has characters other than 0 and 1");
        if (i > 0) {
            if (!(keys[i - 1] < keys[i])) throw BuildError("bit keys not sorted and unique at index " + std::to_string(i));
            if (keys[i].starts_with(keys[i - 1]))
                throw BuildError("bit key " + std::to_string(i - 1) + " is a prefix of key " + std::to_string(i));
        }
    }
}

template <typename Keys>
CompactedTrie CompactedTrie::build(const Keys& keys)
{
    CompactedTrie t;
    const uint64_t n = keys.size();
    if (n == 0) return t;
    if (n >= no_node / 2) throw BuildError("too many keys: " + std::to_string(n));
    auto& nodes = t.nodes_;
    nodes.reserve(2 * n);
    std::vector<uint32_t> last_child;
    auto make = [&](uint64_t depth, uint32_t first_leaf, uint32_t leaves) {
        nodes.push_back({depth, no_node, first_leaf, leaves, no_node, no_node});
        last_child.push_back(no_node);
        return uint32_t(nodes.size() - 1);
    };
    auto attach = [&](uint32_t parent, uint32_t child) {
        nodes[child].parent = parent;
        if (last_child[parent] == no_node) {
            nodes[parent].first_child = child;
            nodes[parent].first_leaf = nodes[child].first_leaf;
            nodes[parent].leaves = 0;
        } else {
            nodes[last_child[parent]].next_sibling = child;
        }
        last_child[parent] = child;
        nodes[parent].leaves += nodes[child].leaves;
    };

    std::vector<uint32_t> stack{make(keys.length(0), 0, 1)};
    for (uint64_t i = 1; i < n; ++i) {
        const uint64_t l = keys.lcp(i);
        while (nodes[stack.back()].depth > l) {
            const uint32_t x = stack.back();
            stack.pop_back();
            if (!stack.empty() && nodes[stack.back()].depth >= l) {
                attach(stack.back(), x);
            } else {
                const uint32_t y = make(l, 0, 0);
                attach(y, x);
                stack.push_back(y);
                break;
            }
        }
        stack.push_back(make(keys.length(i), uint32_t(i), 1));
    }
    while (stack.size() > 1) {
        const uint32_t x = stack.back();
        stack.pop_back();
        attach(stack.back(), x);
    }
    t.root_ = stack.back();
    return t;
}

template CompactedTrie CompactedTrie::build(const ByteKeys&);
template CompactedTrie CompactedTrie::build(const BinaryKeys&);
template CompactedTrie CompactedTrie::build(const BitStringKeys&);

CompactedTrie build_compacted_trie(std::span<const std::string_view> keys)
{
    validate_sorted_keys(keys);
    return CompactedTrie::build(ByteKeys{keys});
}

CompactedTrie build_binary_trie(std::span<const std::string_view> keys)
{
    validate_sorted_keys(keys);
    return CompactedTrie::build(BinaryKeys{keys});
}

CompactedTrie build_binary_trie_from_bits(std::span<const std::string_view> bit_keys)
{
    validate_bit_keys(bit_keys);
    return CompactedTrie::build(BitStringKeys{bit_keys});
}

uint32_t CompactedTrie::num_children(uint32_t v) const
{
    uint32_t d = 0;
    for (uint32_t c = nodes_[v].first_child; c != no_node; c = nodes_[c].next_sibling) ++d;
    return d;
}

std::vector<uint32_t> CompactedTrie::children(uint32_t v) const
{
    std::vector<uint32_t> out;
    for (uint32_t c = nodes_[v].first_child; c != no_node; c = nodes_[c].next_sibling) out.push_back(c);
    return out;
}

uint64_t CompactedTrie::total_leaf_height() const
{
    // Node ids are not in preorder, so walk from the root with a stack.
    if (nodes_.empty()) return 0;
    uint64_t total = 0;
    std::vector<std::pair<uint32_t, uint64_t>> stack{{root_, 0}};
    while (!stack.empty()) {
        auto [v, h] = stack.back();
        stack.pop_back();
        if (nodes_[v].is_leaf()) total += h;
        for (uint32_t c = nodes_[v].first_child; c != no_node; c = nodes_[c].next_sibling) stack.push_back({c, h + 1});
    }
    return total;
}

uint64_t CompactedTrie::height() const
{
    if (nodes_.empty()) return 0;
    uint64_t best = 0;
    std::vector<std::pair<uint32_t, uint64_t>> stack{{root_, 0}};
    while (!stack.empty()) {
        auto [v, h] = stack.back();
        stack.pop_back();
        best = std::max(best, h);
        for (uint32_t c = nodes_[v].first_child; c != no_node; c = nodes_[c].next_sibling) stack.push_back({c, h + 1});
    }
    return best;
}

uint32_t PathDecomposition::height() const
{
    return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

double PathDecomposition::average_depth() const
{
    if (depth.empty()) return 0;
    uint64_t sum = 0;
    for (uint32_t d : depth) sum += d;
    return double(sum) / double(depth.size());
}

namespace {

uint32_t choose_child(const CompactedTrie& trie, uint32_t v, PathStrategy strategy)
{
    const uint32_t first = trie.node(v).first_child;
    if (strategy == PathStrategy::leftmost) return first;
    // Strictly greater keeps the first (smallest / left) child on ties.
    uint32_t best = first;
    for (uint32_t c = trie.node(first).next_sibling; c != no_node; c = trie.node(c).next_sibling)
        if (trie.node(c).leaves > trie.node(best).leaves) best = c;
    return best;
}

} // namespace

std::vector<uint32_t> path_children(const CompactedTrie& trie, const PathDecomposition& pd, uint32_t top)
{
    std::vector<uint32_t> out;
    if (pd.strategy == PathStrategy::left_biased_heavy) {
        std::vector<uint32_t> right;
        for (uint32_t v = top; !trie.node(v).is_leaf(); v = pd.preferred[v]) {
            for (uint32_t c = trie.node(v).first_child; c != no_node; c = trie.node(c).next_sibling) {
                if (c == pd.preferred[v]) continue;
                // In a binary trie the hanging child is left iff the path went right.
                if (c == trie.node(v).first_child)
                    out.push_back(c);
                else
                    right.push_back(c);
            }
        }
        out.insert(out.end(), right.rbegin(), right.rend());
        return out;
    }
    std::vector<uint32_t> path;
    for (uint32_t v = top; !trie.node(v).is_leaf(); v = pd.preferred[v]) path.push_back(v);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        for (uint32_t c = trie.node(*it).first_child; c != no_node; c = trie.node(c).next_sibling)
            if (c != pd.preferred[*it]) out.push_back(c);
    return out;
}

PathDecomposition decompose(const CompactedTrie& trie, PathStrategy strategy)
{
    PathDecomposition pd;
    pd.strategy = strategy;
    if (trie.num_nodes() == 0) return pd;
    pd.preferred.assign(trie.num_nodes(), no_node);
    for (uint32_t v = 0; v < trie.num_nodes(); ++v)
        if (!trie.node(v).is_leaf()) pd.preferred[v] = choose_child(trie, v, strategy);

    const uint64_t n = trie.num_leaves();
    pd.top.reserve(n);
    pd.degree.reserve(n);
    pd.depth.reserve(n);
    std::vector<std::pair<uint32_t, uint32_t>> stack{{trie.root(), 0}};
    while (!stack.empty()) {
        const auto [top, d] = stack.back();
        stack.pop_back();
        const auto kids = path_children(trie, pd, top);
        pd.top.push_back(top);
        pd.degree.push_back(uint32_t(kids.size()));
        pd.depth.push_back(d);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({*it, d + 1});
    }
    return pd;
}

} // namespace pdt
