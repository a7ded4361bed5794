#pragma once

// Construction-time tries. A CompactedTrie is built from sorted keys in one
// pass with an explicit stack over longest common prefixes, so arbitrarily
// deep tries never recurse. Keys are terminated so the set is prefix-free:
// byte keys get a logical 0x00, binary keys use the 9-bit-per-byte transform
// (a '1' then the byte MSB-first, and a final '0').

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pdt {

inline constexpr uint32_t no_node = UINT32_MAX;

struct TrieNode {
    uint64_t depth;         // symbols on the root-to-node path, including this node's label
    uint32_t parent;
    uint32_t first_leaf;    // index of the smallest key below
    uint32_t leaves;
    uint32_t first_child;   // no_node for leaves
    uint32_t next_sibling;

    bool is_leaf() const { return first_child == no_node; }
};

// Symbol sources over a sorted key set. symbol(i, p) is the p-th symbol of
// terminated key i, length(i) the terminated length, lcp(i) the common prefix
// of keys i-1 and i.
struct ByteKeys {
    std::span<const std::string_view> keys;
    uint64_t size() const { return keys.size(); }
    uint64_t length(uint64_t i) const { return keys[i].size() + 1; }
    uint16_t symbol(uint64_t i, uint64_t p) const
    {
        return p < keys[i].size() ? uint8_t(keys[i][p]) : 0;
    }
    uint64_t lcp(uint64_t i) const;
};

struct BinaryKeys {
    std::span<const std::string_view> keys;
    uint64_t size() const { return keys.size(); }
    uint64_t length(uint64_t i) const { return 9 * keys[i].size() + 1; }
    uint16_t symbol(uint64_t i, uint64_t p) const
    {
        const uint64_t q = p / 9, o = p % 9;
        if (q == keys[i].size()) return 0;
        if (o == 0) return 1;
        return uint8_t(keys[i][q]) >> (8 - o) & 1;
    }
    uint64_t lcp(uint64_t i) const;
};

// Keys given directly as strings of '0' and '1', which must already be
// prefix-free; no terminator is added.
struct BitStringKeys {
    std::span<const std::string_view> keys;
    uint64_t size() const { return keys.size(); }
    uint64_t length(uint64_t i) const { return keys[i].size(); }
    uint16_t symbol(uint64_t i, uint64_t p) const { return keys[i][p] == '1'; }
    uint64_t lcp(uint64_t i) const;
};

class CompactedTrie {
public:
    CompactedTrie() = default;

    uint32_t root() const { return root_; }
    uint64_t num_nodes() const { return nodes_.size(); }
    uint64_t num_leaves() const { return nodes_.empty() ? 0 : nodes_[root_].leaves; }
    const TrieNode& node(uint32_t v) const { return nodes_[v]; }
    const std::vector<TrieNode>& nodes() const { return nodes_; }

    // Length of the node's label (symbols between the parent's branching
    // symbol and the node).
    uint64_t skip(uint32_t v) const
    {
        const TrieNode& n = nodes_[v];
        return n.parent == no_node ? n.depth : n.depth - nodes_[n.parent].depth - 1;
    }
    uint32_t num_children(uint32_t v) const;
    std::vector<uint32_t> children(uint32_t v) const;

    // Height in edges of every leaf, summed (root leaf has height 0).
    uint64_t total_leaf_height() const;
    uint64_t height() const;

    template <typename Keys>
    static CompactedTrie build(const Keys& keys);

private:
    std::vector<TrieNode> nodes_;
    uint32_t root_ = no_node;
};

// Checks that keys are strictly increasing and free of 0x00; throws BuildError
// or InputError naming the offending index.
void validate_sorted_keys(std::span<const std::string_view> keys);
void validate_bit_keys(std::span<const std::string_view> keys);

CompactedTrie build_compacted_trie(std::span<const std::string_view> keys);
CompactedTrie build_binary_trie(std::span<const std::string_view> keys);
CompactedTrie build_binary_trie_from_bits(std::span<const std::string_view> bit_keys);

enum class PathStrategy {
    leftmost,           // lexicographic decomposition
    heavy,              // most leaves, ties to the smallest branching symbol
    left_biased_heavy,  // binary tries: most leaves, ties to the left child
};

// Path decomposition T^c of a compacted trie. Nodes of T^c are listed in
// depth-first preorder; each is identified by the trie node at the top of its
// path. Children order:
//   leftmost / heavy: hanging subtries bottom-to-top, left-to-right within a
//     path node;
//   left_biased_heavy: left hanging subtries top-to-bottom, then right ones
//     bottom-to-top (lexicographic order of their keys).
struct PathDecomposition {
    PathStrategy strategy{};
    std::vector<uint32_t> preferred;  // per trie node: chosen child, no_node for leaves
    std::vector<uint32_t> top;        // per T^c node, preorder
    std::vector<uint32_t> degree;
    std::vector<uint32_t> depth;      // root has depth 0

    uint64_t size() const { return top.size(); }
    uint32_t height() const;
    double average_depth() const;
};

PathDecomposition decompose(const CompactedTrie& trie, PathStrategy strategy);

// Tops of the T^c children of the path starting at trie node `top`, in the
// strategy's order.
std::vector<uint32_t> path_children(const CompactedTrie& trie, const PathDecomposition& pd, uint32_t top);

} // namespace pdt
