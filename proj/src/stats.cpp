#include "pdt/stats.hpp"

#include "pdt/trie_builder.hpp"

namespace pdt {

HeightStats height_stats(std::span<const std::string_view> keys, bool with_hollow)
{
    HeightStats s;
    s.keys = keys.size();
    if (keys.empty()) return s;
    {
        const CompactedTrie trie = build_compacted_trie(keys);
        const double n = double(keys.size());
        const uint64_t total = trie.total_leaf_height();
        uint64_t prefix_keys = 0;
        for (uint32_t v = 0; v < trie.num_nodes(); ++v) {
            const TrieNode& node = trie.node(v);
            if (!node.is_leaf() || node.parent == no_node) continue;
            // The terminator is the smallest symbol, so such a leaf is its parent's first child.
            if (node.depth == trie.node(node.parent).depth + 1 && trie.node(node.parent).first_child == v &&
                keys[node.first_leaf].size() == trie.node(node.parent).depth)
                ++prefix_keys;
        }
        s.trie_avg_leaf_height = double(total) / n;
        s.trie_avg_leaf_height_unterminated = double(total - prefix_keys) / n;
        s.trie_height = trie.height();

        const PathDecomposition lex = decompose(trie, PathStrategy::leftmost);
        s.lex_avg_height = lex.average_depth();
        s.lex_height = lex.height();
        const PathDecomposition heavy = decompose(trie, PathStrategy::heavy);
        s.centroid_avg_height = heavy.average_depth();
        s.centroid_height = heavy.height();
    }
    if (with_hollow) {
        const CompactedTrie bin = build_binary_trie(keys);
        s.hollow_avg_height = double(bin.total_leaf_height()) / double(keys.size());
        s.hollow_height = bin.height();
        const PathDecomposition hc = decompose(bin, PathStrategy::left_biased_heavy);
        s.centroid_hollow_avg_height = hc.average_depth();
        s.centroid_hollow_height = hc.height();
    }
    return s;
}

} // namespace pdt
